#include <cctype>
#include <fstream>
#include <sstream>

#include "bbcrystal/io.hpp"

namespace bbcrystal {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
  char quote = 0;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, k);
    }
  }
  return line;
}

int bracket_balance(const std::string& s) {
  int b = 0;
  for (char c : s) b += c == '[' ? 1 : c == ']' ? -1 : 0;
  return b;
}

// TOML values of the subset are JSON after quote and trailing-comma fixes.
json toml_value(std::string v, const std::string& key) {
  for (auto& c : v)
    if (c == '\'') c = '"';
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == ',') {
      std::size_t n = k + 1;
      while (n < v.size() && std::isspace(static_cast<unsigned char>(v[n]))) ++n;
      if (n < v.size() && v[n] == ']') continue;
    }
    out += v[k];
  }
  try {
    return json::parse(out);
  } catch (const json::parse_error&) {
    throw InvalidInput("datum: cannot parse the value of " + key);
  }
}

json parse_toml(const std::string& text) {
  json out = json::object();
  std::istringstream in(text);
  std::string line, key, value;
  int balance = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    if (balance == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidInput("datum: line " + std::to_string(lineno) + " is not key = value");
      key = trim(line.substr(0, eq));
      if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
      value = trim(line.substr(eq + 1));
    } else {
      value += " " + line;
    }
    balance = bracket_balance(value);
    if (balance < 0) throw InvalidInput("datum: unbalanced brackets in " + key);
    if (balance == 0) out[key] = toml_value(value, key);
  }
  if (balance != 0) throw InvalidInput("datum: unterminated array in " + key);
  return out;
}

std::vector<int> int_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidDatum("shape: " + what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidDatum("shape: " + what + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

BCDatum parse_datum(const std::string& text) {
  const std::string t = trim(text);
  json j;
  if (!t.empty() && t.front() == '{') {
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("datum: ") + e.what());
    }
  } else {
    j = parse_toml(t);
  }
  if (!j.contains("A")) throw InvalidDatum("shape: missing field A");
  if (!j.contains("D")) throw InvalidDatum("shape: missing field D");
  if (!j["A"].is_array()) throw InvalidDatum("shape: A must be an array of rows");
  std::vector<std::vector<int>> a;
  for (const auto& row : j["A"]) a.push_back(int_list(row, "each row of A"));
  std::vector<int> d = int_list(j["D"], "D");
  std::vector<std::string> names;
  if (j.contains("names")) {
    if (!j["names"].is_array()) throw InvalidDatum("shape: names must be an array of strings");
    for (const auto& x : j["names"]) {
      if (!x.is_string()) throw InvalidDatum("shape: names must be an array of strings");
      names.push_back(x.get<std::string>());
    }
  }
  return BCDatum(std::move(a), std::move(d), std::move(names));
}

BCDatum load_datum(const std::string& path) { return parse_datum(read_file(path)); }

json datum_json(const BCDatum& d) {
  return json{{"A", d.matrix()}, {"D", d.symmetrizer()}, {"names", d.names()}};
}

std::vector<int> parse_dom(const std::string& text, int rank) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InvalidInput("lambda: '" + item + "' is not an integer");
    if (v < 0) throw InvalidInput("lambda: entries must be nonnegative (dominant weight)");
    out.push_back(v);
  }
  if (static_cast<int>(out.size()) != rank)
    throw InvalidInput("lambda: " + std::to_string(out.size()) + " entries for rank " + std::to_string(rank));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

}  // namespace bbcrystal
