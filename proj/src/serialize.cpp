#include <cstdio>
#include <sstream>

#include "bbcrystal/io.hpp"

namespace bbcrystal {

namespace {

json word_json(const Word& w) {
  json out = json::array();
  for (const auto& il : w) out.push_back({il.i, il.l});
  return out;
}

Word word_from_json(const json& j) {
  if (!j.is_array()) throw InvalidInput("basis: a word must be an array of [i, l] pairs");
  Word w;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw InvalidInput("basis: a word must be an array of [i, l] pairs");
    w.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  return w;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

RatFunc scalar_from_json(const json& x) {
  if (x.is_number_integer()) return RatFunc(x.get<long>());
  if (!x.is_string()) throw InvalidInput("basis: coordinates must be strings or integers");
  try {
    return parse_ratfunc(x.get<std::string>());
  } catch (const Error& e) {
    throw InvalidInput("basis: bad coordinate '" + x.get<std::string>() + "': " + e.what());
  }
}

Offset offset_from_json(const json& j, int rank) {
  if (!j.is_array() || static_cast<int>(j.size()) != rank) throw InvalidInput("basis: weight must have one entry per index");
  Offset b;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InvalidInput("basis: weight entries must be integers");
    b.push_back(x.get<int>());
  }
  if (!nonnegative(b)) throw InvalidInput("basis: negative weight offset " + to_string(b));
  return b;
}

std::string index_name(const BCDatum& d, int i) { return d.names().at(i); }

json header_json(const Ambient& amb) {
  json h;
  h["datum"] = datum_json(amb.datum());
  h["module"] = amb.kind() == AmbientKind::Uminus ? "uminus" : "highest";
  if (amb.kind() == AmbientKind::Highest) h["lambda"] = amb.dom();
  return h;
}

json words_table(const Ambient& amb, const std::vector<Offset>& weights) {
  json out = json::array();
  for (const auto& beta : weights) {
    json ws = json::array();
    for (const auto& w : amb.space(beta).reps) ws.push_back(word_json(w));
    out.push_back({{"weight", beta}, {"words", ws}});
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

json crystal_json(const CrystalGraph& g) {
  const BCDatum& d = g.datum;
  json vs = json::array();
  for (const auto& v : g.vertices) {
    json wt = json::array(), eps = json::object(), phi = json::object();
    for (int i = 0; i < d.rank(); ++i) {
      wt.push_back(g.pairing(i, v.id));
      if (i < static_cast<int>(v.eps.size())) eps[index_name(d, i)] = v.eps[i];
      if (i < static_cast<int>(v.phi.size())) phi[index_name(d, i)] = v.phi[i];
    }
    vs.push_back({{"id", v.id}, {"wt", wt}, {"offset", v.offset}, {"eps", eps}, {"phi", phi}, {"label", v.label}});
  }
  json es = json::array();
  for (const auto& e : g.edges) es.push_back({{"from", e.from}, {"to", e.to}, {"i", index_name(d, e.il.i)}, {"l", e.il.l}});
  json out;
  out["datum"] = datum_json(d);
  out["vertices"] = vs;
  out["edges"] = es;
  return out;
}

std::string crystal_dot(const CrystalGraph& g, const std::string& name) {
  std::ostringstream s;
  s << "digraph " << name << " {\n";
  for (const auto& v : g.vertices)
    s << "  v" << v.id << " [label=\"" << dot_escape(v.label.empty() ? to_string(v.offset) : v.label) << "\"];\n";
  for (const auto& e : g.edges)
    s << "  v" << e.from << " -> v" << e.to << " [label=\"" << index_name(g.datum, e.il.i) << "," << e.il.l << "\"];\n";
  s << "}\n";
  return s.str();
}

std::string crystal_text(const CrystalGraph& g) {
  std::ostringstream s;
  s << g.vertices.size() << " vertices, " << g.edges.size() << " edges\n";
  for (const auto& v : g.vertices) {
    s << v.id << " offset " << to_string(v.offset) << " eps";
    for (int x : v.eps) s << ' ' << x;
    s << " phi";
    for (int x : v.phi) s << ' ' << x;
    if (!v.label.empty()) s << "  " << v.label;
    s << '\n';
  }
  for (const auto& e : g.edges) s << e.from << " -> " << e.to << "  " << to_string(e.il) << '\n';
  return s.str();
}

json weight_counts(const CrystalGraph& g) {
  std::map<Offset, std::size_t> n;
  for (const auto& v : g.vertices) ++n[v.offset];
  json out = json::object();
  for (const auto& [beta, k] : n) out[to_string(beta)] = k;
  return out;
}

json basis_json(const Ambient& amb, const LabeledBasis& basis) {
  json out = header_json(amb);
  std::vector<Offset> weights;
  for (const auto& [beta, m] : basis.vectors)
    if (m.cols() > 0) weights.push_back(beta);
  out["weights"] = words_table(amb, weights);
  json es = json::array();
  for (int id = 0; id < static_cast<int>(basis.size()); ++id)
    es.push_back({{"id", id}, {"weight", basis.offset(id)}, {"label", basis.labels[id]}, {"coordinates", vec_json(basis.vec(id))}});
  out["elements"] = es;
  return out;
}

json global_json(const GlobalBasis& gb) {
  const CrystalData& c = *gb.crystal;
  json out = header_json(*c.amb);
  out["height"] = c.H;
  std::vector<Offset> weights;
  for (const auto& [beta, s] : gb.slices)
    if (!s.vertices.empty()) weights.push_back(beta);
  out["weights"] = words_table(*c.amb, weights);
  json es = json::array();
  for (const auto& v : c.graph.vertices) {
    json res = json::array();
    for (const auto& x : c.residues.at(v.id)) res.push_back(x.get_str());
    es.push_back({{"id", v.id},
                  {"weight", v.offset},
                  {"label", v.label.empty() ? "G" + std::to_string(v.id) : "G(" + v.label + ")"},
                  {"coordinates", vec_json(gb.G(v.id))},
                  {"residue", res}});
  }
  out["elements"] = es;
  return out;
}

LabeledBasis basis_from_json(const Ambient& amb, const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
    throw InvalidInput("basis: expected an object with an elements array");
  const int rank = amb.rank();
  std::map<Offset, std::vector<Word>> words;
  if (j.contains("weights")) {
    for (const auto& w : j["weights"]) {
      if (!w.is_object() || !w.contains("weight") || !w.contains("words"))
        throw InvalidInput("basis: weights entries need weight and words");
      const Offset beta = offset_from_json(w["weight"], rank);
      auto& list = words[beta];
      for (const auto& x : w["words"]) {
        Word word = word_from_json(x);
        for (const auto& il : word)
          if (il.i < 0 || il.i >= rank || il.l < 1 || (amb.datum().is_real(il.i) && il.l != 1)) throw InvalidInput("basis: letter out of range in a word");
        if (word_offset(word, rank) != beta) throw InvalidInput("basis: word of the wrong weight at " + to_string(beta));
        list.push_back(std::move(word));
      }
    }
  }
  std::map<int, const json*> by_id;
  for (const auto& e : j["elements"]) {
    if (!e.is_object() || !e.contains("id") || !e["id"].is_number_integer() || !e.contains("weight") ||
        !e.contains("coordinates") || !e["coordinates"].is_array())
      throw InvalidInput("basis: each element needs id, weight and coordinates");
    if (!by_id.emplace(e["id"].get<int>(), &e).second) throw InvalidInput("basis: duplicate id " + e["id"].dump());
  }
  LabeledBasis out;
  int expect = 0;
  for (const auto& [id, e] : by_id) {
    if (id != expect++) throw InvalidInput("basis: ids must be 0.." + std::to_string(by_id.size() - 1));
    const Offset beta = offset_from_json((*e)["weight"], rank);
    const auto& coords = (*e)["coordinates"];
    const std::size_t n = amb.dim(beta);
    Vec v(n);
    auto it = words.find(beta);
    if (it == words.end()) {
      if (coords.size() != n)
        throw InvalidInput("basis: element " + std::to_string(id) + " has " + std::to_string(coords.size()) +
                           " coordinates, dimension is " + std::to_string(n));
      for (std::size_t k = 0; k < n; ++k) v[k] = scalar_from_json(coords[k]);
    } else {
      if (coords.size() != it->second.size())
        throw InvalidInput("basis: element " + std::to_string(id) + " does not match the words of its weight");
      for (std::size_t k = 0; k < coords.size(); ++k) {
        const RatFunc x = scalar_from_json(coords[k]);
        if (x.is_zero()) continue;
        const Vec w = amb.coords(it->second[k]);
        for (std::size_t r = 0; r < n; ++r) v[r] += x * w[r];
      }
    }
    std::string label = e->contains("label") && (*e)["label"].is_string() ? (*e)["label"].get<std::string>() : "";
    out.add(beta, v, label);
  }
  return out;
}

json certificate_json(const PerfectCertificate& cert, const LabeledBasis& basis) {
  json es = json::array();
  for (const auto& [key, e] : cert.maps) {
    const auto& [b, il] = key;
    json row = {{"element", b}, {"i", il.i}, {"l", il.l}, {"d", cert.d(b, il)}};
    row["target"] = e.target < 0 ? json(nullptr) : json(e.target);
    row["c"] = to_string(e.c);
    es.push_back(row);
  }
  json out;
  out["kind"] = cert.kind == FamilyKind::Lower ? "lower" : "upper";
  out["ok"] = cert.ok();
  out["elements"] = basis.size();
  out["entries"] = es;
  out["violations"] = report_json(cert.refutation);
  out["digest"] = digest(es);
  return out;
}

json comparison_json(const Comparison& cmp, const LabeledBasis& b1, const LabeledBasis& b2) {
  json pairs = json::array();
  for (std::size_t k = 0; k < cmp.psi.size(); ++k) {
    json row = {{"from", k}, {"to", cmp.psi[k]}};
    if (k < cmp.scalars.size()) row["scalar"] = to_string(cmp.scalars[k]);
    if (k < b1.labels.size()) row["from_label"] = b1.labels[k];
    if (cmp.psi[k] >= 0 && cmp.psi[k] < static_cast<int>(b2.labels.size())) row["to_label"] = b2.labels[cmp.psi[k]];
    pairs.push_back(row);
  }
  return json{{"ok", cmp.ok()}, {"psi", pairs}, {"violations", report_json(cmp.report)}};
}

json report_json(const Report& r, std::size_t limit) {
  json out = json::object();
  out["count"] = r.violations.size();
  json first = json::array();
  for (std::size_t k = 0; k < r.violations.size() && k < limit; ++k) first.push_back(r.violations[k]);
  out["first"] = first;
  return out;
}

std::string digest(const json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bbcrystal
