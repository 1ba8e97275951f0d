#pragma once

#include <json.hpp>

#include "bbcrystal/perfect.hpp"

namespace bbcrystal {

using json = nlohmann::ordered_json;

// Malformed files or flags; the CLI maps this and InvalidDatum to exit 2.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// JSON, or the TOML subset `key = value` with integer arrays, strings and
// # comments. Throws InvalidDatum when validate fails.
BCDatum parse_datum(const std::string& text);
BCDatum load_datum(const std::string& path);
json datum_json(const BCDatum& d);

// "2,0,1" -> {2,0,1}; the length must equal the rank.
std::vector<int> parse_dom(const std::string& text, int rank);

json crystal_json(const CrystalGraph& g);
std::string crystal_dot(const CrystalGraph& g, const std::string& name = "crystal");
std::string crystal_text(const CrystalGraph& g);
// Vertex counts per weight, keyed by the offset string.
json weight_counts(const CrystalGraph& g);

// Elements with coordinates over the representative words of each weight.
json basis_json(const Ambient& amb, const LabeledBasis& basis);
// The lower global basis in the same format, with residues.
json global_json(const GlobalBasis& gb);
// Reads a basis file against the ambient; coordinates over words are mapped
// through the ambient, so any spanning words of the weight may be used.
LabeledBasis basis_from_json(const Ambient& amb, const json& j);

json certificate_json(const PerfectCertificate& cert, const LabeledBasis& basis);
json comparison_json(const Comparison& cmp, const LabeledBasis& b1, const LabeledBasis& b2);
json report_json(const Report& r, std::size_t limit = 20);

// FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace bbcrystal
