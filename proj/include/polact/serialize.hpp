#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "polact/tailed_seq.hpp"

namespace polact {

using Json = nlohmann::json;

// Text record for a TailedSeq:
//   {"base":0,"mode":"real","prefix":["1","1/4"],"tail":{"a":"1/4","kind":"geom","r":"1/2"}}
// Tail kinds: const {c}, geom {a, r}, rgeom {a, r} (entries 1/(a r^k)),
// power {c, q} for unimodular ratios. Float records add "tol".
Json to_json(const TailedSeq& x);
TailedSeq seq_from_json(const Json& j);

std::string serialize(const TailedSeq& x);
TailedSeq parse_seq(std::string_view text);

Json to_json(const Enclosure& e);
// Exact values as {"fraction": "p/q", "decimal": "..."}.
Json exact_json(const Rational& q);

}  // namespace polact
