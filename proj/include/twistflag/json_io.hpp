#pragma once

// JSON (de)serialization. Rationals are written as integers when integral
// and as "p/q" strings otherwise; indices in reports are 1-based.

#include <optional>
#include <string>

#include "json.hpp"

#include "twistflag/cohomology.hpp"
#include "twistflag/isotropy.hpp"
#include "twistflag/quadric_lab.hpp"

namespace twistflag {

using Json = nlohmann::ordered_json;

Json to_json(const Rational &q);
Rational rational_from_json(const Json &j);
Json to_json(const Rat2 &v);
Rat2 rat2_from_json(const Json &j);

Json to_json(const WeightSystem &ws);
Json to_json(const RationalWeightSystem &ws);
/// {"wL": [[a,b] x3], "wR": [[...] x3]} with integer entries; validated.
WeightSystem weight_system_from_json(const Json &j);

Json to_json(const DerivedConeData &d);

/// Cone data plus the weight system it came from, when there was one.
struct ConeInput {
  DerivedConeData data;
  std::optional<WeightSystem> origin;
};

/// Accepts a weight system ({"wL","wR"}) or cone data ({"A","B"}, optional "C").
ConeInput cone_input_from_json(const Json &j);

/// Inline JSON when the text starts with '{', otherwise a file path.
Json load_json(const std::string &path_or_inline);

Json to_json(const ConeMembership &m);
Json to_json(const ConditionReport &r);
Json to_json(const NrcResult &r);
Json to_json(const GeneratedWeights &g);
Json to_json(const IsotropyGroup &g);
Json to_json(const StratumReport &s);
Json to_json(const FreenessVerdict &v);
Json to_json(const PointCertificate &c);
Json to_json(const HodgeTable &t);

} // namespace twistflag
