#include "twistflag/json_io.hpp"

#include <fstream>
#include <sstream>

namespace twistflag {

namespace {

const Json &require(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_from_json(const Json &j) {
  if (!j.is_number_integer()) throw InvalidInput("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

template <class T, class F>
std::array<T, 3> triple(const Json &j, const char *what, F &&convert) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput(std::string(what) + " must be a list of three vectors");
  return {convert(j[0]), convert(j[1]), convert(j[2])};
}

Int2 int2_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("expected a pair [a, b], got " + j.dump());
  return {int_from_json(j[0]), int_from_json(j[1])};
}

Json pair_json(int i, int j) { return Json::array({i + 1, j + 1}); }

Json indices(const std::set<int> &s) {
  Json out = Json::array();
  for (int k : s) out.push_back(k + 1);
  return out;
}

Json pair_checks(const std::vector<PairCheck> &v) {
  Json out = Json::array();
  for (const auto &p : v) {
    Json e = to_json(p.membership);
    e["pair"] = pair_json(p.i, p.j);
    out.push_back(std::move(e));
  }
  return out;
}

} // namespace

Json to_json(const Rational &q) {
  if (q.denominator() == 1) return q.numerator().convert_to<std::int64_t>();
  return to_string(q);
}

Rational rational_from_json(const Json &j) {
  if (j.is_number_integer()) return Rational(Integer(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InvalidInput("expected an integer or a \"p/q\" string, got " + j.dump());
}

Json to_json(const Rat2 &v) { return Json::array({to_json(v.x), to_json(v.y)}); }

Rat2 rat2_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("expected a pair [x, y], got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json to_json(const WeightSystem &ws) {
  Json wl = Json::array(), wr = Json::array();
  for (const auto &v : ws.wL) wl.push_back(Json::array({v[0], v[1]}));
  for (const auto &v : ws.wR) wr.push_back(Json::array({v[0], v[1]}));
  return Json{{"wL", wl}, {"wR", wr}};
}

Json to_json(const RationalWeightSystem &ws) {
  Json wl = Json::array(), wr = Json::array();
  for (const auto &v : ws.wL) wl.push_back(to_json(v));
  for (const auto &v : ws.wR) wr.push_back(to_json(v));
  return Json{{"wL", wl}, {"wR", wr}};
}

WeightSystem weight_system_from_json(const Json &j) {
  WeightSystem ws;
  ws.wL = triple<Int2>(require(j, "wL"), "wL", int2_from_json);
  ws.wR = triple<Int2>(require(j, "wR"), "wR", int2_from_json);
  ws.validate();
  return ws;
}

Json to_json(const DerivedConeData &d) {
  Json a = Json::array(), b = Json::array();
  for (const auto &v : d.A) a.push_back(to_json(v));
  for (const auto &v : d.B) b.push_back(to_json(v));
  return Json{{"A", a}, {"B", b}, {"C", to_json(d.C)}};
}

ConeInput cone_input_from_json(const Json &j) {
  if (!j.is_object()) throw InvalidInput("config must be a JSON object");
  if (j.contains("wL") || j.contains("wR")) {
    WeightSystem ws = weight_system_from_json(j);
    return {derive(ws), ws};
  }
  if (j.contains("A") || j.contains("B")) {
    auto A = triple<Rat2>(require(j, "A"), "A", rat2_from_json);
    auto B = triple<Rat2>(require(j, "B"), "B", rat2_from_json);
    DerivedConeData d = DerivedConeData::from_AB(A, B);
    if (j.contains("C") && !(rat2_from_json(j.at("C")) == d.C)) throw InvalidInput("C differs from A_j + B_j");
    return {d, std::nullopt};
  }
  throw InvalidInput("config needs either \"wL\"/\"wR\" or \"A\"/\"B\"");
}

Json load_json(const std::string &path_or_inline) {
  std::string text;
  const auto first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{') {
    text = path_or_inline;
  } else {
    std::ifstream in(path_or_inline);
    if (!in) throw InvalidInput("cannot read config file " + path_or_inline);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const ConeMembership &m) {
  Json out{{"status", to_string(m.status)}};
  if (m.coefficients) out["coefficients"] = Json::array({to_json(m.coefficients->first), to_json(m.coefficients->second)});
  return out;
}

Json to_json(const NrcResult &r) {
  Json out{{"N", r.n}, {"R", r.r}, {"C", r.c}};
  if (r.n_witness) {
    const auto &w = *r.n_witness;
    out["N_witness"] = Json{{"pair", pair_json(w.i, w.j)}, {"a", to_json(w.a)}, {"b", to_json(w.b)}};
  }
  out["apex"] = r.apex ? to_json(*r.apex) : Json(nullptr);
  return out;
}

Json to_json(const ConditionReport &r) {
  return Json{{"star", r.star},
              {"a_pairs", pair_checks(r.a_pairs)},
              {"b_pairs", pair_checks(r.b_pairs)},
              {"mixed_pairs", pair_checks(r.mixed_pairs)},
              {"nrc", to_json(r.nrc)}};
}

Json to_json(const GeneratedWeights &g) {
  return Json{{"rational", to_json(g.rational)}, {"scale", g.scale}, {"integer", to_json(g.integer)}};
}

Json to_json(const IsotropyGroup &g) {
  if (g.kind == IsotropyGroup::Kind::PositiveDimensional) {
    return Json{{"kind", "positive_dimensional"}, {"rank_deficit", g.rank_deficit}};
  }
  return Json{{"kind", "finite"}, {"order", g.order()}, {"factors", g.factors}};
}

Json to_json(const StratumReport &s) {
  Json out{{"I", indices(s.pattern.I)},
           {"J", indices(s.pattern.J)},
           {"isotropy", to_json(s.isotropy)},
           {"realizable", s.realizable == Realizability::Realizable ? "realizable" : "not_determined"}};
  if (s.witness) out["witness_point"] = Json{{"a", to_json(s.witness->first)}, {"b", to_json(s.witness->second)}};
  return out;
}

Json to_json(const FreenessVerdict &v) {
  Json out{{"free", v.free}};
  if (v.failing_pair) {
    const auto &f = *v.failing_pair;
    out["failing_pair"] = Json{{"i", f.i + 1}, {"j", f.j + 1}, {"determinant", f.determinant}};
  }
  out["flag_case_consistent"] = v.flag_case_consistent;
  return out;
}

Json to_json(const PointCertificate &c) {
  Json z = Json::array(), w = Json::array();
  for (int k = 0; k < 3; ++k) {
    z.push_back(Json::array({c.point.p.z(k).real(), c.point.p.z(k).imag()}));
    w.push_back(Json::array({c.point.p.w(k).real(), c.point.p.w(k).imag()}));
  }
  Json out{{"point", Json{{"z", z}, {"w", w}}},
           {"residuals", Json{{"quadric", c.point.quadric_residual}, {"moment", c.point.moment_residual}}},
           {"ranks", Json{{"jacobian", c.jacobian_rank}, {"transversal", c.transversal_rank}}},
           {"regular", c.regular},
           {"transversal", c.transversal},
           {"errors", Json{{"jn_square", c.jn_square_error},
                           {"jn_xy", c.jn_xy_error},
                           {"jn_xy_opposite_sign", c.jn_xy_opposite_error},
                           {"omega_compat", c.omega_compat_error},
                           {"projection_sigma_min", c.projection_sigma_min}}},
           {"spectrum", c.spectrum},
           {"zero_eigenvalues", c.zero_eigenvalues},
           {"positive_eigenvalues", c.positive_eigenvalues},
           {"pass", c.pass}};
  if (!c.failure.empty()) out["failure"] = c.failure;
  return out;
}

Json to_json(const HodgeTable &t) {
  Json fixed = Json::object();
  for (const auto &[bd, dim] : fixed_hodge_entries()) {
    fixed["h" + std::to_string(bd.first) + std::to_string(bd.second)] = t.h.at(bd);
  }
  Json table = Json::array();
  for (int p = 0; p <= 4; ++p) {
    Json row = Json::array();
    for (int q = 0; q <= 4; ++q) row.push_back(t.h.at({p, q}));
    table.push_back(std::move(row));
  }
  return Json{{"fixed", fixed}, {"branch", t.branch}, {"table", table}};
}

} // namespace twistflag
