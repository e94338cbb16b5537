#include "twistflag/commands.hpp"

#include <chrono>

namespace twistflag {

namespace {

const std::vector<int> kBasicBetti{1, 0, 2, 0, 2, 0, 1};
const std::vector<int> kDeRhamBetti{1, 0, 0, 1, 0, 1, 0, 0, 1};

ConeInput read_input(const RunConfig &cfg) {
  if (!cfg.config) throw InvalidInput("--config is required for this command");
  return cone_input_from_json(load_json(*cfg.config));
}

Json report(const std::string &command, const RunConfig &cfg, Json results, bool pass) {
  return Json{{"command", command}, {"config", cfg.echo()}, {"results", std::move(results)}, {"pass", pass}};
}

CommandResult finish(const std::string &command, const RunConfig &cfg, Json results, bool pass) {
  return {report(command, cfg, std::move(results), pass), pass ? 0 : 1};
}

std::vector<Rational> parse_pair(const std::string &text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw InvalidInput("expected \"p/q,r/s\", got \"" + text + "\"");
  }
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

Json beta_json(const Beta &b) { return Json::array({to_string(b[0]), to_string(b[1])}); }

Json enumerated_system(const WeightSystem &ws) {
  const DerivedConeData d = derive(ws);
  const FreenessVerdict v = freeness_check(d, ws);
  const ActionClass cls = classify_flag_case(ws);
  Json out = to_json(ws);
  out["free"] = v.free;
  out["class"] = cls == ActionClass::FreeFlagCase ? "free_flag" : "orbifold";
  return out;
}

} // namespace

void RunConfig::validate() const {
  if (!(tol_residual > 0) || !(tol_zero > 0) || !(tol_pos > 0)) throw InvalidInput("tolerances must be positive");
  if (samples < 1) throw InvalidInput("sample count must be at least 1");
  if (bound < 0) throw InvalidInput("bound must be non-negative");
  if (interp < 1) throw InvalidInput("interpolation sample count must be at least 1");
  if (branch != "generic" && branch != "degenerate") throw InvalidInput("branch must be generic or degenerate");
}

Json RunConfig::echo() const {
  Json out{{"tol_residual", tol_residual}, {"tol_zero", tol_zero}, {"tol_pos", tol_pos},
           {"samples", samples},           {"seed", seed},         {"bound", bound},
           {"interp", interp}};
  if (config) {
    try {
      out["input"] = load_json(*config);
    } catch (const InvalidInput &) {
      out["input"] = *config;
    }
  }
  if (beta) out["beta"] = *beta;
  if (beta_imag) out["beta_imag"] = *beta_imag;
  out["branch"] = branch;
  return out;
}

Beta parse_beta(const std::string &re, const std::optional<std::string> &im) {
  const auto r = parse_pair(re);
  const auto i = im ? parse_pair(*im) : std::vector<Rational>{Rational(0), Rational(0)};
  return {QSqrtNeg3(r[0], i[0]), QSqrtNeg3(r[1], i[1])};
}

CommandResult cmd_check(const RunConfig &cfg) {
  cfg.validate();
  const ConeInput in = read_input(cfg);
  const DerivedConeData &d = in.data;
  const ConditionReport rep = check_star(d);

  Json results{{"cone_data", to_json(d)}};
  const Json condition = to_json(rep);
  for (const auto &[k, v] : condition.items()) results[k] = v;
  bool pass = rep.star;
  if (rep.star) {
    const InterpolationSpec spec = make_interpolation_spec(d, uniform_samples(cfg.interp));
    const bool ok = check_interpolation_path(d, spec);
    Json ts = Json::array();
    for (const auto &t : spec.t) ts.push_back(to_json(t));
    results["interpolation"] = Json{{"a", to_json(spec.a)}, {"b", to_json(spec.b)}, {"t", ts}, {"pass", ok}};
    pass = pass && ok;
  } else {
    results["interpolation"] = nullptr;
  }
  return finish("check", cfg, std::move(results), pass);
}

CommandResult cmd_isotropy(const RunConfig &cfg) {
  cfg.validate();
  const ConeInput in = read_input(cfg);
  const DerivedConeData &d = in.data;
  if (!d.is_integral()) throw InvalidInput("isotropy needs integral cone data");
  if (!star_holds(d)) throw PreconditionFailed("the cone condition does not hold");

  WeightSystem ws;
  Json weights;
  if (in.origin) {
    ws = *in.origin;
  } else {
    GeneratedWeights g = weights_from_cone_data(d.A, d.B);
    ws = g.integer;
    weights["scale"] = g.scale;
  }
  weights["weights"] = to_json(ws);

  const FreenessVerdict v = freeness_check(d, ws);
  const ActionClass cls = classify_flag_case(ws);
  weights["class"] = cls == ActionClass::FreeFlagCase ? "free_flag" : "orbifold";

  Json census = Json::array();
  for (const auto &s : singular_stratum_census(d)) census.push_back(to_json(s));
  Json results{{"cone_data", to_json(d)}, {"freeness", to_json(v)}, {"classification", weights}, {"census", census}};
  return finish("isotropy", cfg, std::move(results), v.flag_case_consistent);
}

CommandResult cmd_verify(const RunConfig &cfg) {
  cfg.validate();
  const ConeInput in = read_input(cfg);
  const DerivedConeData &d = in.data;

  SampleOptions opt;
  opt.count = cfg.samples;
  opt.seed = cfg.seed;
  const auto samples = sample_level_set(d, opt);

  CertificateTolerances tol;
  tol.operator_err = cfg.tol_residual;
  tol.residual = cfg.tol_residual;
  tol.tol_zero = cfg.tol_zero;
  tol.tol_pos_rel = cfg.tol_pos;

  std::vector<LevelSetPoint> points;
  for (const auto &s : samples)
    if (s.point) points.push_back(*s.point);
  const ConeDataF df = ConeDataF::from(d);
  const auto certs = certify_batch(df, points, Mat2::Identity(), tol, cfg.threads);

  Json list = Json::array();
  bool pass = true;
  int passed = 0;
  std::size_t k = 0;
  for (const auto &s : samples) {
    Json e;
    if (s.point) {
      e = to_json(certs[k]);
      pass = pass && certs[k].pass;
      passed += certs[k].pass ? 1 : 0;
      ++k;
    } else {
      e = Json{{"error", s.error}, {"pass", false}};
      pass = false;
    }
    e["origin"] = s.origin;
    e["iterations"] = s.iterations;
    list.push_back(std::move(e));
  }
  Json results{{"cone_data", to_json(d)},
               {"star", star_holds(d)},
               {"summary", Json{{"points", samples.size()}, {"passed", passed}}},
               {"certificates", list}};
  return finish("verify", cfg, std::move(results), pass);
}

CommandResult cmd_generate(const RunConfig &cfg) {
  cfg.validate();
  if (!cfg.config) throw InvalidInput("--config is required for this command");
  const Json j = load_json(*cfg.config);
  if (!j.is_object() || !j.contains("A") || !j.contains("B")) throw InvalidInput("generate needs cone data {\"A\", \"B\"}");
  const ConeInput in = cone_input_from_json(j);
  const GeneratedWeights g = weights_from_cone_data(in.data.A, in.data.B);
  Json results = to_json(g);
  results["cone_data"] = to_json(in.data);
  return finish("generate", cfg, std::move(results), true);
}

int cmd_enumerate(const RunConfig &cfg, std::ostream &out) {
  cfg.validate();
  const auto systems = enumerate_star_systems(cfg.bound, cfg.threads);
  out << "{\"command\":\"enumerate\",\"config\":" << cfg.echo().dump() << ",\"results\":{\"systems\":[";
  std::size_t nfree = 0;
  for (std::size_t k = 0; k < systems.size(); ++k) {
    Json e = enumerated_system(systems[k]);
    nfree += e["free"].get<bool>() ? 1 : 0;
    out << (k ? ",\n" : "\n") << e.dump();
  }
  Json summary{{"count", systems.size()}, {"free", nfree}, {"orbifold", systems.size() - nfree}};
  out << "\n],\"summary\":" << summary.dump() << "},\"pass\":true}";
  return 0;
}

CommandResult cmd_cohomology(const RunConfig &cfg) {
  cfg.validate();
  const GradedAlgebra base = basic_model();
  Json algebra_checks{{"associativity", base.check_associativity()},
                      {"graded_commutativity", base.check_graded_commutativity()},
                      {"unit", base.check_unit()}};
  bool pass = true;
  for (const auto &[k, v] : algebra_checks.items()) pass = pass && v.get<std::string>().empty();

  const std::vector<int> basic = base.graded_dimensions();
  const auto h2 = degree_two_basis();
  const RationalDga dr = derham_model(h2[0], h2[1]);
  const std::vector<int> betti = dga_cohomology(dr);
  pass = pass && basic == kBasicBetti && betti == kDeRhamBetti;

  Beta beta = cfg.branch == "degenerate" ? degenerate_beta() : generic_beta();
  if (cfg.beta) {
    beta = parse_beta(*cfg.beta, cfg.beta_imag);
  } else if (cfg.beta_imag) {
    throw InvalidInput("--beta-imag requires --beta");
  }
  const HodgeTable table = hodge_model(beta);
  Json hodge = to_json(table);
  hodge["beta"] = beta_json(beta);
  hodge["determinant"] = to_string(beta_multiplication_determinant(beta));

  Json branches = Json::array();
  for (const Beta &b : {generic_beta(), degenerate_beta()}) {
    branches.push_back(Json{{"beta", beta_json(b)}, {"branch", hodge_model(b).branch}});
  }

  int basic_chi = 0;
  for (std::size_t k = 0; k < basic.size(); ++k) basic_chi += (k % 2 ? -1 : 1) * basic[k];
  const int total_chi = euler_characteristic(dr);
  pass = pass && basic_chi == 6 && total_chi == 0;

  Json results{{"basic_betti", basic},
               {"betti", betti},
               {"euler", Json{{"basic", basic_chi}, {"total", total_chi}}},
               {"algebra_checks", algebra_checks},
               {"hodge", hodge},
               {"branches", branches}};
  return finish("cohomology", cfg, std::move(results), pass);
}

int run_command(const std::string &name, const RunConfig &cfg, std::ostream &out, std::ostream &err, bool timing) {
  const auto t0 = std::chrono::steady_clock::now();
  auto fail = [&](const char *kind, const std::exception &e, int code) {
    err << "twistflag " << name << ": " << e.what() << "\n";
    Json r{{"command", name}, {"error", Json{{"kind", kind}, {"message", e.what()}}}, {"pass", false}};
    out << r.dump(2) << "\n";
    return code;
  };
  try {
    if (name == "enumerate") {
      const int code = cmd_enumerate(cfg, out);
      out << "\n";
      if (timing) {
        err << "wall_time_s " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
            << "\n";
      }
      return code;
    }
    CommandResult r;
    if (name == "check") r = cmd_check(cfg);
    else if (name == "isotropy") r = cmd_isotropy(cfg);
    else if (name == "verify") r = cmd_verify(cfg);
    else if (name == "generate") r = cmd_generate(cfg);
    else if (name == "cohomology") r = cmd_cohomology(cfg);
    else throw InvalidInput("unknown command " + name);
    if (timing) r.report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << r.report.dump(2) << "\n";
    return r.exit_code;
  } catch (const InvalidInput &e) {
    return fail("invalid_input", e, 2);
  } catch (const Json::exception &e) {
    return fail("invalid_input", e, 2);
  } catch (const PreconditionFailed &e) {
    return fail("precondition_failed", e, 1);
  } catch (const InternalInconsistency &e) {
    return fail("internal_inconsistency", e, 1);
  } catch (const ConvergenceFailure &e) {
    return fail("convergence_failure", e, 1);
  } catch (const std::overflow_error &e) {
    return fail("overflow", e, 2);
  }
}

} // namespace twistflag
