#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "twistflag/commands.hpp"

int main(int argc, char **argv) {
  using twistflag::RunConfig;

  CLI::App app{"Exact and numerical checks for double-sided torus actions on SU(3)"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_path;
  bool timing = false;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--out", out_path, "Write the report to this file instead of stdout");
    sub->add_flag("--timing", timing, "Add wall-clock time to the report");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
  };
  auto add_config = [&](CLI::App *sub) {
    sub->add_option("--config", cfg.config, "Config file path or inline JSON")->required();
  };

  auto *check = app.add_subcommand("check", "Cone condition, (N)/(R)/(C) and the interpolation path");
  add_config(check);
  check->add_option("--interp", cfg.interp, "Interpolation samples t = k/N (default 8)");

  auto *isotropy = app.add_subcommand("isotropy", "Freeness, flag-case classification and stratum census");
  add_config(isotropy);

  auto *verify = app.add_subcommand("verify", "Numerical certification at sampled level-set points");
  add_config(verify);
  verify->add_option("--samples", cfg.samples, "Number of points (default 100)");
  verify->add_option("--seed", cfg.seed, "RNG seed (default 0)");
  verify->add_option("--tol", cfg.tol_residual, "Residual and operator-identity tolerance (default 1e-8)");
  verify->add_option("--tol-zero", cfg.tol_zero, "Kernel eigenvalue threshold (default 1e-8)");
  verify->add_option("--tol-pos", cfg.tol_pos, "Relative positivity threshold (default 1e-6)");

  auto *generate = app.add_subcommand("generate", "Weight system from cone data {\"A\", \"B\"}");
  add_config(generate);

  auto *enumerate = app.add_subcommand("enumerate", "All weight systems with entries in [-bound, bound]");
  enumerate->add_option("--bound", cfg.bound, "Entry bound (default 1)");

  auto *cohomology = app.add_subcommand("cohomology", "Basic, de Rham and Hodge tables of the model");
  cohomology->add_option("--beta", cfg.beta, "beta = b1*x1 + b2*x2 as \"p/q,r/s\"");
  cohomology->add_option("--beta-imag", cfg.beta_imag, "sqrt(-3) parts of beta, same format");
  cohomology->add_option("--branch", cfg.branch, "generic | degenerate (ignored with --beta)");

  for (auto *sub : {check, isotropy, verify, generate, enumerate, cohomology}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  if (out_path.empty()) return twistflag::run_command(name, cfg, std::cout, std::cerr, timing);
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "twistflag: cannot write " << out_path << "\n";
    return 2;
  }
  return twistflag::run_command(name, cfg, out, std::cerr, timing);
}
