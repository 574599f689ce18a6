#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kreinshift/runner.hpp"

namespace {

kreinshift::Complex parse_lambda(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (...) {
    throw kreinshift::ParseError("cannot parse lambda '" + s + "' (expected re or re:im)");
  }
}

void add_config_flags(CLI::App* sub, kreinshift::ExperimentConfig& cfg,
                      std::vector<std::string>& lambda_args) {
  sub->add_option("--pair", cfg.pair_source,
                  "pair file (JSON with T0/T1 or L0/L1) or named spec, e.g. "
                  "\"random seed=7 dim=4\"")
      ->required();
  sub->add_option("--function", cfg.function_spec,
                  "analytic function spec: monomial k=3 | exp d=6 | geometric q=0.8 d=20 | "
                  "coeffs c=0,0,1");
  sub->add_option("--grid", cfg.grid, "circle grid size M (power of two, >= 16)");
  sub->add_option("--t-nodes", cfg.t_nodes, "Gauss-Legendre nodes for the path average");
  sub->add_option("--truncation", cfg.truncation, "Fourier truncation order K");
  sub->add_option("--r-ladder", cfg.r_ladder, "regularization radii, increasing, in (0,1)")
      ->delimiter(',');
  sub->add_option("--lambdas", lambda_args,
                  "resolvent sample points re:im with im <= -0.1, comma separated")
      ->delimiter(',');
  sub->add_option("--t-max", cfg.t_max, "real-axis grid extent");
  sub->add_option("--t-min", cfg.t_min, "smallest positive real-axis grid point");
  sub->add_option("--t-points", cfg.t_points, "real-axis grid size (even)");
  sub->add_option("--tol-nu", cfg.tol_nu, "tolerance for the measure-form trace identity");
  sub->add_option("--tol-xi", cfg.tol_xi, "tolerance for the shift-function trace identity");
  sub->add_option("--tol-xi-dual", cfg.tol_xi_dual,
                  "tolerance for the density-route shift function");
  sub->add_option("--tol-xi-regularized", cfg.tol_xi_regularized,
                  "tolerance when a pair needs the regularization ladder");
  sub->add_option("--tol-dissipative", cfg.tol_dissipative,
                  "tolerance for resolvent and half-plane identities");
  sub->add_option("--out-dir", cfg.out_dir, "artifact output directory");
}

} // namespace

int main(int argc, char** argv) {
  using namespace kreinshift;

  CLI::App app{"spectral shift functions for contraction pairs and their trace identities"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::vector<std::string> lambda_args;

  CLI::App* compute = app.add_subcommand(
      "compute", "construct the shift function (and omega for dissipative pairs), write "
                 "artifacts, no verification");
  add_config_flags(compute, cfg, lambda_args);

  CLI::App* verify =
      app.add_subcommand("verify", "run every applicable trace identity and write the report");
  add_config_flags(verify, cfg, lambda_args);

  CLI::App* dissipative = app.add_subcommand(
      "dissipative", "verify a dissipative pair through its Cayley images (rejects "
                     "contraction-pair input)");
  add_config_flags(dissipative, cfg, lambda_args);

  CLI::App* report_cmd =
      app.add_subcommand("report", "re-render the verification table from a report JSON");
  std::string report_path;
  report_cmd->add_option("--in", report_path, "report.json produced by verify")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!lambda_args.empty()) {
      cfg.lambdas.clear();
      for (const auto& s : lambda_args) cfg.lambdas.push_back(parse_lambda(s));
    }

    if (compute->parsed()) {
      RunArtifacts art = compute_artifacts(cfg);
      const EmitPaths paths =
          emit_artifacts(cfg.out_dir, *art.xi, art.omega ? &*art.omega : nullptr);
      std::cout << "wrote " << paths.xi_csv << "\n";
      std::cout << "wrote " << paths.coeffs_json << "\n";
      if (paths.omega_csv) std::cout << "wrote " << *paths.omega_csv << "\n";
      return 0;
    }

    if (verify->parsed() || dissipative->parsed()) {
      if (dissipative->parsed() && !load_pair(cfg.pair_source).is_dissipative()) {
        std::cerr << "error: '" << cfg.pair_source << "' is not a dissipative pair\n";
        return 2;
      }
      RunArtifacts art = execute(cfg);
      const EmitPaths paths =
          emit(art.report, *art.xi, art.omega ? &*art.omega : nullptr);
      std::cout << render_report(art.report);
      std::cout << "report: " << paths.report_json << "\n";
      return art.report.all_pass() ? 0 : 1;
    }

    std::ifstream is(report_path, std::ios::binary);
    if (!is) throw IoError("cannot open " + report_path);
    std::ostringstream buf;
    buf << is.rdbuf();
    const VerificationReport rep = report_from_json(buf.str());
    std::cout << render_report(rep);
    return rep.all_pass() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
