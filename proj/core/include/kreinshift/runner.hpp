#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kreinshift/cayley.hpp"
#include "kreinshift/doi.hpp"
#include "kreinshift/shift.hpp"

namespace kreinshift {

/// Everything a verification run needs; echoed verbatim into the report so
/// any report can be re-run.
struct ExperimentConfig {
  std::string pair_source;
  std::string function_spec = "monomial k=3";
  int grid = 2048;
  int t_nodes = 32;
  int truncation = 50;
  std::vector<double> r_ladder = {0.9, 0.99, 0.999};
  std::vector<Complex> lambdas = {{0.0, -1.0}, {0.0, -2.0}, {1.0, -1.0}};
  double t_max = 1e3;
  double t_min = 1e-2;
  int t_points = 8192;
  double tol_nu = 1e-6;
  double tol_xi = 1e-8;
  double tol_xi_dual = 1e-6;
  double tol_xi_regularized = 1e-3;
  double tol_dissipative = 1e-3;
  std::string out_dir = ".";

  /// Throws InvariantViolation naming the failing invariant. Called before
  /// any computation or file output.
  void validate() const;
};

/// One verified identity.
struct FormulaRecord {
  std::string formula; // formsledlyaszha | T-l | zavfo | fsleddis | sledrraya
  std::string detail;  // e.g. "lambda=-2i" or "f=z^3"
  Complex lhs{0.0};
  Complex rhs{0.0};
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::vector<FormulaRecord> records;
  std::map<std::string, std::string> environment;
  ExperimentConfig config;
  std::map<std::string, double> diagnostics;

  bool all_pass() const;
};

/// A loaded pair: either a contraction path or a dissipative pair (whose
/// Cayley images then form the path).
struct LoadedPair {
  std::optional<ContractionPath> contractions;
  std::optional<std::pair<DissipativeOperator, DissipativeOperator>> dissipative;

  bool is_dissipative() const { return dissipative.has_value(); }
};

/// Reads a pair from a JSON file ({"T0":.., "T1":..} or {"L0":.., "L1":..})
/// or builds one from a named spec such as "zero-pair dim=3",
/// "random seed=7 dim=4", "equal seed=7 dim=4",
/// "diagonal entries0=0.5,0.2 entries1=0.6,0.1", "scalar t0=0 t1=0.5",
/// "random-dissipative seed=7 dim=4" or "scalar-dissipative l0=0:1 l1=0:2".
/// Complex values are written re or re:im; lists are comma-separated.
LoadedPair load_pair(const std::string& path_or_spec);

/// Parses "monomial k=3", "exp d=6", "geometric q=0.8 d=20" or
/// "coeffs c=0,0,1" (comma-separated, each entry re or re:im).
AnalyticFunction parse_function(const std::string& spec);

/// Matrix JSON {"dim": n, "re": [[..]], "im": [[..]]}, row-major.
ComplexMatrix read_matrix_json(const std::string& path);
void write_matrix_json(const ComplexMatrix& m, const std::string& path);

/// Computed artifacts of a run, before emission.
struct RunArtifacts {
  VerificationReport report;
  std::optional<SpectralShiftFunction> xi;
  std::optional<OmegaFunction> omega;
};

/// Validates, loads the pair and verifies every formula applicable to it.
/// Writes nothing.
RunArtifacts execute(const ExperimentConfig& config);

/// Validates, loads the pair and constructs xi (and omega for dissipative
/// pairs) without running any formula checks. Writes nothing.
RunArtifacts compute_artifacts(const ExperimentConfig& config);

/// Paths written by emit.
struct EmitPaths {
  std::string xi_csv;
  std::string coeffs_json;
  std::string report_json;
  std::optional<std::string> omega_csv;
};

/// Writes xi.csv, xi_coeffs.json, report.json and (when omega is present)
/// omega.csv into report.config.out_dir. UTF-8, %.17g floats, rows in grid
/// order.
EmitPaths emit(const VerificationReport& report, const SpectralShiftFunction& xi,
               const OmegaFunction* omega);

/// xi.csv, xi_coeffs.json and optional omega.csv only, no report.
EmitPaths emit_artifacts(const std::string& out_dir, const SpectralShiftFunction& xi,
                         const OmegaFunction* omega);

/// execute + emit. Returns the report; exit-code mapping is the caller's job.
VerificationReport run(const ExperimentConfig& config);

/// Report JSON (de)serialization. Serialization is deterministic: fixed key
/// order, %.17g numbers; the timestamp field is the only run-varying part.
std::string report_to_json(const VerificationReport& report, const std::string& timestamp);
VerificationReport report_from_json(const std::string& text);

/// Render a report as the human-readable verification table.
std::string render_report(const VerificationReport& report);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

} // namespace kreinshift
