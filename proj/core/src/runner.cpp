#include "kreinshift/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kreinshift/parallel.hpp"
#include "kreinshift/rng.hpp"

namespace kreinshift {

namespace {

// ---------------------------------------------------------------- formatting

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_int(long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%ld", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

// ------------------------------------------------------------------- parsing

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("");
    return v;
  } catch (...) {
    throw ParseError("cannot parse number '" + s + "' in " + what);
  }
}

// "re" or "re:im".
Complex parse_complex(const std::string& s, const std::string& what) {
  const auto parts = split_on(s, ':');
  if (parts.size() == 1) return {parse_double(parts[0], what), 0.0};
  if (parts.size() == 2)
    return {parse_double(parts[0], what), parse_double(parts[1], what)};
  throw ParseError("cannot parse complex value '" + s + "' in " + what);
}

struct SpecArgs {
  std::string name;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) > 0; }

  std::string need(const std::string& key) const {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("spec '" + name + "' needs " + key + "=...");
    return it->second;
  }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  }
};

SpecArgs parse_spec(const std::string& s) {
  const auto toks = split_ws(s);
  if (toks.empty()) throw ParseError("empty pair/function spec");
  SpecArgs out;
  out.name = toks[0];
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key=value, got '" + toks[i] + "' in spec '" + s + "'");
    out.kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

int spec_int(const SpecArgs& a, const std::string& key) {
  const double v = parse_double(a.need(key), "spec '" + a.name + "'");
  if (v != std::floor(v)) throw ParseError("spec '" + a.name + "': " + key + " must be an integer");
  return static_cast<int>(v);
}

// ---------------------------------------------------------------- matrix io

EigenMatrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    throw ParseError(what + ": matrix JSON needs {\"dim\", \"re\"[, \"im\"]}");
  const int n = j.at("dim").get<int>();
  if (n < 1) throw ParseError(what + ": dim must be >= 1");
  auto read_plane = [&](const char* key, bool required) {
    std::vector<std::vector<double>> rows;
    if (!j.contains(key)) {
      if (required) throw ParseError(what + ": missing " + key);
      rows.assign(static_cast<std::size_t>(n),
                  std::vector<double>(static_cast<std::size_t>(n), 0.0));
      return rows;
    }
    try {
      rows = j.at(key).get<std::vector<std::vector<double>>>();
    } catch (...) {
      throw ParseError(what + ": " + key + " must be a 2D number array");
    }
    if (static_cast<int>(rows.size()) != n)
      throw ParseError(what + ": " + key + " row count != dim");
    for (const auto& r : rows)
      if (static_cast<int>(r.size()) != n) throw ParseError(what + ": ragged " + key + " rows");
    return rows;
  };
  const auto re = read_plane("re", true);
  const auto im = read_plane("im", false);
  EigenMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      m(i, k) = Complex(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                        im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  return m;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

} // namespace

ComplexMatrix read_matrix_json(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return ComplexMatrix(matrix_from_json(j, path));
}

void write_matrix_json(const ComplexMatrix& m, const std::string& path) {
  const int n = m.dim();
  std::ostringstream os;
  os << "{\n  \"dim\": " << n << ",\n";
  auto plane = [&](const char* key, auto part) {
    os << "  \"" << key << "\": [";
    for (int i = 0; i < n; ++i) {
      os << (i == 0 ? "\n    [" : ",\n    [");
      for (int k = 0; k < n; ++k) os << (k == 0 ? "" : ", ") << fmt_double(part(m(i, k)));
      os << "]";
    }
    os << "\n  ]";
  };
  plane("re", [](Complex z) { return z.real(); });
  os << ",\n";
  plane("im", [](Complex z) { return z.imag(); });
  os << "\n}\n";
  write_text_file(path, os.str());
}

AnalyticFunction parse_function(const std::string& spec) {
  const SpecArgs a = parse_spec(spec);
  if (a.name == "monomial") {
    const int k = spec_int(a, "k");
    Complex coef{1.0, 0.0};
    if (a.has("a")) coef = parse_complex(a.kv.at("a"), "monomial");
    return AnalyticFunction::monomial(k, coef);
  }
  if (a.name == "exp") return AnalyticFunction::exp_partial_sum(spec_int(a, "d"));
  if (a.name == "geometric")
    return AnalyticFunction::truncated_geometric(parse_double(a.need("q"), "geometric"),
                                                 spec_int(a, "d"));
  if (a.name == "coeffs") {
    const auto toks = split_on(a.need("c"), ',');
    std::vector<Complex> c;
    c.reserve(toks.size());
    for (const auto& t : toks) c.push_back(parse_complex(t, "coeffs"));
    return AnalyticFunction(std::move(c));
  }
  throw ParseError("unknown function spec '" + a.name +
                   "' (expected monomial | exp | geometric | coeffs)");
}

namespace {

LoadedPair pair_from_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  LoadedPair out;
  if (j.contains("T0") && j.contains("T1")) {
    Contraction t0{matrix_from_json(j.at("T0"), path + ":T0")};
    Contraction t1{matrix_from_json(j.at("T1"), path + ":T1")};
    out.contractions.emplace(std::move(t0), std::move(t1));
    return out;
  }
  if (j.contains("L0") && j.contains("L1")) {
    DissipativeOperator l0{matrix_from_json(j.at("L0"), path + ":L0")};
    DissipativeOperator l1{matrix_from_json(j.at("L1"), path + ":L1")};
    out.dissipative.emplace(std::move(l0), std::move(l1));
    return out;
  }
  throw ParseError(path + ": pair file needs T0/T1 or L0/L1");
}

std::vector<Complex> parse_complex_list(const std::string& s, const std::string& what) {
  std::vector<Complex> out;
  for (const auto& t : split_on(s, ',')) out.push_back(parse_complex(t, what));
  return out;
}

} // namespace

LoadedPair load_pair(const std::string& path_or_spec) {
  if (path_or_spec.empty()) throw ParseError("empty pair source");
  if (std::filesystem::exists(path_or_spec)) return pair_from_file(path_or_spec);

  const SpecArgs a = parse_spec(path_or_spec);
  LoadedPair out;
  if (a.name == "zero-pair") {
    const int n = spec_int(a, "dim");
    out.contractions.emplace(Contraction(ComplexMatrix::zero(n)),
                             Contraction(ComplexMatrix::zero(n)));
    return out;
  }
  if (a.name == "random") {
    const int n = spec_int(a, "dim");
    Rng rng(static_cast<std::uint64_t>(spec_int(a, "seed")));
    const double norm = parse_double(a.get("norm", "0.9"), "random");
    auto [t0, t1] = random_contraction_pair(rng, n, norm);
    out.contractions.emplace(std::move(t0), std::move(t1));
    return out;
  }
  if (a.name == "equal") {
    const int n = spec_int(a, "dim");
    Rng rng(static_cast<std::uint64_t>(spec_int(a, "seed")));
    const double norm = parse_double(a.get("norm", "0.9"), "equal");
    Contraction t = random_contraction(rng, n, norm);
    out.contractions.emplace(t, t);
    return out;
  }
  if (a.name == "diagonal") {
    const auto e0 = parse_complex_list(a.need("entries0"), "diagonal");
    const auto e1 = parse_complex_list(a.need("entries1"), "diagonal");
    if (e0.size() != e1.size()) throw ParseError("diagonal: entry lists differ in length");
    out.contractions.emplace(Contraction(ComplexMatrix::diagonal(e0)),
                             Contraction(ComplexMatrix::diagonal(e1)));
    return out;
  }
  if (a.name == "scalar") {
    const Complex t0 = parse_complex(a.need("t0"), "scalar");
    const Complex t1 = parse_complex(a.need("t1"), "scalar");
    out.contractions.emplace(Contraction(ComplexMatrix::diagonal({t0})),
                             Contraction(ComplexMatrix::diagonal({t1})));
    return out;
  }
  if (a.name == "random-dissipative") {
    const int n = spec_int(a, "dim");
    Rng rng(static_cast<std::uint64_t>(spec_int(a, "seed")));
    const double margin = parse_double(a.get("margin", "0.1"), "random-dissipative");
    DissipativeOperator l0{random_dissipative(rng, n, margin)};
    DissipativeOperator l1{random_dissipative(rng, n, margin)};
    out.dissipative.emplace(std::move(l0), std::move(l1));
    return out;
  }
  if (a.name == "scalar-dissipative") {
    const Complex l0 = parse_complex(a.need("l0"), "scalar-dissipative");
    const Complex l1 = parse_complex(a.need("l1"), "scalar-dissipative");
    out.dissipative.emplace(DissipativeOperator(ComplexMatrix::diagonal({l0})),
                            DissipativeOperator(ComplexMatrix::diagonal({l1})));
    return out;
  }
  throw ParseError("pair source '" + path_or_spec +
                   "' is neither an existing file nor a known spec");
}

void ExperimentConfig::validate() const {
  if (pair_source.empty()) throw InvariantViolation("config: pair_source must be set");
  if (!valid_grid_size(grid))
    throw InvariantViolation("config: grid must be a power of two >= 16");
  if (truncation < 1 || truncation > grid / 8)
    throw InvariantViolation("config: truncation must satisfy 1 <= K <= grid/8");
  if (t_nodes < 1) throw InvariantViolation("config: t_nodes must be >= 1");
  if (r_ladder.empty()) throw InvariantViolation("config: r_ladder must be non-empty");
  for (std::size_t i = 0; i < r_ladder.size(); ++i) {
    if (!(r_ladder[i] > 0.0 && r_ladder[i] < 1.0))
      throw InvariantViolation("config: r_ladder values must lie in (0, 1)");
    if (i > 0 && !(r_ladder[i] > r_ladder[i - 1]))
      throw InvariantViolation("config: r_ladder must be strictly increasing");
  }
  for (Complex l : lambdas)
    if (!(l.imag() <= -0.1))
      throw InvariantViolation("config: lambdas must have Im <= -0.1");
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw InvariantViolation("config: need 0 < t_min < t_max");
  if (t_points < 4 || t_points % 2 != 0)
    throw InvariantViolation("config: t_points must be even and >= 4");
  if (!(tol_nu > 0.0 && tol_xi > 0.0 && tol_xi_dual > 0.0 && tol_xi_regularized > 0.0 &&
        tol_dissipative > 0.0))
    throw InvariantViolation("config: tolerances must be positive");
  if (out_dir.empty()) throw InvariantViolation("config: out_dir must be set");
}

bool VerificationReport::all_pass() const {
  return std::all_of(records.begin(), records.end(),
                     [](const FormulaRecord& r) { return r.pass; });
}

namespace {

constexpr double kErroredResidual = 1e300;

FormulaRecord make_record(const std::string& formula, const std::string& detail,
                          const TraceCheck& c, double tolerance) {
  return {formula, detail, c.lhs, c.rhs, c.residual, tolerance, c.residual <= tolerance};
}

FormulaRecord errored_record(const std::string& formula, const std::string& detail,
                             double tolerance, const std::string& message) {
  return {formula, "error in " + detail + ": " + message, 0.0, 0.0, kErroredResidual, tolerance,
          false};
}

template <class Fn>
void add_record(VerificationReport& rep, const std::string& formula, const std::string& detail,
                double tolerance, Fn&& compute) {
  try {
    rep.records.push_back(make_record(formula, detail, compute(), tolerance));
  } catch (const Error& e) {
    rep.records.push_back(errored_record(formula, detail, tolerance, e.what()));
  }
}

std::string fmt_complex_detail(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

} // namespace

namespace {

RunArtifacts run_pipeline(const ExperimentConfig& config, bool verify) {
  config.validate();
  const LoadedPair pair = load_pair(config.pair_source);
  const AnalyticFunction f = parse_function(config.function_spec);

  RunArtifacts art;
  VerificationReport& rep = art.report;
  rep.config = config;
  rep.environment["library"] = "kreinshift 0.1.0";
  rep.environment["eigen"] = fmt_int(EIGEN_WORLD_VERSION) + "." + fmt_int(EIGEN_MAJOR_VERSION) +
                             "." + fmt_int(EIGEN_MINOR_VERSION);
  rep.environment["threads"] = fmt_int(thread_cap());

  const ContractionPath path = pair.is_dissipative()
                                   ? ContractionPath(cayley(pair.dissipative->first),
                                                     cayley(pair.dissipative->second))
                                   : *pair.contractions;
  const bool strict = path.t0().is_strict() && path.t1().is_strict();
  rep.diagnostics["delta_nuclear"] = path.delta_nuclear();
  rep.diagnostics["strict_pair"] = strict ? 1.0 : 0.0;

  // Canonical shift function: direct power-trace route when strict, the
  // regularization ladder otherwise.
  const SpectralShiftFunction xi =
      strict ? xi_fourier(path, config.truncation, config.grid)
             : xi_fourier_extrapolated(path.t0(), path.t1(), config.truncation, config.r_ladder,
                                       config.grid);
  art.xi = xi;

  const ImSignStats st = im_sign_stats(xi);
  rep.diagnostics["xi_im_frac_positive"] = st.frac_positive;
  rep.diagnostics["xi_im_frac_negative"] = st.frac_negative;
  rep.diagnostics["xi_im_max_abs"] = st.max_abs_im;
  // |c_k| <= max-norm^{k-1} delta_nuclear / (2 pi), so the tail beyond K sums
  // geometrically whenever both endpoint norms stay below 1.
  const double gamma = std::max(path.t0().norm(), path.t1().norm());
  if (gamma < 1.0) {
    rep.diagnostics["xi_tail_bound"] = path.delta_nuclear() *
                                       std::pow(gamma, config.truncation) /
                                       (2.0 * M_PI * (1.0 - gamma));
  }

  if (verify && strict) {
    try {
      const ScalarDensity nu = nu_density(path, config.grid, config.t_nodes);
      add_record(rep, "formsledlyaszha", "f=" + config.function_spec, config.tol_nu,
                 [&] { return trace_formula_nu(f, path, nu); });
      add_record(rep, "zavfo", "f=" + config.function_spec + " xi=from-nu", config.tol_xi_dual,
                 [&] {
                   const SpectralShiftFunction xi_nu = xi_from_nu(nu, config.truncation);
                   double agree = 0.0;
                   for (int k = 1; k <= config.truncation; ++k)
                     agree = std::max(agree, std::abs(xi_nu.coefficient(k) - xi.coefficient(k)));
                   rep.diagnostics["dual_agreement_max"] = agree;
                   return verify_trace_formula_xi(f, path, xi_nu);
                 });
    } catch (const Error& e) {
      rep.records.push_back(
          errored_record("formsledlyaszha", "nu-density", config.tol_nu, e.what()));
    }
    add_record(rep, "T-l", "f=" + config.function_spec, config.tol_xi,
               [&] { return verify_trace_formula_xi(f, path, xi); });
  } else if (verify) {
    add_record(rep, "T-l", "f=" + config.function_spec + " xi=extrapolated",
               config.tol_xi_regularized, [&] { return verify_trace_formula_xi(f, path, xi); });
  }

  if (pair.is_dissipative()) {
    const DissipativeOperator& l0 = pair.dissipative->first;
    const DissipativeOperator& l1 = pair.dissipative->second;
    const std::vector<double> t_grid =
        symmetric_geometric_grid(config.t_min, config.t_max, config.t_points);
    const OmegaFunction omega = omega_from_xi(xi, t_grid);
    art.omega = omega;
    rep.diagnostics["weight_integral"] = omega.weight_integral();
    if (verify) {
      for (Complex lambda : config.lambdas)
        add_record(rep, "fsleddis", "lambda=" + fmt_complex_detail(lambda),
                   config.tol_dissipative,
                   [&] { return resolvent_trace_check(l0, l1, lambda, omega); });
      add_record(rep, "sledrraya", "g=" + config.function_spec, config.tol_dissipative,
                 [&] { return halfplane_trace_check(f, l0, l1, omega); });
    }
  }

  return art;
}

} // namespace

RunArtifacts execute(const ExperimentConfig& config) { return run_pipeline(config, true); }

RunArtifacts compute_artifacts(const ExperimentConfig& config) {
  return run_pipeline(config, false);
}

// ----------------------------------------------------------------- reporting

namespace {

void append_complex_fields(std::ostringstream& os, const char* prefix, Complex z) {
  os << "\"" << prefix << "_re\": " << fmt_double(z.real()) << ", \"" << prefix
     << "_im\": " << fmt_double(z.imag());
}

} // namespace

std::string report_to_json(const VerificationReport& report, const std::string& timestamp) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"timestamp\": \"" << json_escape(timestamp) << "\",\n";

  os << "  \"environment\": {";
  bool first = true;
  for (const auto& [k, v] : report.environment) {
    os << (first ? "\n" : ",\n") << "    \"" << json_escape(k) << "\": \"" << json_escape(v)
       << "\"";
    first = false;
  }
  os << "\n  },\n";

  const ExperimentConfig& c = report.config;
  os << "  \"config\": {\n";
  os << "    \"pair_source\": \"" << json_escape(c.pair_source) << "\",\n";
  os << "    \"function_spec\": \"" << json_escape(c.function_spec) << "\",\n";
  os << "    \"grid\": " << c.grid << ",\n";
  os << "    \"t_nodes\": " << c.t_nodes << ",\n";
  os << "    \"truncation\": " << c.truncation << ",\n";
  os << "    \"r_ladder\": [";
  for (std::size_t i = 0; i < c.r_ladder.size(); ++i)
    os << (i ? ", " : "") << fmt_double(c.r_ladder[i]);
  os << "],\n";
  os << "    \"lambdas\": [";
  for (std::size_t i = 0; i < c.lambdas.size(); ++i) {
    os << (i ? ", " : "") << "{";
    append_complex_fields(os, "lambda", c.lambdas[i]);
    os << "}";
  }
  os << "],\n";
  os << "    \"t_max\": " << fmt_double(c.t_max) << ",\n";
  os << "    \"t_min\": " << fmt_double(c.t_min) << ",\n";
  os << "    \"t_points\": " << c.t_points << ",\n";
  os << "    \"tol_nu\": " << fmt_double(c.tol_nu) << ",\n";
  os << "    \"tol_xi\": " << fmt_double(c.tol_xi) << ",\n";
  os << "    \"tol_xi_dual\": " << fmt_double(c.tol_xi_dual) << ",\n";
  os << "    \"tol_xi_regularized\": " << fmt_double(c.tol_xi_regularized) << ",\n";
  os << "    \"tol_dissipative\": " << fmt_double(c.tol_dissipative) << ",\n";
  os << "    \"out_dir\": \"" << json_escape(c.out_dir) << "\"\n";
  os << "  },\n";

  os << "  \"records\": [";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const FormulaRecord& r = report.records[i];
    os << (i ? ",\n" : "\n") << "    {\"formula\": \"" << json_escape(r.formula)
       << "\", \"detail\": \"" << json_escape(r.detail) << "\", ";
    append_complex_fields(os, "lhs", r.lhs);
    os << ", ";
    append_complex_fields(os, "rhs", r.rhs);
    os << ", \"residual\": " << fmt_double(r.residual)
       << ", \"tolerance\": " << fmt_double(r.tolerance)
       << ", \"pass\": " << (r.pass ? "true" : "false") << "}";
  }
  os << "\n  ],\n";

  os << "  \"diagnostics\": {";
  first = true;
  for (const auto& [k, v] : report.diagnostics) {
    os << (first ? "\n" : ",\n") << "    \"" << json_escape(k) << "\": " << fmt_double(v);
    first = false;
  }
  os << "\n  },\n";

  os << "  \"all_pass\": " << (report.all_pass() ? "true" : "false") << "\n";
  os << "}\n";
  return os.str();
}

VerificationReport report_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("report JSON: ") + e.what());
  }
  try {
    VerificationReport rep;
    for (auto it = j.at("environment").begin(); it != j.at("environment").end(); ++it)
      rep.environment[it.key()] = it.value().get<std::string>();
    const auto& c = j.at("config");
    rep.config.pair_source = c.at("pair_source").get<std::string>();
    rep.config.function_spec = c.at("function_spec").get<std::string>();
    rep.config.grid = c.at("grid").get<int>();
    rep.config.t_nodes = c.at("t_nodes").get<int>();
    rep.config.truncation = c.at("truncation").get<int>();
    rep.config.r_ladder = c.at("r_ladder").get<std::vector<double>>();
    rep.config.lambdas.clear();
    for (const auto& l : c.at("lambdas"))
      rep.config.lambdas.emplace_back(l.at("lambda_re").get<double>(),
                                      l.at("lambda_im").get<double>());
    rep.config.t_max = c.at("t_max").get<double>();
    rep.config.t_min = c.at("t_min").get<double>();
    rep.config.t_points = c.at("t_points").get<int>();
    rep.config.tol_nu = c.at("tol_nu").get<double>();
    rep.config.tol_xi = c.at("tol_xi").get<double>();
    rep.config.tol_xi_dual = c.at("tol_xi_dual").get<double>();
    rep.config.tol_xi_regularized = c.at("tol_xi_regularized").get<double>();
    rep.config.tol_dissipative = c.at("tol_dissipative").get<double>();
    rep.config.out_dir = c.at("out_dir").get<std::string>();
    for (const auto& r : j.at("records")) {
      FormulaRecord rec;
      rec.formula = r.at("formula").get<std::string>();
      rec.detail = r.at("detail").get<std::string>();
      rec.lhs = {r.at("lhs_re").get<double>(), r.at("lhs_im").get<double>()};
      rec.rhs = {r.at("rhs_re").get<double>(), r.at("rhs_im").get<double>()};
      rec.residual = r.at("residual").get<double>();
      rec.tolerance = r.at("tolerance").get<double>();
      rec.pass = r.at("pass").get<bool>();
      rep.records.push_back(std::move(rec));
    }
    for (auto it = j.at("diagnostics").begin(); it != j.at("diagnostics").end(); ++it)
      rep.diagnostics[it.key()] = it.value().get<double>();
    return rep;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("report JSON fields: ") + e.what());
  }
}

std::string render_report(const VerificationReport& report) {
  std::ostringstream os;
  os << "pair:     " << report.config.pair_source << "\n";
  os << "function: " << report.config.function_spec << "\n";
  os << "grid M=" << report.config.grid << "  t-nodes=" << report.config.t_nodes
     << "  truncation K=" << report.config.truncation << "\n\n";
  for (const FormulaRecord& r : report.records) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-16s %-28s residual %-13.6g tol %-10.3g %s\n",
                  r.formula.c_str(), r.detail.c_str(), r.residual, r.tolerance,
                  r.pass ? "PASS" : "FAIL");
    os << buf;
  }
  os << "\ndiagnostics:\n";
  for (const auto& [k, v] : report.diagnostics) {
    char buf[120];
    std::snprintf(buf, sizeof(buf), "  %-24s %.10g\n", k.c_str(), v);
    os << buf;
  }
  os << "\noverall: " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

EmitPaths emit_artifacts(const std::string& out_dir, const SpectralShiftFunction& xi,
                         const OmegaFunction* omega) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  EmitPaths paths;

  {
    std::ostringstream os;
    os << "theta,re_xi,im_xi\n";
    const int m = xi.grid_size();
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m);
      const Complex v = xi.samples()[static_cast<std::size_t>(j)];
      os << fmt_double(theta) << "," << fmt_double(v.real()) << "," << fmt_double(v.imag())
         << "\n";
    }
    paths.xi_csv = (dir / "xi.csv").string();
    write_text_file(paths.xi_csv, os.str());
  }

  {
    std::ostringstream os;
    os << "[\n";
    for (int k = 1; k <= xi.truncation(); ++k) {
      const Complex c = xi.coefficient(k);
      os << "  {\"k\": " << k << ", \"re\": " << fmt_double(c.real())
         << ", \"im\": " << fmt_double(c.imag()) << "}" << (k < xi.truncation() ? "," : "")
         << "\n";
    }
    os << "]\n";
    paths.coeffs_json = (dir / "xi_coeffs.json").string();
    write_text_file(paths.coeffs_json, os.str());
  }

  if (omega != nullptr) {
    std::ostringstream os;
    os << "t,re_omega,im_omega\n";
    for (std::size_t i = 0; i < omega->t_grid().size(); ++i) {
      const Complex v = omega->samples()[i];
      os << fmt_double(omega->t_grid()[i]) << "," << fmt_double(v.real()) << ","
         << fmt_double(v.imag()) << "\n";
    }
    paths.omega_csv = (dir / "omega.csv").string();
    write_text_file(*paths.omega_csv, os.str());
  }

  return paths;
}

EmitPaths emit(const VerificationReport& report, const SpectralShiftFunction& xi,
               const OmegaFunction* omega) {
  EmitPaths paths = emit_artifacts(report.config.out_dir, xi, omega);
  paths.report_json =
      (std::filesystem::path(report.config.out_dir) / "report.json").string();
  write_text_file(paths.report_json, report_to_json(report, utc_timestamp()));
  return paths;
}

VerificationReport run(const ExperimentConfig& config) {
  RunArtifacts art = execute(config);
  emit(art.report, *art.xi, art.omega ? &*art.omega : nullptr);
  return art.report;
}

} // namespace kreinshift
