// puritylens: numerical toolkit for detecting system-environment
// correlations from the time derivative of the reduced purity.
//
// Subcommands:
//   figure1         truncated-construction purity curves (analytic + simulated)
//   verify          randomized verification of the purity bound chain
//   evolve          evolve a user-supplied bipartite system from a JSON config
//   counterexample  variance and difference-quotient diagnostics
//
// Exit codes: 0 success, 1 verification violations, 2 usage/config errors,
// 3 numerical or I/O failures.

#include <CLI11.hpp>
#include <json.hpp>

#include <puritylens/counterexample.hpp>
#include <puritylens/report.hpp>
#include <puritylens/verify.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace puritylens;
using json = nlohmann::json;

// Raised during the configuration phase of a command; mapped to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> make_grid(double t_min, double t_max, long samples) {
  if (samples < 1) throw UsageError("samples must be >= 1");
  if (samples == 1) return {t_min};
  if (!(t_max > t_min)) {
    throw UsageError("t_max must exceed t_min when samples > 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(samples));
  const double step = (t_max - t_min) / static_cast<double>(samples - 1);
  for (long i = 0; i < samples; ++i) {
    grid[static_cast<std::size_t>(i)] = t_min + step * static_cast<double>(i);
  }
  grid.back() = t_max;  // land exactly on the endpoint
  return grid;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << body;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_plot_script(const std::string& script_path,
                       const std::string& csv_path,
                       const std::vector<std::pair<int, std::string>>& series) {
  std::ostringstream body;
  body << "# gnuplot script generated by puritylens\n"
       << "set datafile separator ','\n"
       << "set xlabel 'time'\n"
       << "set grid\n"
       << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i > 0) body << ", \\\n     ";
    body << "'" << csv_path << "' using 1:" << series[i].first
         << " with lines title '" << series[i].second << "'";
  }
  body << "\n";
  write_text_file(script_path, body.str());
}

// ---------------------------------------------------------------- figure1

struct Figure1Options {
  std::string case_tag;
  int terms = 0;  // 0 -> per-case default
  double t_min = 0.0;
  double t_max = 30.0;
  long samples = 3000;
  std::string out;
  std::string plot_script;
};

int run_figure1(const Figure1Options& opt) {
  if (opt.case_tag != "a" && opt.case_tag != "b") {
    throw UsageError("--case must be 'a' or 'b', got '" + opt.case_tag + "'");
  }
  const bool case_a = opt.case_tag == "a";
  CounterexampleConfig cfg;
  cfg.rule = case_a ? EnergyRule::linear : EnergyRule::geometric;
  cfg.truncation = opt.terms > 0 ? opt.terms : (case_a ? 8 : 24);
  cfg.renormalize = true;
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const std::vector<double> grid = make_grid(opt.t_min, opt.t_max, opt.samples);
  const std::string out_path =
      opt.out.empty() ? "figure1_" + opt.case_tag + ".csv" : opt.out;

  const bool with_simulation = 4L * cfg.truncation <= dimension_guard();
  std::vector<std::string> header = {"t", "purity_analytic"};
  if (with_simulation) header.push_back("purity_simulated");

  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    rows.push_back({t, analytic_purity(cfg, t)});
  }
  if (with_simulation) {
    const PuritySeries sim = simulate_truncated(cfg, grid);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].push_back(sim.values[i]);
    }
  }
  write_csv(out_path, header, rows);
  if (!opt.plot_script.empty()) {
    std::vector<std::pair<int, std::string>> series = {{2, "analytic"}};
    if (with_simulation) series.push_back({3, "simulated"});
    write_plot_script(opt.plot_script, out_path, series);
  }
  std::cout << "figure1 case " << opt.case_tag << ": wrote " << rows.size()
            << " rows (terms = " << cfg.truncation
            << (with_simulation ? ", simulated column included"
                                : ", simulated column skipped by guard")
            << ") to " << out_path << "\n";
  return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyOptions {
  std::vector<int> dims_s = {2, 3, 4};
  std::vector<int> dims_e = {2, 3, 4};
  long trials = 500;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  int threads = 1;
  std::string out = "verify_report.json";
};

int run_verify(const VerifyOptions& opt) {
  if (opt.trials < 1) throw UsageError("--trials must be >= 1");
  if (opt.threads < 1) throw UsageError("--threads must be >= 1");
  if (opt.dims_s.empty() || opt.dims_e.empty()) {
    throw UsageError("--ds/--de must list at least one dimension");
  }
  for (int d : opt.dims_s) {
    if (d < 1) throw UsageError("--ds entries must be >= 1");
  }
  for (int d : opt.dims_e) {
    if (d < 1) throw UsageError("--de entries must be >= 1");
  }
  if (!(opt.tolerance > 0.0)) throw UsageError("--tolerance must be > 0");

  SuiteConfig cfg;
  cfg.dims_s = opt.dims_s;
  cfg.dims_e = opt.dims_e;
  cfg.trials = opt.trials;
  cfg.seed = opt.seed;
  cfg.tolerance = opt.tolerance;
  cfg.threads = opt.threads;

  const VerificationSummary summary = run_suite(cfg);
  write_text_file(opt.out, to_json(summary));
  std::cout << "verify: " << summary.trials << " trials, seed " << summary.seed
            << ": " << summary.violations
            << " violations (worst slack " << format_double(summary.worst_slack)
            << "); linear-form failures " << summary.ineq_linear.violations
            << "; report " << opt.out << "\n";
  return summary.violations > 0 ? 1 : 0;
}

// ----------------------------------------------------------------- evolve

struct EvolveOptions {
  std::string config_path;
  std::string out = "evolve.csv";
  std::string plot_script;
};

double get_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw UsageError("config field '" + field + "' must be a number");
  }
  return j[field].get<double>();
}

long get_integer(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer()) {
    throw UsageError("config field '" + field + "' must be an integer");
  }
  return j[field].get<long>();
}

Matrix parse_matrix(const json& j, const std::string& field, Index dim) {
  if (!j.contains(field)) {
    throw UsageError("config field '" + field + "' is missing");
  }
  const json& m = j[field];
  if (!m.is_array() || static_cast<Index>(m.size()) != dim) {
    throw UsageError("config field '" + field + "' must be an array of " +
                     std::to_string(dim) + " rows");
  }
  Matrix out(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    const json& row = m[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != dim) {
      throw UsageError("config field '" + field + "', row " +
                       std::to_string(r) + ": expected " +
                       std::to_string(dim) + " entries");
    }
    for (Index c = 0; c < dim; ++c) {
      const json& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number()) {
        throw UsageError("config field '" + field + "', entry (" +
                         std::to_string(r) + "," + std::to_string(c) +
                         "): expected a [re, im] pair");
      }
      out(r, c) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return out;
}

int run_evolve(const EvolveOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) {
    throw UsageError("cannot open config file '" + opt.config_path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config parse error: " + std::string(e.what()));
  }
  const long d_s = get_integer(j, "d_s");
  const long d_e = get_integer(j, "d_e");
  if (d_s < 1 || d_e < 1) {
    throw UsageError("config fields 'd_s'/'d_e' must be >= 1");
  }
  if (d_s * d_e > dimension_guard()) {
    throw UsageError("total dimension " + std::to_string(d_s * d_e) +
                     " exceeds the guard of " +
                     std::to_string(dimension_guard()));
  }
  const Index dim = static_cast<Index>(d_s * d_e);
  const Matrix rho_raw = parse_matrix(j, "rho_tot", dim);
  const Matrix h_s_raw = parse_matrix(j, "h_s", static_cast<Index>(d_s));
  const Matrix h_e_raw = parse_matrix(j, "h_e", static_cast<Index>(d_e));
  const Matrix h_int_raw = parse_matrix(j, "h_int", dim);
  if (!j.contains("time_grid") || !j["time_grid"].is_object()) {
    throw UsageError("config field 'time_grid' must be an object");
  }
  const json& tg = j["time_grid"];
  const double t_min = get_number(tg, "t_min");
  const double t_max = get_number(tg, "t_max");
  const long samples = get_integer(tg, "samples");
  const std::vector<double> grid = make_grid(t_min, t_max, samples);
  double fd_step = 1e-4;
  if (j.contains("fd_step")) fd_step = get_number(j, "fd_step");
  bool richardson = true;
  if (j.contains("richardson")) {
    if (!j["richardson"].is_boolean()) {
      throw UsageError("config field 'richardson' must be a boolean");
    }
    richardson = j["richardson"].get<bool>();
  }

  // Value-level validation from here on belongs to the compute phase
  // (Hermiticity/positivity failures exit with 3, not 2).
  const BipartiteState state(DensityOperator(rho_raw),
                             static_cast<Index>(d_s), static_cast<Index>(d_e));
  const HamiltonianDecomposition h(h_s_raw, h_e_raw, h_int_raw);
  const Matrix h_total = assemble_total(h);

  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    const BipartiteState evolved = evolve(state, h_total, t);
    const DensityOperator rho_s =
        partial_trace(evolved, TraceSide::over_environment);
    const CorrelationOperator cor = correlation_operator(evolved);
    rows.push_back({t, purity(rho_s),
                    purity_derivative_analytic(evolved, h),
                    purity_derivative_fd(evolved, h, fd_step, richardson),
                    mutual_information(evolved),
                    trace_norm(cor.matrix, /*hermitian=*/true)});
  }
  const std::vector<std::string> header = {
      "t", "purity", "purity_derivative_analytic", "purity_derivative_fd",
      "mutual_information", "corr_trace_norm"};
  write_csv(opt.out, header, rows);
  if (!opt.plot_script.empty()) {
    write_plot_script(opt.plot_script, opt.out,
                      {{2, "purity"}, {5, "mutual information"}});
  }
  std::cout << "evolve: wrote " << rows.size() << " rows to " << opt.out
            << "\n";
  return 0;
}

// --------------------------------------------------------- counterexample

struct CounterexampleOptions {
  int k_max = 4;
  int terms = 0;  // 0 -> max(32, required)
  int nmax_a = 40;
  int nmax_b = 6;
  std::string out = "counterexample.txt";
};

void append_variance_table(std::ostringstream& body,
                           const std::vector<VarianceRow>& rows) {
  body << "variance of the total energy by truncation N:\n";
  body << "   N  mean              variance\n";
  char line[128];
  for (const VarianceRow& r : rows) {
    std::snprintf(line, sizeof(line), "  %2d  %.9e  %.9e\n", r.truncation,
                  r.mean, r.variance);
    body << line;
  }
}

void append_probe_table(std::ostringstream& body,
                        const std::vector<ProbeRow>& rows) {
  body << "difference quotients (P(h) - P(0)) / h at probe times h = 25^-k:\n";
  body << "   k  h                 quotient\n";
  char line[128];
  for (const ProbeRow& r : rows) {
    std::snprintf(line, sizeof(line), "  %2d  %.9e  %.9e\n", r.k, r.h,
                  r.quotient);
    body << line;
  }
}

std::string verdict_smooth(const std::vector<ProbeRow>& rows) {
  bool decreasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::fabs(rows[i].quotient) >= std::fabs(rows[i - 1].quotient)) {
      decreasing = false;
    }
  }
  char buf[192];
  if (decreasing && std::fabs(rows.back().quotient) < 1e-3) {
    std::snprintf(buf, sizeof(buf),
                  "verdict: quotients decay toward zero (|q| = %.3e at k = %d);"
                  " the purity is differentiable at t = 0.",
                  std::fabs(rows.back().quotient), rows.back().k);
  } else {
    std::snprintf(buf, sizeof(buf),
                  "verdict: quotient decay not observed; inconclusive.");
  }
  return buf;
}

std::string verdict_rough(const std::vector<ProbeRow>& rows) {
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::fabs(rows[i].quotient) <= std::fabs(rows[i - 1].quotient)) {
      increasing = false;
    }
  }
  char buf[224];
  if (increasing && std::fabs(rows.front().quotient) >= 2.0) {
    std::snprintf(buf, sizeof(buf),
                  "verdict: quotients grow without bound (|q| = %.3e at k = 1, "
                  "%.3e at k = %d); the purity has no derivative at t = 0.",
                  std::fabs(rows.front().quotient),
                  std::fabs(rows.back().quotient), rows.back().k);
  } else {
    std::snprintf(buf, sizeof(buf),
                  "verdict: quotient growth not observed; inconclusive.");
  }
  return buf;
}

int run_counterexample(const CounterexampleOptions& opt) {
  if (opt.k_max < 1 || opt.k_max > 12) {
    throw UsageError("--kmax must lie in [1, 12]");
  }
  if (opt.nmax_a < 1 || opt.nmax_b < 1) {
    throw UsageError("--nmax-a/--nmax-b must be >= 1");
  }
  if (opt.nmax_b > 150) {
    throw UsageError("--nmax-b is capped at 150 (geometric energies overflow)");
  }
  const int required = probe_terms_required(opt.k_max);
  const int terms = opt.terms > 0 ? opt.terms : std::max(32, required);
  if (terms < required) {
    throw UsageError("--terms must be >= " + std::to_string(required) +
                     " for --kmax " + std::to_string(opt.k_max));
  }

  CounterexampleConfig cfg_a;
  cfg_a.rule = EnergyRule::linear;
  CounterexampleConfig cfg_b;
  cfg_b.rule = EnergyRule::geometric;

  std::ostringstream body;
  body << "correlation counterexample diagnostics\n"
       << "config: kmax = " << opt.k_max << ", probe terms = " << terms
       << ", variance truncations: case a up to N = " << opt.nmax_a
       << ", case b up to N = " << opt.nmax_b << "\n\n";

  body << "[case a] energy rule h_n = n/4, weights p_n = 2^-n renormalized\n";
  append_variance_table(body, variance_series(cfg_a, opt.nmax_a));
  const auto probe_a = nondiff_probe(cfg_a, terms, opt.k_max);
  append_probe_table(body, probe_a);
  const std::string verdict_a = verdict_smooth(probe_a);
  body << verdict_a << "\n\n";

  body << "[case b] energy rule h_n = 25^n pi/4, weights p_n = 2^-n "
          "renormalized\n";
  append_variance_table(body, variance_series(cfg_b, opt.nmax_b));
  const auto probe_b = nondiff_probe(cfg_b, terms, opt.k_max);
  append_probe_table(body, probe_b);
  char cond[160];
  std::snprintf(cond, sizeof(cond),
                "weierstrass condition: a*b = %.4g %s 1 + 3*pi/2 = %.6g\n",
                0.25 * 25,
                weierstrass_nondifferentiable(0.25, 25) ? ">" : "<=",
                1.0 + 1.5 * 3.14159265358979323846);
  body << cond;
  const std::string verdict_b = verdict_rough(probe_b);
  body << verdict_b << "\n";

  write_text_file(opt.out, body.str());
  std::cout << "case a " << verdict_a << "\n";
  std::cout << "case b " << verdict_b << "\n";
  std::cout << "counterexample: report written to " << opt.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("PURITYLENS_MAX_DIM")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || parsed < 1) {
      std::cerr << "PURITYLENS_MAX_DIM must be a positive integer, got '"
                << env << "'\n";
      return 2;
    }
    set_dimension_guard(parsed);
  }

  CLI::App app{"correlation detection from reduced-purity dynamics"};
  app.require_subcommand(1);

  Figure1Options fig;
  CLI::App* fig_cmd = app.add_subcommand(
      "figure1", "truncated-construction purity curves");
  fig_cmd->add_option("--case", fig.case_tag, "energy rule: a or b")
      ->required();
  fig_cmd->add_option("--terms", fig.terms, "truncation N (default 8/24)");
  fig_cmd->add_option("--tmin", fig.t_min, "grid start (default 0)");
  fig_cmd->add_option("--tmax", fig.t_max, "grid end (default 30)");
  fig_cmd->add_option("--samples", fig.samples, "grid points (default 3000)");
  fig_cmd->add_option("--out", fig.out, "output CSV path");
  fig_cmd->add_option("--plot-script", fig.plot_script,
                      "also emit a gnuplot script here");

  VerifyOptions ver;
  CLI::App* ver_cmd =
      app.add_subcommand("verify", "randomized bound-chain verification");
  ver_cmd->add_option("--ds", ver.dims_s, "system dimensions (default 2 3 4)");
  ver_cmd->add_option("--de", ver.dims_e,
                      "environment dimensions (default 2 3 4)");
  ver_cmd->add_option("--trials", ver.trials, "trial count (default 500)");
  ver_cmd->add_option("--seed", ver.seed, "root seed (default 42)");
  ver_cmd->add_option("--tolerance", ver.tolerance,
                      "slack tolerance (default 1e-9)");
  ver_cmd->add_option("--threads", ver.threads, "worker threads (default 1)");
  ver_cmd->add_option("--out", ver.out, "report path (default verify_report.json)");

  EvolveOptions evo;
  CLI::App* evo_cmd =
      app.add_subcommand("evolve", "evolve a system described by a JSON config");
  evo_cmd->add_option("--config", evo.config_path, "JSON config path")
      ->required();
  evo_cmd->add_option("--out", evo.out, "output CSV path (default evolve.csv)");
  evo_cmd->add_option("--plot-script", evo.plot_script,
                      "also emit a gnuplot script here");

  CounterexampleOptions cex;
  CLI::App* cex_cmd = app.add_subcommand(
      "counterexample", "variance and difference-quotient diagnostics");
  cex_cmd->add_option("--kmax", cex.k_max, "probe scales 1..kmax (default 4)");
  cex_cmd->add_option("--terms", cex.terms,
                      "probe term count (default max(32, kmax+5))");
  cex_cmd->add_option("--nmax-a", cex.nmax_a,
                      "case-a variance truncations (default 40)");
  cex_cmd->add_option("--nmax-b", cex.nmax_b,
                      "case-b variance truncations (default 6)");
  cex_cmd->add_option("--out", cex.out,
                      "report path (default counterexample.txt)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*fig_cmd) return run_figure1(fig);
    if (*ver_cmd) return run_verify(ver);
    if (*evo_cmd) return run_evolve(evo);
    if (*cex_cmd) return run_counterexample(cex);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;  // unreachable with require_subcommand(1)
}
