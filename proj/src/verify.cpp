#include <puritylens/verify.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace puritylens {

namespace {

CheckStats stats_of(std::vector<double> values) {
  CheckStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  const std::size_t n = values.size();
  s.median = (n % 2 == 1) ? values[n / 2]
                          : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return s;
}

// Everything measured in one trial; aggregated in trial order afterwards.
struct TrialResult {
  BoundChainReport chain;
  double product_analytic = 0.0;
  double product_fd = 0.0;
  double pairing_lhs_mid = 0.0;
  double pairing_mid_rhs = 0.0;
};

TrialResult run_trial(const SuiteConfig& cfg, long trial) {
  SeededGenerator gen = SeededGenerator(cfg.seed).child(
      static_cast<std::uint64_t>(trial));
  const Index d_s = static_cast<Index>(
      cfg.dims_s[static_cast<std::size_t>(gen.uniform_int(
          0, static_cast<std::int64_t>(cfg.dims_s.size()) - 1))]);
  const Index d_e = static_cast<Index>(
      cfg.dims_e[static_cast<std::size_t>(gen.uniform_int(
          0, static_cast<std::int64_t>(cfg.dims_e.size()) - 1))]);

  TrialResult result;

  // Correlated instance for the bound chain.
  const BipartiteState correlated = random_correlated(gen, d_s, d_e);
  const HamiltonianDecomposition h(
      random_hermitian(gen, d_s, cfg.norm_cap),
      random_hermitian(gen, d_e, cfg.norm_cap),
      random_hermitian(gen, d_s * d_e, cfg.norm_cap));
  result.chain = bound_chain(correlated, h);
  result.chain.seed = cfg.seed;
  result.chain.trial = trial;

  // Product instance for the zero-derivative law.
  const DensityOperator rho_s = random_density(gen, d_s);
  const DensityOperator rho_e = random_density(gen, d_e);
  result.product_analytic = product_derivative_residual(rho_s, rho_e, h);
  result.product_fd = std::fabs(
      purity_derivative_fd(product_state(rho_s, rho_e), h, 1e-4, true));

  // Trace pairing on a generic (non-Hermitian) operator and a state.
  const Index d = d_s * d_e;
  const Matrix a = random_hermitian(gen, d, cfg.norm_cap) +
                   Complex(0.0, 1.0) * random_hermitian(gen, d, cfg.norm_cap);
  const TracePairing pairing =
      check_trace_pairing(a, random_density(gen, d).matrix());
  result.pairing_lhs_mid = pairing.product_norm - pairing.abs_trace;
  result.pairing_mid_rhs = pairing.norm_product - pairing.product_norm;
  return result;
}

}  // namespace

BoundChainReport bound_chain(const BipartiteState& state,
                             const HamiltonianDecomposition& h) {
  BoundChainReport r;
  r.d_s = state.d_s;
  r.d_e = state.d_e;
  r.p_prime = purity_derivative_analytic(state, h);

  const DensityOperator rho_s =
      partial_trace(state, TraceSide::over_environment);
  const CorrelationOperator cor = correlation_operator(state);
  const Matrix comm = commutator(h.h_int, cor.matrix);

  const double rho_s_norm = operator_norm(rho_s.matrix(), /*hermitian=*/true);
  // The commutator is anti-Hermitian, so the general singular-value path is
  // mandatory here; symmetrizing would annihilate it.
  const double comm_trace_norm = trace_norm(comm, /*hermitian=*/false);
  const double hint_norm = operator_norm(h.h_int, /*hermitian=*/true);

  r.corr_trace_norm = trace_norm(cor.matrix, /*hermitian=*/true);
  r.mutual_information = mutual_information(state);

  r.bound_a = 2.0 * rho_s_norm * comm_trace_norm;
  r.bound_b = 4.0 * hint_norm * r.corr_trace_norm;
  r.bound_c = 8.0 * hint_norm * r.mutual_information;

  r.slack_a = r.bound_a - std::fabs(r.p_prime);
  r.slack_ab = r.bound_b - r.bound_a;
  r.slack_bc = r.bound_c - r.bound_b;
  r.ineq_linear_slack = 2.0 * r.mutual_information - r.corr_trace_norm;
  r.ineq_quadratic_slack =
      2.0 * r.mutual_information - r.corr_trace_norm * r.corr_trace_norm;
  return r;
}

double product_derivative_residual(const DensityOperator& rho_s,
                                   const DensityOperator& rho_e,
                                   const HamiltonianDecomposition& h) {
  return std::fabs(purity_derivative_analytic(product_state(rho_s, rho_e), h));
}

TracePairing check_trace_pairing(const Matrix& a, const Matrix& rho) {
  if (a.rows() != a.cols() || rho.rows() != rho.cols() ||
      a.rows() != rho.rows()) {
    throw DimensionError("check_trace_pairing: operands must be square and "
                         "of equal dimension");
  }
  const Matrix product = a * rho;
  TracePairing p;
  p.abs_trace = std::abs(product.trace());
  p.product_norm = trace_norm(product, /*hermitian=*/false);
  p.norm_product = operator_norm(a, /*hermitian=*/false) *
                   trace_norm(rho, /*hermitian=*/false);
  return p;
}

VerificationSummary run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) {
    throw InvariantError("run_suite: trials must be >= 1");
  }
  if (cfg.dims_s.empty() || cfg.dims_e.empty()) {
    throw InvariantError("run_suite: dimension lists must be non-empty");
  }
  for (int d : cfg.dims_s) {
    if (d < 1) throw InvariantError("run_suite: system dims must be >= 1");
  }
  for (int d : cfg.dims_e) {
    if (d < 1) throw InvariantError("run_suite: environment dims must be >= 1");
  }
  if (cfg.threads < 1) {
    throw InvariantError("run_suite: threads must be >= 1");
  }

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  const int threads = static_cast<int>(
      std::min<long>(cfg.threads, cfg.trials));
  if (threads <= 1) {
    for (long i = 0; i < cfg.trials; ++i) {
      results[static_cast<std::size_t>(i)] = run_trial(cfg, i);
    }
  } else {
    // Trials are independent and indexed; any partition yields the same
    // summary because aggregation below walks results in trial order.
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    std::atomic<long> next{0};
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const long i = next.fetch_add(1);
          if (i >= cfg.trials) return;
          results[static_cast<std::size_t>(i)] = run_trial(cfg, i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  VerificationSummary s;
  s.seed = cfg.seed;
  s.trials = cfg.trials;
  s.tolerance = cfg.tolerance;
  s.threads = cfg.threads;
  s.dims_s = cfg.dims_s;
  s.dims_e = cfg.dims_e;

  std::vector<double> slack_a, slack_ab, slack_bc, lin, quad, proda, prodfd,
      pair1, pair2, level_p, level_a, level_b, level_c;
  for (const TrialResult& r : results) {
    slack_a.push_back(r.chain.slack_a);
    slack_ab.push_back(r.chain.slack_ab);
    slack_bc.push_back(r.chain.slack_bc);
    lin.push_back(r.chain.ineq_linear_slack);
    quad.push_back(r.chain.ineq_quadratic_slack);
    proda.push_back(r.product_analytic);
    prodfd.push_back(r.product_fd);
    pair1.push_back(r.pairing_lhs_mid);
    pair2.push_back(r.pairing_mid_rhs);
    level_p.push_back(std::fabs(r.chain.p_prime));
    level_a.push_back(r.chain.bound_a);
    level_b.push_back(r.chain.bound_b);
    level_c.push_back(r.chain.bound_c);
  }

  const double tol = cfg.tolerance;
  auto count_below = [](const std::vector<double>& v, double floor) {
    long c = 0;
    for (double x : v) {
      if (x < floor) ++c;
    }
    return c;
  };

  s.chain_p_le_a = {count_below(slack_a, -tol), stats_of(slack_a)};
  s.chain_a_le_b = {count_below(slack_ab, -tol), stats_of(slack_ab)};
  s.chain_b_le_c = {count_below(slack_bc, -tol), stats_of(slack_bc)};
  s.ineq_linear = {count_below(lin, -tol), stats_of(lin)};
  s.ineq_quadratic = {count_below(quad, -tol), stats_of(quad)};
  long proda_viol = 0, prodfd_viol = 0;
  for (double r : proda) {
    if (r > cfg.analytic_tolerance) ++proda_viol;
  }
  for (double r : prodfd) {
    if (r > cfg.fd_tolerance) ++prodfd_viol;
  }
  s.product_analytic = {proda_viol, stats_of(proda)};
  s.product_fd = {prodfd_viol, stats_of(prodfd)};
  s.pairing_lhs_mid = {count_below(pair1, -tol), stats_of(pair1)};
  s.pairing_mid_rhs = {count_below(pair2, -tol), stats_of(pair2)};

  s.level_abs_p_prime = stats_of(level_p);
  s.level_bound_a = stats_of(level_a);
  s.level_bound_b = stats_of(level_b);
  s.level_bound_c = stats_of(level_c);

  s.violations = s.chain_p_le_a.violations + s.chain_a_le_b.violations +
                 s.ineq_quadratic.violations + s.product_analytic.violations +
                 s.product_fd.violations + s.pairing_lhs_mid.violations +
                 s.pairing_mid_rhs.violations;
  s.worst_slack = std::min({s.chain_p_le_a.stats.min, s.chain_a_le_b.stats.min,
                            s.ineq_quadratic.stats.min,
                            s.pairing_lhs_mid.stats.min,
                            s.pairing_mid_rhs.stats.min});

  s.notes.push_back(
      "violations aggregates the proof-backed checks: chain links "
      "|P'| <= bound_a <= bound_b, the product-state zero-derivative law, "
      "the trace pairing, and the quadratic trace-norm/mutual-information "
      "inequality.");
  if (s.chain_b_le_c.violations > 0 || s.ineq_linear.violations > 0) {
    s.notes.push_back(
        "the linear inequality ||rho_cor||_1 <= 2 I (and with it the "
        "bound_b <= bound_c link) fails on " +
        std::to_string(s.ineq_linear.violations) + " of " +
        std::to_string(s.trials) +
        " instances; the quadratic form ||rho_cor||_1^2 <= 2 I holds on "
        "all of them.  Both are reported; only the quadratic form enters "
        "the violation aggregate.");
  }
  return s;
}

}  // namespace puritylens
