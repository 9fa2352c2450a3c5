// Acceptance gate: `acceptance <n>` checks numbered criterion n and prints a
// single [PASS]/[FAIL] line with the measured quantities; the exit code
// mirrors the verdict.  Criteria:
//   1  low-energy family purity curve: closed form at t = 0, flat derivative
//   2  Weierstrass-form landmarks P(0) = 1/3, P(1) = 1/6
//   3  full unitary simulation equals the analytic purity pointwise
//   4  product states: both derivative estimators vanish on every instance
//   5  bound chain and trace-norm/information inequalities on random states
//   6  analytic vs Richardson-extrapolated derivative cross-check
//   7  truncated energy-variance diagnostics for both energy rules
//   8  difference-quotient probe separating smooth from rough purity
//   9  sampler and evolution invariants in bulk

#include <puritylens/counterexample.hpp>
#include <puritylens/verify.hpp>

#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

using namespace puritylens;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return out;
}

double closed_initial_purity(int n) {
  const double raw = (1.0 - std::ldexp(1.0, -2 * n)) / 3.0;
  const double z = 1.0 - std::ldexp(1.0, -n);
  return raw / (z * z);
}

// 1. Low-energy family (weights 2^-n renormalized, energies n/4, N = 8) on a
// 3000-point grid over [0, 30]: initial purity matches the closed geometric
// form within 1e-12 and the Richardson difference quotient at t = 0 stays
// below 1e-6 (the curve starts flat).  Budget 5 s.
Outcome criterion_1() {
  const Stopwatch timer;
  CounterexampleConfig cfg;
  cfg.rule = EnergyRule::linear;
  cfg.truncation = 8;

  double curve_min = 1.0, curve_max = 0.0;
  for (double t : linspace(0.0, 30.0, 3000)) {
    const double p = analytic_purity(cfg, t);
    curve_min = std::min(curve_min, p);
    curve_max = std::max(curve_max, p);
  }
  const double p0_err =
      std::fabs(analytic_purity(cfg, 0.0) - closed_initial_purity(8));
  const double p0_state_err =
      std::fabs(purity(build_initial_state(cfg).rho_tot) -
                closed_initial_purity(8));

  const BipartiteState state = build_initial_state(cfg);
  const HamiltonianDecomposition h(Matrix::Zero(state.d_s, state.d_s),
                                   Matrix::Zero(state.d_e, state.d_e),
                                   build_hamiltonian(cfg));
  const double fd0 = std::fabs(purity_derivative_fd(state, h, 1e-4, true));

  const double elapsed = timer.seconds();
  const bool pass = p0_err <= 1e-12 && p0_state_err <= 1e-12 &&
                    fd0 <= 1e-6 && curve_min > 0.0 && curve_max <= 1.0 &&
                    elapsed < 5.0;
  return {pass,
          fmt("3000-point curve in [%.6f, %.6f]; |P(0) - closed form| = "
              "%.3g (state %.3g, tol 1e-12); |fd derivative at 0| = %.3g "
              "(tol 1e-6); %.2f s (budget 5 s)",
              curve_min, curve_max, p0_err, p0_state_err, fd0, elapsed)};
}

// 2. Weierstrass-form landmarks at N = 24 terms: P(0) = 1/3 and P(1) = 1/6
// within 1e-9.  Budget 1 s.
Outcome criterion_2() {
  const Stopwatch timer;
  const double e0 = std::fabs(purity_weierstrass_form(0.0, 24) - 1.0 / 3.0);
  const double e1 = std::fabs(purity_weierstrass_form(1.0, 24) - 1.0 / 6.0);
  const bool condition = weierstrass_nondifferentiable(0.25, 25);
  const double elapsed = timer.seconds();
  const bool pass = e0 <= 1e-9 && e1 <= 1e-9 && condition && elapsed < 1.0;
  return {pass,
          fmt("|P(0) - 1/3| = %.3g, |P(1) - 1/6| = %.3g (tol 1e-9); "
              "a*b = 6.25 > 1 + 3*pi/2: %s; %.3f s (budget 1 s)",
              e0, e1, condition ? "yes" : "no", elapsed)};
}

// 3. Full 4N-dimensional unitary simulation against the closed-form purity:
// N = 8, linear energies, 200-point grid over [0, 30], pointwise 1e-10.
// Budget 30 s.
Outcome criterion_3() {
  const Stopwatch timer;
  CounterexampleConfig cfg;
  cfg.rule = EnergyRule::linear;
  cfg.truncation = 8;
  const std::vector<double> grid = linspace(0.0, 30.0, 200);
  const PuritySeries sim = simulate_truncated(cfg, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst,
                     std::fabs(sim.values[i] - analytic_purity(cfg, grid[i])));
  }
  const double elapsed = timer.seconds();
  const bool pass = worst <= 1e-10 && elapsed < 30.0;
  return {pass, fmt("max |simulated - analytic| = %.3g over 200 points "
                    "(tol 1e-10); %.2f s (budget 30 s)",
                    worst, elapsed)};
}

// 4. 500 seeded product states with bounded random Hamiltonians: the
// analytic derivative residual stays below 1e-10 and the Richardson
// difference quotient below 1e-8 on every instance.  Budget 60 s.
Outcome criterion_4() {
  const Stopwatch timer;
  const SeededGenerator root(42);
  long failures = 0;
  double max_analytic = 0.0, max_fd = 0.0;
  for (long trial = 0; trial < 500; ++trial) {
    SeededGenerator g = root.child(static_cast<std::uint64_t>(trial));
    const Index d_s = 2 + g.uniform_int(0, 2);
    const Index d_e = 2 + g.uniform_int(0, 2);
    const DensityOperator rho_s = random_density(g, d_s);
    const DensityOperator rho_e = random_density(g, d_e);
    const HamiltonianDecomposition h(random_hermitian(g, d_s, 1.0),
                                     random_hermitian(g, d_e, 1.0),
                                     random_hermitian(g, d_s * d_e, 1.0));
    const double analytic = product_derivative_residual(rho_s, rho_e, h);
    const double fd = std::fabs(
        purity_derivative_fd(product_state(rho_s, rho_e), h, 1e-4, true));
    max_analytic = std::max(max_analytic, analytic);
    max_fd = std::max(max_fd, fd);
    if (analytic > 1e-10 || fd > 1e-8) ++failures;
  }
  const double elapsed = timer.seconds();
  const bool pass = failures == 0 && elapsed < 60.0;
  return {pass, fmt("%ld/500 instances out of tolerance; max analytic "
                    "residual %.3g (tol 1e-10), max fd residual %.3g "
                    "(tol 1e-8); %.1f s (budget 60 s)",
                    failures, max_analytic, max_fd, elapsed)};
}

// 5. 500 seeded correlated states: every level of the bound chain
//   |P'| <= 2||rho_S|| ||[H, rho_cor]||_1 <= 4||H|| ||rho_cor||_1
//        <= 8||H|| I
// must hold with slack >= -1e-9, and the linear trace-norm/information
// inequality ||rho_cor||_1 <= 2I must hold on every instance.  Budget 60 s.
Outcome criterion_5() {
  const Stopwatch timer;
  SuiteConfig cfg;  // 500 trials, seed 42, dims {2,3,4}, tolerance 1e-9
  const VerificationSummary s = run_suite(cfg);
  const double elapsed = timer.seconds();
  const long chain_violations = s.chain_p_le_a.violations +
                                s.chain_a_le_b.violations +
                                s.chain_b_le_c.violations;
  const bool pass = chain_violations == 0 && s.ineq_linear.violations == 0 &&
                    elapsed < 60.0;
  return {pass,
          fmt("chain violations %ld (p<=a %ld, a<=b %ld, b<=c %ld); linear "
              "inequality violations %ld of %ld (worst slack %.3g); quadratic "
              "form violations %ld (worst slack %.3g); %.1f s (budget 60 s)",
              chain_violations, s.chain_p_le_a.violations,
              s.chain_a_le_b.violations, s.chain_b_le_c.violations,
              s.ineq_linear.violations, s.trials, s.ineq_linear.stats.min,
              s.ineq_quadratic.violations, s.ineq_quadratic.stats.min,
              elapsed)};
}

// 6. The analytic derivative and the Richardson difference quotient agree
// within 1e-6 on 100 random correlated instances, and the theta = pi/6
// fixture reproduces P'(0.3) = -sin(1.2)/4 within 1e-9.
Outcome criterion_6() {
  const SeededGenerator root(271828);
  long failures = 0;
  double worst = 0.0;
  for (long trial = 0; trial < 100; ++trial) {
    SeededGenerator g = root.child(static_cast<std::uint64_t>(trial));
    const Index d_s = 2 + g.uniform_int(0, 1);
    const Index d_e = 2 + g.uniform_int(0, 1);
    const BipartiteState state = random_correlated(g, d_s, d_e);
    const HamiltonianDecomposition h(random_hermitian(g, d_s, 1.0),
                                     random_hermitian(g, d_e, 1.0),
                                     random_hermitian(g, d_s * d_e, 1.0));
    const double gap = std::fabs(purity_derivative_analytic(state, h) -
                                 purity_derivative_fd(state, h, 1e-4, true));
    worst = std::max(worst, gap);
    if (gap > 1e-6) ++failures;
  }

  const double theta = M_PI / 6.0;
  const HamiltonianDecomposition h_fix(
      Matrix::Zero(2, 2), Matrix::Zero(2, 2),
      tensor_product(pauli_x(), pauli_x()));
  const BipartiteState evolved =
      evolve(theta_state(theta), assemble_total(h_fix), 0.3);
  const double fixture_err =
      std::fabs(purity_derivative_analytic(evolved, h_fix) -
                (-std::sin(1.2) / 4.0));

  const bool pass = failures == 0 && fixture_err <= 1e-9;
  return {pass, fmt("%ld/100 estimator gaps above 1e-6 (worst %.3g); fixture "
                    "|P'(0.3) + sin(1.2)/4| = %.3g (tol 1e-9)",
                    failures, worst, fixture_err)};
}

// 7. Energy-variance diagnostics: the linear rule converges (variance 1/2
// within 1e-6 by N = 40) while the geometric rule diverges
// (variance(6)/variance(3) >= 1e4).
Outcome criterion_7() {
  CounterexampleConfig cfg_a;
  cfg_a.rule = EnergyRule::linear;
  const std::vector<VarianceRow> rows_a = variance_series(cfg_a, 40);
  const double var_err = std::fabs(rows_a.back().variance - 0.5);

  CounterexampleConfig cfg_b;
  cfg_b.rule = EnergyRule::geometric;
  const std::vector<VarianceRow> rows_b = variance_series(cfg_b, 6);
  const double ratio = rows_b[5].variance / rows_b[2].variance;

  const bool pass = var_err <= 1e-6 && ratio >= 1e4;
  return {pass, fmt("linear rule |variance(40) - 1/2| = %.3g (tol 1e-6); "
                    "geometric rule variance(6)/variance(3) = %.3g "
                    "(needs >= 1e4)",
                    var_err, ratio)};
}

// 8. Difference quotients at probe times 25^-k: the geometric rule has
// |q(1)| >= 2 and |q(4)| >= 50 with strict growth (no derivative at 0),
// while the linear rule's quotients shrink monotonically toward zero.
Outcome criterion_8() {
  CounterexampleConfig cfg_b;
  cfg_b.rule = EnergyRule::geometric;
  const std::vector<ProbeRow> rough = nondiff_probe(cfg_b, 32, 4);
  bool growing = true;
  for (std::size_t i = 1; i < rough.size(); ++i) {
    if (std::fabs(rough[i].quotient) <= std::fabs(rough[i - 1].quotient)) {
      growing = false;
    }
  }

  CounterexampleConfig cfg_a;
  cfg_a.rule = EnergyRule::linear;
  const std::vector<ProbeRow> smooth = nondiff_probe(cfg_a, 32, 4);
  bool shrinking = true;
  for (std::size_t i = 1; i < smooth.size(); ++i) {
    if (std::fabs(smooth[i].quotient) >= std::fabs(smooth[i - 1].quotient)) {
      shrinking = false;
    }
  }

  const bool pass = std::fabs(rough.front().quotient) >= 2.0 &&
                    std::fabs(rough.back().quotient) >= 50.0 && growing &&
                    shrinking && std::fabs(smooth.back().quotient) <= 1e-3;
  return {pass,
          fmt("geometric |q(1)| = %.3g (needs >= 2), |q(4)| = %.3g (needs >= "
              "50), growing: %s; linear quotients shrinking to %.3g: %s",
              std::fabs(rough.front().quotient),
              std::fabs(rough.back().quotient), growing ? "yes" : "no",
              std::fabs(smooth.back().quotient), shrinking ? "yes" : "no")};
}

// 9. Bulk invariants: 10^4 sampled states satisfy the density-operator and
// correlation-operator contracts, and unitary evolution preserves the total
// purity to 1e-10 on several hundred random instances.
Outcome criterion_9() {
  const Stopwatch timer;
  const SeededGenerator root(9001);
  long checked = 0, failures = 0;
  double worst_trace = 0.0, worst_eig = 0.0, worst_corr = 0.0;

  auto check_density = [&](const Matrix& rho) {
    ++checked;
    bool ok = true;
    const double trace_err = std::fabs(rho.trace().real() - 1.0);
    const double herm = hermiticity_residual(rho);
    const double min_eig = hermitian_eigen(rho).eigenvalues.minCoeff();
    worst_trace = std::max(worst_trace, trace_err);
    worst_eig = std::min(worst_eig, min_eig);
    ok = trace_err <= 1e-10 &&
         herm <= hermiticity_tolerance(rho.cwiseAbs().maxCoeff()) &&
         min_eig >= -1e-10;
    if (!ok) ++failures;
  };
  auto check_correlation = [&](const BipartiteState& state) {
    const CorrelationOperator cor = correlation_operator(state);
    const double trace = std::abs(cor.matrix.trace());
    const double side_s =
        partial_trace_matrix(cor.matrix, cor.d_s, cor.d_e,
                             TraceSide::over_environment)
            .cwiseAbs()
            .maxCoeff();
    const double side_e =
        partial_trace_matrix(cor.matrix, cor.d_s, cor.d_e,
                             TraceSide::over_system)
            .cwiseAbs()
            .maxCoeff();
    const double err = std::max({trace, side_s, side_e});
    worst_corr = std::max(worst_corr, err);
    if (err > 1e-12) ++failures;
  };

  for (long trial = 0; trial < 2500; ++trial) {
    SeededGenerator g = root.child(static_cast<std::uint64_t>(trial));
    const Index d = 2 + g.uniform_int(0, 4);
    check_density(random_density(g, d).matrix());
    check_density(random_pure(g, d).matrix());
    const Index d_s = 2 + g.uniform_int(0, 1);
    const Index d_e = 2 + g.uniform_int(0, 1);
    const BipartiteState product = random_product(g, d_s, d_e);
    check_density(product.rho_tot.matrix());
    check_correlation(product);
    const BipartiteState correlated = random_correlated(g, d_s, d_e);
    check_density(correlated.rho_tot.matrix());
    check_correlation(correlated);
  }

  double worst_drift = 0.0;
  for (long trial = 0; trial < 500; ++trial) {
    SeededGenerator g = root.child(777000 + static_cast<std::uint64_t>(trial));
    const Index d_s = 2 + g.uniform_int(0, 1);
    const Index d_e = 2 + g.uniform_int(0, 1);
    const BipartiteState state = random_correlated(g, d_s, d_e);
    const HamiltonianDecomposition h(random_hermitian(g, d_s, 1.0),
                                     random_hermitian(g, d_e, 1.0),
                                     random_hermitian(g, d_s * d_e, 1.0));
    const double t = 5.0 * g.uniform();
    const BipartiteState evolved = evolve(state, assemble_total(h), t);
    const double drift =
        std::fabs(purity(evolved.rho_tot) - purity(state.rho_tot));
    worst_drift = std::max(worst_drift, drift);
    if (drift > 1e-10) ++failures;
  }

  const double elapsed = timer.seconds();
  const bool pass = failures == 0;
  return {pass,
          fmt("%ld sampled states, %ld failures; worst trace error %.3g, "
              "most negative eigenvalue %.3g, worst correlation residual "
              "%.3g; worst purity drift %.3g over 500 evolutions (tol "
              "1e-10); %.1f s",
              checked, failures, worst_trace, worst_eig, worst_corr,
              worst_drift, elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
    return 2;
  }
  const int n = std::atoi(argv[1]);
  Outcome outcome;
  switch (n) {
    case 1: outcome = criterion_1(); break;
    case 2: outcome = criterion_2(); break;
    case 3: outcome = criterion_3(); break;
    case 4: outcome = criterion_4(); break;
    case 5: outcome = criterion_5(); break;
    case 6: outcome = criterion_6(); break;
    case 7: outcome = criterion_7(); break;
    case 8: outcome = criterion_8(); break;
    case 9: outcome = criterion_9(); break;
    default:
      std::fprintf(stderr, "usage: acceptance <criterion 1..9>\n");
      return 2;
  }
  std::printf("[%s] criterion %d: %s\n", outcome.pass ? "PASS" : "FAIL", n,
              outcome.detail.c_str());
  return outcome.pass ? 0 : 1;
}
