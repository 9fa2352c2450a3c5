#pragma once

#include <puritylens/dynamics.hpp>
#include <puritylens/sampling.hpp>

#include <cstdint>
#include <string>
#include <vector>

// Randomized verification of the purity-derivative bound chain
//
//   |P_S'(0)| <= 2 ||rho_S|| * ||[H_int, rho_cor]||_1          (bound_a)
//             <= 4 ||H_int|| * ||rho_cor||_1                   (bound_b)
//             <= 8 ||H_int|| * I(rho_tot)                      (bound_c)
//
// together with the product-state zero-derivative law, the trace pairing
// |Tr(A rho)| <= ||A rho||_1 <= ||A|| * ||rho||_1, and the two
// trace-norm-vs-mutual-information inequalities
//
//   linear:     ||rho_cor||_1    <= 2 I(rho_tot)
//   quadratic:  ||rho_cor||_1^2  <= 2 I(rho_tot)   (Pinsker-type)
//
// The b <= c chain link stands or falls with the linear form.  Empirically
// the linear form fails on a sizable fraction of Ginibre-random states
// while the quadratic form holds with margin, so the suite reports both
// separately: the exit-relevant `violations` aggregate covers only the
// checks backed by a proof (chain links a and ab, product-state law, trace
// pairing, quadratic form), and the linear-form counters ride along in
// dedicated fields for inspection.

namespace puritylens {

struct BoundChainReport {
  std::uint64_t seed = 0;
  long trial = 0;
  Index d_s = 0;
  Index d_e = 0;
  double p_prime = 0.0;
  double bound_a = 0.0;
  double bound_b = 0.0;
  double bound_c = 0.0;
  double corr_trace_norm = 0.0;
  double mutual_information = 0.0;
  double slack_a = 0.0;   // bound_a - |p_prime|
  double slack_ab = 0.0;  // bound_b - bound_a
  double slack_bc = 0.0;  // bound_c - bound_b
  double ineq_linear_slack = 0.0;     // 2 I - ||rho_cor||_1
  double ineq_quadratic_slack = 0.0;  // 2 I - ||rho_cor||_1^2
};

// Evaluate every level of the chain on one instance.
BoundChainReport bound_chain(const BipartiteState& state,
                             const HamiltonianDecomposition& h);

// |P_S'(0)| for the product state rho_s (x) rho_e; zero up to rounding.
double product_derivative_residual(const DensityOperator& rho_s,
                                   const DensityOperator& rho_e,
                                   const HamiltonianDecomposition& h);

struct TracePairing {
  double abs_trace;      // |Tr(a rho)|
  double product_norm;   // ||a rho||_1
  double norm_product;   // ||a|| * ||rho||_1
};

TracePairing check_trace_pairing(const Matrix& a, const Matrix& rho);

struct SuiteConfig {
  std::vector<int> dims_s = {2, 3, 4};
  std::vector<int> dims_e = {2, 3, 4};
  long trials = 500;
  std::uint64_t seed = 42;
  double tolerance = 1e-9;       // slack below -tolerance counts as violation
  double fd_tolerance = 1e-8;    // product-state fd residual allowance
  double analytic_tolerance = 1e-10;  // product-state analytic residual
  double norm_cap = 1.0;         // operator-norm cap for sampled Hamiltonians
  int threads = 1;
};

struct CheckStats {
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

struct CheckSummary {
  long violations = 0;
  CheckStats stats;  // distribution of the monitored slack or residual
};

struct VerificationSummary {
  std::uint64_t seed = 0;
  long trials = 0;
  double tolerance = 0.0;
  int threads = 1;
  std::vector<int> dims_s;
  std::vector<int> dims_e;

  long violations = 0;        // proof-backed checks only (see header note)
  double worst_slack = 0.0;   // most negative proof-backed slack observed

  CheckSummary chain_p_le_a;      // slack_a
  CheckSummary chain_a_le_b;      // slack_ab
  CheckSummary chain_b_le_c;      // slack_bc (reported, not exit-relevant)
  CheckSummary ineq_linear;       // linear slack (reported, not exit-relevant)
  CheckSummary ineq_quadratic;    // quadratic slack
  CheckSummary product_analytic;  // |P'| residual on product states
  CheckSummary product_fd;        // Richardson fd residual on product states
  CheckSummary pairing_lhs_mid;   // ||a rho||_1 - |Tr(a rho)|
  CheckSummary pairing_mid_rhs;   // ||a|| ||rho||_1 - ||a rho||_1

  CheckStats level_abs_p_prime;   // distributions of the chain levels
  CheckStats level_bound_a;
  CheckStats level_bound_b;
  CheckStats level_bound_c;

  std::vector<std::string> notes;
};

// Deterministic randomized suite: trial i draws everything from the child
// stream mix(seed, i), results are accumulated in trial order, and the
// summary is identical for any thread count.
VerificationSummary run_suite(const SuiteConfig& config);

}  // namespace puritylens
