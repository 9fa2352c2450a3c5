#pragma once

#include <puritylens/dynamics.hpp>

#include <cstdint>
#include <span>
#include <vector>

// A family of bipartite states whose reduced purity stays perfectly smooth
// or becomes nowhere-differentiable at t = 0 depending on the energy rule,
// even though the initial state is completely uncorrelated.
//
// Construction: levels n = 1..N carry weights p_n = 2^-n (renormalized to
// sum 1 by default).  Each level is a 4-dimensional block spanned by
// |s_j e_l>, ordered (s1e1, s1e2, s2e1, s2e2); the initial state puts the
// whole level weight on |s1e1>.  The block Hamiltonian has eigenbasis
//   chi_1 = (|s1e1> + i |s2e2>)/sqrt(2)   eigenvalue 0
//   chi_2 = |s2e1>                         eigenvalue h_n
//   chi_3 = |s1e2>                         eigenvalue h_n
//   chi_4 = (|s1e1> - i |s2e2>)/sqrt(2)   eigenvalue 2 h_n
// which makes the reduced purity
//   P_S(t) = (3/4) sum p_n^2 + (1/4) sum p_n^2 cos(4 h_n t).
// The linear rule h_n = n/4 gives a smooth almost-periodic P_S; the
// geometric rule h_n = 25^n pi / 4 turns the oscillating part into a
// Weierstrass-type sum  P_S(t) = (1 - cos(pi t) + f(t; 1/4, 25)) / 4  with
// f(t; a, b) = sum_{n=0}^{N} a^n cos(b^n pi t), which for a b > 1 + 3 pi/2
// is classically nowhere differentiable in the N -> infinity limit.
//
// The system factor is the 2N-dimensional span of |n> (x) |s_j>
// (S-index 2(n-1) + (j-1)), the environment factor is 2-dimensional, and
// the composite index is 4(n-1) + 2(j-1) + (l-1).

namespace puritylens {

enum class EnergyRule {
  linear,     // h_n = n / 4
  geometric,  // h_n = 25^n * pi / 4
  custom,     // h_n supplied explicitly
};

struct CounterexampleConfig {
  int truncation = 8;          // N; levels n = 1..N
  EnergyRule rule = EnergyRule::linear;
  bool renormalize = true;     // renormalize truncated weights to sum 1
  std::vector<double> custom_energies;  // used when rule == custom
  std::vector<double> custom_weights;   // optional override of p_n = 2^-n
};

// Throws InvariantError / DimensionError on a bad configuration.  The
// geometric rule is capped at N = 150 (beyond that 25^n pi / 4 leaves the
// double range long before, and every derived quantity would be inf).
void validate(const CounterexampleConfig& cfg);

// Level weights p_n (renormalized when configured) and energies h_n for
// n = 1..truncation.
std::vector<double> level_weights(const CounterexampleConfig& cfg);
std::vector<double> level_energies(const CounterexampleConfig& cfg);

// Columns chi_1..chi_4 of the block eigenbasis in the (s1e1, s1e2, s2e1,
// s2e2) ordering; unitary within 1e-14.
Eigen::Matrix4cd chi_basis();

// Initial state sum_n p_n |s1e1><s1e1|_n as a validated bipartite state
// with d_s = 2N, d_e = 2.  With renormalize off the raw weights sum to
// 1 - 2^-N, which fails the unit-trace validation for small N; state
// construction therefore effectively requires the renormalized weights.
BipartiteState build_initial_state(const CounterexampleConfig& cfg);

// Block-diagonal 4N x 4N interaction Hamiltonian (H_S = H_E = 0); each
// block has spectrum {0, h_n, h_n, 2 h_n}.
Matrix build_hamiltonian(const CounterexampleConfig& cfg);

// Reduced purity of the evolved truncated construction on a strictly
// increasing time grid.
PuritySeries simulate_truncated(const CounterexampleConfig& cfg,
                                std::span<const double> times);

// Closed-form reduced purity (3/4) P0 + (1/4) sum p_n^2 cos(4 h_n t).
// For the geometric rule the cosines are evaluated with exact modular
// reduction (see cos_pi_power_multiple), so the value stays meaningful at
// energies far beyond where naive phase arithmetic decoheres.
double analytic_purity(const CounterexampleConfig& cfg, double t);

// Tail of the purity weight sum for the default weights: sum_{n>N} 4^-n.
double truncation_tail_bound(const CounterexampleConfig& cfg);

// cos(pi * base^power * t) where t is treated as the exact dyadic rational
// represented by the double.  The integer multiplier base^power * t is
// reduced modulo 2 exactly (128-bit modular arithmetic on the mantissa),
// so the result is accurate even when base^power overflows every native
// integer and floating type.
double cos_pi_power_multiple(std::uint64_t base, int power, double t);

// Truncated Weierstrass sum f(t; a, b) = sum_{n=0}^{terms} a^n cos(b^n pi t)
// (terms is inclusive).  Requires a in (0, 1) and odd b >= 1.
double weierstrass_f(double t, double a, int b, int terms);

// The classical non-differentiability condition a b > 1 + 3 pi / 2.
bool weierstrass_nondifferentiable(double a, int b);

// P_S(t) = (1 - cos(pi t) + f(t; 1/4, 25)) / 4 with the truncated sum.
double purity_weierstrass_form(double t, int terms);

struct VarianceRow {
  int truncation;
  double mean;
  double variance;
};

// Energy moments of the truncated construction for N = 1..up_to_n, via the
// assembled matrices.  Closed forms: mean = sum p_n h_n, second moment
// = 2 sum p_n h_n^2 (the |s1e1> weight splits evenly between eigenvalues 0
// and 2 h_n).
std::vector<VarianceRow> variance_series(const CounterexampleConfig& cfg,
                                         int up_to_n);

struct ProbeRow {
  int k;
  double h;         // probe time 25^-k
  double quotient;  // (P(h) - P(0)) / h
};

// Smallest term count for which the truncation tail stays below 1e-3 of
// the dominant quotient at probe scale k_max (tail ratio 4^(k - N)).
int probe_terms_required(int k_max);

// Difference quotients of the reduced purity at probe times t_k = 25^-k,
// k = 1..k_max, with the probe time handled as the exact rational 1/25^k.
// The difference P(h) - P(0) is evaluated term by term in the
// cancellation-free form cos(x) - 1 = -2 sin^2(x/2), which is algebraically
// identical to subtracting two purity evaluations but loses no precision.
// Under the linear rule the quotients shrink toward zero (differentiable
// limit); under the geometric rule they grow like (25/4)^k.
std::vector<ProbeRow> nondiff_probe(const CounterexampleConfig& cfg, int terms,
                                    int k_max);

}  // namespace puritylens
