#pragma once

#include <puritylens/states.hpp>

#include <span>
#include <vector>

// Closed-system dynamics rho(t) = U_t rho(0) U_t^*, U_t = exp(-i H_tot t),
// with H_tot = H_S (x) I + I (x) H_E + H_int, and the reduced-purity
// functionals built on top of it:
//
//   P_S(t)  = Tr (rho_S(t))^2,
//   P_S'(t) = -2i Tr{ (rho_S (x) I) [H_int, rho_cor] }    (analytic form),
//
// plus finite-difference estimators of P_S' and energy moments of H_tot.
// Evolution always starts from t = 0 at the supplied state.

namespace puritylens {

struct HamiltonianDecomposition {
  // Validates that h_s, h_e, h_int are Hermitian within the scaled tolerance
  // and that h_int is (d_s*d_e) x (d_s*d_e).
  HamiltonianDecomposition(Matrix system, Matrix environment,
                           Matrix interaction);

  Matrix h_s;
  Matrix h_e;
  Matrix h_int;

  Index d_s() const { return h_s.rows(); }
  Index d_e() const { return h_e.rows(); }
};

// H_S (x) I_E + I_S (x) H_E + H_int.
Matrix assemble_total(const HamiltonianDecomposition& h);

// One-shot evolution from t = 0; h_total must be Hermitian and match the
// state dimension.
BipartiteState evolve(const BipartiteState& state, const Matrix& h_total,
                      double t);

struct PuritySeries {
  // Validates equal lengths, strictly increasing times, and values in
  // (0, 1 + 1e-12].
  PuritySeries(std::vector<double> t, std::vector<double> p);

  std::vector<double> times;
  std::vector<double> values;
};

// Reduced purity P_S(t) on a strictly increasing time grid, sharing one
// spectral decomposition of H_tot across all samples.
PuritySeries purity_series(const BipartiteState& state,
                           const HamiltonianDecomposition& h,
                           std::span<const double> times);

// P_S'(0) from the commutator form above.  The trace is real by theory;
// an imaginary residue above 1e-10 raises ImaginaryResidueError.
double purity_derivative_analytic(const BipartiteState& state,
                                  const HamiltonianDecomposition& h);

// Finite-difference P_S'(0): central difference (P(h) - P(-h)) / 2h, or the
// fourth-order Richardson stencil
//   (8 (P(h) - P(-h)) - (P(2h) - P(-2h))) / (12 h)
// when richardson is set.  Steps below 1e-12 are rejected.
double purity_derivative_fd(const BipartiteState& state,
                            const HamiltonianDecomposition& h,
                            double step = 1e-4, bool richardson = true);

struct EnergyMoments {
  double mean;
  double variance;
};

// mean = Re Tr(rho H), variance = Re Tr(rho H^2) - mean^2; a variance that
// rounds into (-1e-9, 0) is clamped to 0.
EnergyMoments energy_moments(const BipartiteState& state,
                             const Matrix& h_total);

}  // namespace puritylens
