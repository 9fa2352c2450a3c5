#pragma once

#include <puritylens/opkernel.hpp>
#include <puritylens/types.hpp>

// Density operators on single and bipartite systems, partial traces, purity,
// von Neumann entropy, mutual information, and the correlation operator
// rho_cor = rho_tot - rho_S (x) rho_E.
//
// Validation happens at construction: every DensityOperator is Hermitian
// within the scaled tolerance, has unit trace within 1e-10, and smallest
// eigenvalue >= -1e-10.  All functionals may assume these invariants.

namespace puritylens {

class DensityOperator {
 public:
  // Validates Hermiticity, unit trace, and positivity; throws
  // NotHermitianError or InvariantError.
  explicit DensityOperator(Matrix rho);

  const Matrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

 private:
  Matrix rho_;
};

// Which subsystem to trace out.
enum class TraceSide { over_environment, over_system };

// A density operator on H_S (x) H_E with composite index r = i_S * d_E + i_E.
struct BipartiteState {
  BipartiteState(DensityOperator rho, Index system_dim, Index environment_dim);

  DensityOperator rho_tot;
  Index d_s;
  Index d_e;
};

// Partial trace over the chosen side; preserves trace and positivity.
DensityOperator partial_trace(const BipartiteState& state, TraceSide side);

// Raw-matrix partial trace used by the evolution hot path; `rho` must be
// (d_s*d_e) x (d_s*d_e) with the composite index convention above.
Matrix partial_trace_matrix(const Matrix& rho, Index d_s, Index d_e,
                            TraceSide side);

// Tr rho^2, computed as the squared Frobenius norm (Hermitian case).
double purity(const DensityOperator& rho);

// S(rho) = -sum lambda ln lambda in nats; eigenvalues in [-1e-12, 0) are
// treated as exact zeros, more negative ones raise InvariantError.
double von_neumann_entropy(const DensityOperator& rho);

// I(rho_tot) = S(rho_S) + S(rho_E) - S(rho_tot), clamped to 0 from below
// when the three-entropy combination rounds into (-1e-10, 0).
double mutual_information(const BipartiteState& state);

// rho_cor = rho_tot - rho_S (x) rho_E.  Traceless with vanishing partial
// traces on both sides; Hermitian.
struct CorrelationOperator {
  Matrix matrix;
  Index d_s;
  Index d_e;
};

CorrelationOperator correlation_operator(const BipartiteState& state);

// rho_s (x) rho_e as a validated bipartite state.
BipartiteState product_state(const DensityOperator& rho_s,
                             const DensityOperator& rho_e);

}  // namespace puritylens
