#pragma once

#include <puritylens/types.hpp>

// Dense operator kernels: tensor products, commutators, Hermitian spectral
// decompositions, matrix exponentials of -i H t, and Schatten norms.  These
// free functions are the only route the rest of the library takes into
// Eigen's solvers, so the numerical conventions (ascending eigenvalues,
// symmetrization before solving, singular values via the Gram matrix) are
// fixed here once.

namespace puritylens {

// Maximum allowed total dimension for composite constructions.  Configurable
// once at startup (the CLI honours PURITYLENS_MAX_DIM); not synchronized.
Index dimension_guard();
void set_dimension_guard(Index value);

// Largest |a(i,j) - conj(a(j,i))| over all entries.
double hermiticity_residual(const Matrix& a);

// True when the Hermiticity residual is within tol (defaults to the scaled
// tolerance hermiticity_tolerance(max |entry|)).
bool is_hermitian(const Matrix& a, double tol = -1.0);

// Kronecker product a (x) b with block structure (i,j) -> a(i,j) * b.
// Throws DimensionError when the product dimension exceeds max_dim
// (max_dim <= 0 selects the global dimension guard).
Matrix tensor_product(const Matrix& a, const Matrix& b, Index max_dim = 0);

// a b - b a; both operands must be square with equal dimension.
Matrix commutator(const Matrix& a, const Matrix& b);

struct HermitianEigen {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // column k pairs with eigenvalues[k]
};

// Spectral decomposition of a Hermitian matrix.  The input is validated
// against the scaled Hermiticity tolerance and symmetrized as (h + h^*)/2
// before solving.  Diagonal blocks decoupled by the exact zero pattern are
// solved independently at their own scale, so eigenvalues stay accurate
// relative to their block norm even when blocks differ by many orders of
// magnitude.  Throws NotHermitianError / EigenConvergenceError.
HermitianEigen hermitian_eigen(const Matrix& h);

// U(t) = exp(-i h t) through the spectral decomposition of h.
Matrix unitary_from_hamiltonian(const Matrix& h, double t);

// Schatten-1 norm (sum of singular values).  The general path takes
// sqrt of the eigenvalues of a^* a; with hermitian = true it sums |lambda_k|
// of a directly.  Never symmetrize a general input here: for anti-Hermitian
// arguments (e.g. commutators) (a + a^*)/2 vanishes identically.
double trace_norm(const Matrix& a, bool hermitian = false);

// Operator norm (largest singular value; max |lambda| when hermitian).
double operator_norm(const Matrix& a, bool hermitian = false);

}  // namespace puritylens
