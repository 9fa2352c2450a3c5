#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

// Core scalar/matrix aliases and shared numerical tolerances.
//
// The toolkit works throughout in a finite-dimensional bipartite Hilbert
// space H_S (x) H_E with composite index r = i_S * d_E + i_E (row-major over
// the pair), natural logarithms for all entropic quantities, and hbar = 1 so
// that time is measured in units of 1/energy.

namespace puritylens {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// --- tolerances -----------------------------------------------------------
// Relative tolerance for eigendecomposition reconstruction checks.
inline constexpr double eig_tol = 1e-12;
// Hermiticity residual allowance scales as herm_tol_base * (1 + max |entry|).
inline constexpr double herm_tol_base = 1e-10;
// Trace-one and positivity allowances for density operators.
inline constexpr double trace_tol = 1e-10;
inline constexpr double psd_tol = 1e-10;
// Eigenvalues in [-entropy_clip, 0) are treated as exact zeros in entropies.
inline constexpr double entropy_clip = 1e-12;
// Mutual information in (-mi_clip, 0) is clamped to 0.
inline constexpr double mi_clip = 1e-10;
// Imaginary residue allowed when evaluating traces that are real by theory.
inline constexpr double imag_residue_tol = 1e-10;
// Default slack tolerance for inequality verification.
inline constexpr double slack_tol = 1e-9;

// --- error types ----------------------------------------------------------
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EigenConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ImaginaryResidueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Hermiticity tolerance for a given matrix magnitude scale.
inline double hermiticity_tolerance(double max_abs_entry) {
  return herm_tol_base * (1.0 + max_abs_entry);
}

}  // namespace puritylens
