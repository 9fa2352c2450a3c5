#include <puritylens/dynamics.hpp>

#include <cmath>
#include <string>
#include <utility>

namespace puritylens {

namespace {

void require_hermitian(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(name) + " must be square");
  }
  const double scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 0.0;
  const double residual = m.size() > 0 ? hermiticity_residual(m) : 0.0;
  if (residual > hermiticity_tolerance(scale)) {
    throw NotHermitianError(std::string(name) + ": Hermiticity residual " +
                            std::to_string(residual) + " exceeds tolerance");
  }
}

// Shared evolution cache: one spectral decomposition, many times.
class Propagator {
 public:
  Propagator(const Matrix& h_total, Index dim) : eig_(hermitian_eigen(h_total)) {
    if (h_total.rows() != dim) {
      throw DimensionError("Hamiltonian dimension " +
                           std::to_string(h_total.rows()) +
                           " does not match state dimension " +
                           std::to_string(dim));
    }
  }

  Matrix evolve_matrix(const Matrix& rho0, double t) const {
    const Index n = eig_.eigenvalues.size();
    Vector phases(n);
    for (Index k = 0; k < n; ++k) {
      phases(k) = std::exp(Complex(0.0, -eig_.eigenvalues(k) * t));
    }
    const Matrix u = eig_.eigenvectors * phases.asDiagonal() *
                     eig_.eigenvectors.adjoint();
    return u * rho0 * u.adjoint();
  }

 private:
  HermitianEigen eig_;
};

double reduced_purity_at(const Propagator& prop, const Matrix& rho0,
                         Index d_s, Index d_e, double t) {
  const Matrix rho_t = prop.evolve_matrix(rho0, t);
  const Matrix rho_s =
      partial_trace_matrix(rho_t, d_s, d_e, TraceSide::over_environment);
  // Tr rho_S^2 as squared Frobenius norm (rho_S Hermitian up to rounding).
  return rho_s.squaredNorm();
}

}  // namespace

HamiltonianDecomposition::HamiltonianDecomposition(Matrix system,
                                                   Matrix environment,
                                                   Matrix interaction)
    : h_s(std::move(system)),
      h_e(std::move(environment)),
      h_int(std::move(interaction)) {
  require_hermitian(h_s, "h_s");
  require_hermitian(h_e, "h_e");
  require_hermitian(h_int, "h_int");
  if (h_int.rows() != h_s.rows() * h_e.rows()) {
    throw DimensionError("h_int dimension " + std::to_string(h_int.rows()) +
                         " does not equal d_s * d_e = " +
                         std::to_string(h_s.rows() * h_e.rows()));
  }
}

Matrix assemble_total(const HamiltonianDecomposition& h) {
  const Matrix id_s = Matrix::Identity(h.d_s(), h.d_s());
  const Matrix id_e = Matrix::Identity(h.d_e(), h.d_e());
  return tensor_product(h.h_s, id_e) + tensor_product(id_s, h.h_e) + h.h_int;
}

BipartiteState evolve(const BipartiteState& state, const Matrix& h_total,
                      double t) {
  require_hermitian(h_total, "h_total");
  const Propagator prop(h_total, state.rho_tot.dim());
  return BipartiteState(
      DensityOperator(prop.evolve_matrix(state.rho_tot.matrix(), t)),
      state.d_s, state.d_e);
}

PuritySeries::PuritySeries(std::vector<double> t, std::vector<double> p)
    : times(std::move(t)), values(std::move(p)) {
  if (times.size() != values.size()) {
    throw InvariantError("purity series: times and values differ in length");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw InvariantError("purity series: times must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v > 0.0) || v > 1.0 + 1e-12) {
      throw InvariantError("purity series: value " + std::to_string(v) +
                           " outside (0, 1]");
    }
  }
}

PuritySeries purity_series(const BipartiteState& state,
                           const HamiltonianDecomposition& h,
                           std::span<const double> times) {
  if (h.d_s() != state.d_s || h.d_e() != state.d_e) {
    throw DimensionError("purity_series: Hamiltonian/state dimension mismatch");
  }
  const Propagator prop(assemble_total(h), state.rho_tot.dim());
  std::vector<double> t(times.begin(), times.end());
  std::vector<double> p;
  p.reserve(t.size());
  for (double ti : t) {
    p.push_back(reduced_purity_at(prop, state.rho_tot.matrix(), state.d_s,
                                  state.d_e, ti));
  }
  return PuritySeries(std::move(t), std::move(p));
}

double purity_derivative_analytic(const BipartiteState& state,
                                  const HamiltonianDecomposition& h) {
  if (h.d_s() != state.d_s || h.d_e() != state.d_e) {
    throw DimensionError(
        "purity_derivative_analytic: Hamiltonian/state dimension mismatch");
  }
  const DensityOperator rho_s =
      partial_trace(state, TraceSide::over_environment);
  const CorrelationOperator cor = correlation_operator(state);
  const Matrix id_e = Matrix::Identity(state.d_e, state.d_e);
  const Matrix lifted = tensor_product(rho_s.matrix(), id_e);
  const Complex trace = (lifted * commutator(h.h_int, cor.matrix)).trace();
  // d/dt Tr rho_S^2 = -2i Tr{ (rho_S (x) I) [H_int, rho_cor] }; the result
  // is real because the trace itself is purely imaginary.
  const Complex value = Complex(0.0, -2.0) * trace;
  if (std::abs(value.imag()) > imag_residue_tol) {
    throw ImaginaryResidueError(
        "purity derivative has imaginary residue " +
        std::to_string(value.imag()) + " beyond 1e-10");
  }
  return value.real();
}

double purity_derivative_fd(const BipartiteState& state,
                            const HamiltonianDecomposition& h, double step,
                            bool richardson) {
  if (!(step >= 1e-12)) {
    throw InvariantError("finite-difference step " + std::to_string(step) +
                         " below the 1e-12 floor");
  }
  if (h.d_s() != state.d_s || h.d_e() != state.d_e) {
    throw DimensionError(
        "purity_derivative_fd: Hamiltonian/state dimension mismatch");
  }
  const Propagator prop(assemble_total(h), state.rho_tot.dim());
  const Matrix& rho0 = state.rho_tot.matrix();
  auto p = [&](double t) {
    return reduced_purity_at(prop, rho0, state.d_s, state.d_e, t);
  };
  const double central = (p(step) - p(-step)) / (2.0 * step);
  if (!richardson) return central;
  const double wide = (p(2.0 * step) - p(-2.0 * step)) / (4.0 * step);
  // Fourth-order Richardson extrapolation of the central difference.
  return (4.0 * central - wide) / 3.0;
}

EnergyMoments energy_moments(const BipartiteState& state,
                             const Matrix& h_total) {
  require_hermitian(h_total, "h_total");
  if (h_total.rows() != state.rho_tot.dim()) {
    throw DimensionError("energy_moments: dimension mismatch");
  }
  const Matrix& rho = state.rho_tot.matrix();
  const Matrix rho_h = rho * h_total;
  const double mean = rho_h.trace().real();
  const double second = (rho_h * h_total).trace().real();
  double variance = second - mean * mean;
  if (variance < 0.0 && variance > -1e-9) variance = 0.0;
  return {mean, variance};
}

}  // namespace puritylens
