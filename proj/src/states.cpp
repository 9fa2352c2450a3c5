#include <puritylens/states.hpp>

#include <cmath>
#include <string>

namespace puritylens {

DensityOperator::DensityOperator(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw DimensionError("density operator must be square and non-empty");
  }
  const double scale = rho_.cwiseAbs().maxCoeff();
  const double herm = hermiticity_residual(rho_);
  if (herm > hermiticity_tolerance(scale)) {
    throw NotHermitianError("density operator Hermiticity residual " +
                            std::to_string(herm) + " exceeds tolerance");
  }
  const double trace_err = std::abs(rho_.trace() - Complex(1.0, 0.0));
  if (trace_err > trace_tol) {
    throw InvariantError("density operator trace deviates from 1 by " +
                         std::to_string(trace_err));
  }
  const HermitianEigen eig = hermitian_eigen(rho_);
  const double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -psd_tol) {
    throw InvariantError("density operator has eigenvalue " +
                         std::to_string(min_eig) + " below -1e-10");
  }
}

BipartiteState::BipartiteState(DensityOperator rho, Index system_dim,
                               Index environment_dim)
    : rho_tot(std::move(rho)), d_s(system_dim), d_e(environment_dim) {
  if (d_s < 1 || d_e < 1) {
    throw DimensionError("bipartite factors must have positive dimension");
  }
  if (rho_tot.dim() != d_s * d_e) {
    throw DimensionError("bipartite state dimension " +
                         std::to_string(rho_tot.dim()) +
                         " does not factor as " + std::to_string(d_s) + "x" +
                         std::to_string(d_e));
  }
}

Matrix partial_trace_matrix(const Matrix& rho, Index d_s, Index d_e,
                            TraceSide side) {
  if (rho.rows() != rho.cols() || rho.rows() != d_s * d_e) {
    throw DimensionError("partial_trace_matrix: dimension mismatch");
  }
  if (side == TraceSide::over_environment) {
    Matrix out = Matrix::Zero(d_s, d_s);
    for (Index i = 0; i < d_s; ++i) {
      for (Index j = 0; j < d_s; ++j) {
        for (Index e = 0; e < d_e; ++e) {
          out(i, j) += rho(i * d_e + e, j * d_e + e);
        }
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(d_e, d_e);
  for (Index i = 0; i < d_e; ++i) {
    for (Index j = 0; j < d_e; ++j) {
      for (Index s = 0; s < d_s; ++s) {
        out(i, j) += rho(s * d_e + i, s * d_e + j);
      }
    }
  }
  return out;
}

DensityOperator partial_trace(const BipartiteState& state, TraceSide side) {
  return DensityOperator(
      partial_trace_matrix(state.rho_tot.matrix(), state.d_s, state.d_e, side));
}

double purity(const DensityOperator& rho) {
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityOperator& rho) {
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  double entropy = 0.0;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (lambda <= 0.0 && lambda >= -psd_tol) {
      continue;  // numerically zero: 0 ln 0 = 0
    }
    if (lambda < -psd_tol) {
      throw InvariantError("entropy: eigenvalue " + std::to_string(lambda) +
                           " is negative beyond tolerance");
    }
    entropy -= lambda * std::log(lambda);
  }
  return entropy;
}

double mutual_information(const BipartiteState& state) {
  const double s_s =
      von_neumann_entropy(partial_trace(state, TraceSide::over_environment));
  const double s_e =
      von_neumann_entropy(partial_trace(state, TraceSide::over_system));
  const double s_tot = von_neumann_entropy(state.rho_tot);
  const double mi = s_s + s_e - s_tot;
  if (mi < 0.0 && mi > -mi_clip) return 0.0;
  return mi;
}

CorrelationOperator correlation_operator(const BipartiteState& state) {
  const DensityOperator rho_s =
      partial_trace(state, TraceSide::over_environment);
  const DensityOperator rho_e = partial_trace(state, TraceSide::over_system);
  Matrix cor = state.rho_tot.matrix() -
               tensor_product(rho_s.matrix(), rho_e.matrix());
  return {std::move(cor), state.d_s, state.d_e};
}

BipartiteState product_state(const DensityOperator& rho_s,
                             const DensityOperator& rho_e) {
  return BipartiteState(
      DensityOperator(tensor_product(rho_s.matrix(), rho_e.matrix())),
      rho_s.dim(), rho_e.dim());
}

}  // namespace puritylens
