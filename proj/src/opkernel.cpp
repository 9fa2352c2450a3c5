#include <puritylens/opkernel.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace puritylens {

namespace {

Index g_dimension_guard = 4096;

// Union-find over matrix indices, used to split a Hermitian matrix into the
// independent diagonal blocks delimited by its exact zero pattern.
class IndexPartition {
 public:
  explicit IndexPartition(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }

  Index find(Index i) {
    while (parent_[static_cast<std::size_t>(i)] != i) {
      parent_[static_cast<std::size_t>(i)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(i)])];
      i = parent_[static_cast<std::size_t>(i)];
    }
    return i;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

// Indices of each decoupled block, in order of first appearance.
std::vector<std::vector<Index>> decoupled_blocks(const Matrix& sym) {
  const Index n = sym.rows();
  IndexPartition partition(n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = r + 1; c < n; ++c) {
      if (sym(r, c) != 0.0) partition.unite(r, c);
    }
  }
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> block_of(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = partition.find(i);
    if (block_of[static_cast<std::size_t>(root)] < 0) {
      block_of[static_cast<std::size_t>(root)] =
          static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(root)])]
        .push_back(i);
  }
  return blocks;
}

}  // namespace

Index dimension_guard() { return g_dimension_guard; }

void set_dimension_guard(Index value) {
  if (value < 1) {
    throw DimensionError("dimension guard must be positive, got " +
                         std::to_string(value));
  }
  g_dimension_guard = value;
}

double hermiticity_residual(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("hermiticity_residual requires a square matrix");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (tol < 0.0) {
    tol = hermiticity_tolerance(a.size() > 0 ? a.cwiseAbs().maxCoeff() : 0.0);
  }
  return hermiticity_residual(a) <= tol;
}

Matrix tensor_product(const Matrix& a, const Matrix& b, Index max_dim) {
  if (max_dim <= 0) max_dim = dimension_guard();
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw DimensionError("tensor_product dimension " + std::to_string(rows) +
                         "x" + std::to_string(cols) +
                         " exceeds the guard of " + std::to_string(max_dim));
  }
  Matrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError("commutator requires square matrices of equal size");
  }
  return a * b - b * a;
}

HermitianEigen hermitian_eigen(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("hermitian_eigen requires a square matrix");
  }
  const double scale = h.size() > 0 ? h.cwiseAbs().maxCoeff() : 0.0;
  const double residual = hermiticity_residual(h);
  if (residual > hermiticity_tolerance(scale)) {
    throw NotHermitianError("hermitian_eigen: Hermiticity residual " +
                            std::to_string(residual) + " exceeds tolerance");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());

  // The exact zero pattern decouples the matrix into independent diagonal
  // blocks.  A global solve normalizes by the largest entry and loses (or
  // deflates away) blocks living many orders of magnitude below it, so each
  // block is solved at its own scale; this keeps every eigenvalue accurate
  // relative to its block norm rather than the global norm.
  const std::vector<std::vector<Index>> blocks = decoupled_blocks(sym);
  const Index n = sym.rows();
  if (blocks.size() <= 1) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw EigenConvergenceError("hermitian_eigen: solver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
  }

  RealVector values(n);
  Matrix vectors = Matrix::Zero(n, n);
  Index col = 0;
  for (const std::vector<Index>& block : blocks) {
    const Index m = static_cast<Index>(block.size());
    Matrix sub(m, m);
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c < m; ++c) {
        sub(r, c) = sym(block[static_cast<std::size_t>(r)],
                        block[static_cast<std::size_t>(c)]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sub);
    if (solver.info() != Eigen::Success) {
      throw EigenConvergenceError("hermitian_eigen: solver failed to converge");
    }
    for (Index k = 0; k < m; ++k) {
      values(col) = solver.eigenvalues()(k);
      for (Index r = 0; r < m; ++r) {
        vectors(block[static_cast<std::size_t>(r)], col) =
            solver.eigenvectors()(r, k);
      }
      ++col;
    }
  }

  // Restore the ascending-eigenvalue contract across blocks; the stable sort
  // keeps the block order deterministic under degeneracy.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](Index a, Index b) { return values(a) < values(b); });
  HermitianEigen out{RealVector(n), Matrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = values(order[static_cast<std::size_t>(i)]);
    out.eigenvectors.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);
  }
  return out;
}

Matrix unitary_from_hamiltonian(const Matrix& h, double t) {
  const HermitianEigen eig = hermitian_eigen(h);
  const Index n = h.rows();
  Vector phases(n);
  for (Index k = 0; k < n; ++k) {
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * t));
  }
  return eig.eigenvectors * phases.asDiagonal() *
         eig.eigenvectors.adjoint();
}

double trace_norm(const Matrix& a, bool hermitian) {
  if (a.rows() != a.cols()) {
    throw DimensionError("trace_norm requires a square matrix");
  }
  if (hermitian) {
    return hermitian_eigen(a).eigenvalues.cwiseAbs().sum();
  }
  const Matrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw EigenConvergenceError("trace_norm: solver failed to converge");
  }
  double sum = 0.0;
  for (Index k = 0; k < gram.rows(); ++k) {
    // Gram eigenvalues are >= 0 up to rounding; clip before the sqrt.
    sum += std::sqrt(std::max(solver.eigenvalues()(k), 0.0));
  }
  return sum;
}

double operator_norm(const Matrix& a, bool hermitian) {
  if (a.rows() != a.cols()) {
    throw DimensionError("operator_norm requires a square matrix");
  }
  if (a.size() == 0) return 0.0;
  if (hermitian) {
    return hermitian_eigen(a).eigenvalues.cwiseAbs().maxCoeff();
  }
  const Matrix gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw EigenConvergenceError("operator_norm: solver failed to converge");
  }
  return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
}

}  // namespace puritylens
