#include <puritylens/sampling.hpp>

#include <cmath>
#include <string>

namespace puritylens {

namespace {

// splitmix64 finalizer; decorrelates (seed, label) pairs into child seeds.
std::uint64_t mix(std::uint64_t seed, std::uint64_t label) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (label + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix complex_ginibre(SeededGenerator& gen, Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = Complex(gen.gaussian(), gen.gaussian());
    }
  }
  return g;
}

void require_dim(Index dim, const char* name) {
  if (dim < 1) {
    throw DimensionError(std::string(name) + ": dimension must be >= 1, got " +
                         std::to_string(dim));
  }
}

}  // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed)
    : seed_(seed), engine_(mix(seed, 0)), normal_(0.0, 1.0) {}

SeededGenerator SeededGenerator::child(std::uint64_t label) const {
  return SeededGenerator(mix(seed_, label));
}

double SeededGenerator::gaussian() { return normal_(engine_); }

double SeededGenerator::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::int64_t SeededGenerator::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw InvariantError("uniform_int: empty range");
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

Matrix random_hermitian(SeededGenerator& gen, Index dim, double norm_cap) {
  require_dim(dim, "random_hermitian");
  if (!(norm_cap > 0.0)) {
    throw InvariantError("random_hermitian: norm_cap must be positive");
  }
  const Matrix g = complex_ginibre(gen, dim, dim);
  Matrix h = 0.5 * (g + g.adjoint());
  const double norm = operator_norm(h, /*hermitian=*/true);
  if (norm > 0.0) h *= norm_cap / norm;
  return h;
}

DensityOperator random_density(SeededGenerator& gen, Index dim) {
  require_dim(dim, "random_density");
  // Ginibre-induced measure: full rank with probability one, so the trace
  // cannot vanish; retry on the measure-zero degenerate draw anyway.
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Matrix g = complex_ginibre(gen, dim, dim);
    Matrix w = g * g.adjoint();
    const double tr = w.trace().real();
    if (tr > 1e-300) {
      w /= tr;
      return DensityOperator(std::move(w));
    }
  }
  throw InvariantError("random_density: degenerate Ginibre draw");
}

DensityOperator random_pure(SeededGenerator& gen, Index dim) {
  require_dim(dim, "random_pure");
  for (int attempt = 0; attempt < 8; ++attempt) {
    Vector psi(dim);
    for (Index i = 0; i < dim; ++i) {
      psi(i) = Complex(gen.gaussian(), gen.gaussian());
    }
    const double norm = psi.norm();
    if (norm > 1e-150) {
      psi /= norm;
      return DensityOperator(psi * psi.adjoint());
    }
  }
  throw InvariantError("random_pure: degenerate Gaussian draw");
}

BipartiteState random_product(SeededGenerator& gen, Index d_s, Index d_e) {
  const DensityOperator rho_s = random_density(gen, d_s);
  const DensityOperator rho_e = random_density(gen, d_e);
  return product_state(rho_s, rho_e);
}

BipartiteState random_correlated(SeededGenerator& gen, Index d_s, Index d_e) {
  require_dim(d_s, "random_correlated");
  require_dim(d_e, "random_correlated");
  return BipartiteState(random_density(gen, d_s * d_e), d_s, d_e);
}

}  // namespace puritylens
