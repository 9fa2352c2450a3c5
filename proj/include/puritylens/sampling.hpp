#pragma once

#include <puritylens/states.hpp>

#include <cstdint>
#include <random>

// Seeded random ensembles: GUE-style Hermitian operators, Ginibre-induced
// density operators, Haar-like pure states, and product / correlated
// bipartite states.  Determinism contract: a given (seed, label chain)
// reproduces the same draw sequence within one standard-library
// implementation; Gaussian variates come from std::normal_distribution, so
// sequences are not pinned across different C++ runtimes.

namespace puritylens {

class SeededGenerator {
 public:
  explicit SeededGenerator(std::uint64_t seed);

  // Independent child stream; derived by a splitmix64-style mix of
  // (seed, label), so child(k) does not depend on draws made from *this.
  SeededGenerator child(std::uint64_t label) const;

  std::uint64_t seed() const { return seed_; }

  double gaussian();                      // standard normal
  double uniform();                       // [0, 1)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// (G + G^*)/2 with i.i.d. complex Gaussian G, rescaled so the operator norm
// equals norm_cap (a zero draw is returned unscaled).
Matrix random_hermitian(SeededGenerator& gen, Index dim, double norm_cap);

// Ginibre-induced mixed state G G^* / Tr(G G^*).
DensityOperator random_density(SeededGenerator& gen, Index dim);

// Rank-one projector onto a normalized Gaussian vector.
DensityOperator random_pure(SeededGenerator& gen, Index dim);

// rho_S (x) rho_E with independent Ginibre marginals.
BipartiteState random_product(SeededGenerator& gen, Index d_s, Index d_e);

// Ginibre state on the composite space; correlated with probability one.
BipartiteState random_correlated(SeededGenerator& gen, Index d_s, Index d_e);

}  // namespace puritylens
