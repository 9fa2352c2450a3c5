#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <puritylens/sampling.hpp>

#include <cmath>

using namespace puritylens;

TEST_CASE("identical seeds reproduce identical draw sequences") {
  SeededGenerator a(4242), b(4242);
  for (int i = 0; i < 32; ++i) {
    CHECK(a.gaussian() == b.gaussian());
  }
  const Matrix ha = random_hermitian(a, 5, 1.0);
  const Matrix hb = random_hermitian(b, 5, 1.0);
  CHECK((ha - hb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("child streams are independent of sibling consumption") {
  SeededGenerator root(7);
  SeededGenerator first_child = root.child(3);
  const double probe = first_child.gaussian();

  SeededGenerator root2(7);
  SeededGenerator sibling = root2.child(1);
  (void)sibling.gaussian();  // consuming a sibling must not shift child(3)
  SeededGenerator second_child = root2.child(3);
  CHECK(second_child.gaussian() == probe);
}

TEST_CASE("different seeds decorrelate") {
  SeededGenerator a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.gaussian() == b.gaussian()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("random_hermitian is exactly Hermitian and norm-capped") {
  SeededGenerator gen(301);
  for (int trial = 0; trial < 20; ++trial) {
    const Index dim = 1 + trial % 6;
    const double cap = 0.5 + 0.25 * (trial % 4);
    const Matrix h = random_hermitian(gen, dim, cap);
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(operator_norm(h, true) <= cap * (1.0 + 1e-12));
    CHECK(operator_norm(h, true) >= cap * (1.0 - 1e-12));
  }
}

TEST_CASE("random_hermitian at dimension 1 is a bounded real scalar") {
  SeededGenerator gen(307);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix h = random_hermitian(gen, 1, 2.0);
    CHECK(h(0, 0).imag() == 0.0);
    CHECK(std::fabs(h(0, 0).real()) <= 2.0 + 1e-12);
  }
}

TEST_CASE("random_density draws valid states of the expected mixedness") {
  SeededGenerator gen(311);
  const Matrix scalar = random_density(gen, 1).matrix();
  CHECK(scalar(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));

  double purity_sum = 0.0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const DensityOperator rho = random_density(gen, 2);  // ctor validates
    purity_sum += purity(rho);
  }
  // Ginibre-induced qubit states have mean purity 0.8.
  const double mean_purity = purity_sum / trials;
  CHECK(mean_purity > 0.7);
  CHECK(mean_purity < 0.9);
}

TEST_CASE("random_pure draws rank-one projectors") {
  SeededGenerator gen(313);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator psi = random_pure(gen, 5);
    CHECK(purity(psi) == doctest::Approx(1.0).epsilon(1e-12));
    const RealVector lambda = hermitian_eigen(psi.matrix()).eigenvalues;
    CHECK(lambda(lambda.size() - 2) <= 1e-12);  // second-largest eigenvalue
  }
}

TEST_CASE("bipartite pure states have matching marginal spectra") {
  SeededGenerator gen(317);
  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteState psi(random_pure(gen, 9), 3, 3);
    const RealVector s =
        hermitian_eigen(partial_trace(psi, TraceSide::over_environment).matrix())
            .eigenvalues;
    const RealVector e =
        hermitian_eigen(partial_trace(psi, TraceSide::over_system).matrix())
            .eigenvalues;
    CHECK((s - e).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("random_product is uncorrelated by construction") {
  SeededGenerator gen(331);
  for (int trial = 0; trial < 20; ++trial) {
    const BipartiteState rho = random_product(gen, 2, 3);
    CHECK(trace_norm(correlation_operator(rho).matrix, true) <= 1e-12);
    CHECK(mutual_information(rho) <= 1e-9);
    const double joint = purity(rho.rho_tot);
    const double split =
        purity(partial_trace(rho, TraceSide::over_environment)) *
        purity(partial_trace(rho, TraceSide::over_system));
    CHECK(std::fabs(joint - split) <= 1e-10);
  }
}

TEST_CASE("random_correlated carries genuine correlations") {
  SeededGenerator gen(337);
  int correlated = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const BipartiteState rho = random_correlated(gen, 2, 2);
    if (mutual_information(rho) > 1e-6) ++correlated;
  }
  CHECK(correlated >= trials * 99 / 100);
}

TEST_CASE("sampler rejects degenerate parameters") {
  SeededGenerator gen(347);
  CHECK_THROWS_AS(random_density(gen, 0), DimensionError);
  CHECK_THROWS_AS(random_hermitian(gen, 3, 0.0), InvariantError);
  CHECK_THROWS_AS(gen.uniform_int(3, 1), InvariantError);
}
