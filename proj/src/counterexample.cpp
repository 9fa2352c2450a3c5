#include <puritylens/counterexample.hpp>

#include <bit>
#include <cmath>
#include <string>

namespace puritylens {

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
using u128 = unsigned __int128;

// (a * b) mod m for m up to 2^127, via shift-and-add.
u128 mulmod(u128 a, u128 b, u128 m) {
  a %= m;
  u128 r = 0;
  while (b != 0) {
    if (b & 1) {
      r += a;
      if (r >= m) r -= m;
    }
    b >>= 1;
    a <<= 1;
    if (a >= m) a -= m;
  }
  return r;
}

u128 modpow(u128 base, std::uint64_t exp, u128 m) {
  base %= m;
  u128 r = 1 % m;
  while (exp != 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

void validate(const CounterexampleConfig& cfg) {
  if (cfg.truncation < 1) {
    throw InvariantError("counterexample truncation must be >= 1, got " +
                         std::to_string(cfg.truncation));
  }
  if (cfg.rule == EnergyRule::geometric && cfg.truncation > 150) {
    throw InvariantError(
        "geometric energy rule capped at N = 150; 25^n pi/4 leaves the "
        "double range (requested N = " +
        std::to_string(cfg.truncation) + ")");
  }
  if (cfg.rule == EnergyRule::custom) {
    if (static_cast<int>(cfg.custom_energies.size()) < cfg.truncation) {
      throw InvariantError("custom energy rule needs at least N energies");
    }
    for (double h : cfg.custom_energies) {
      if (!std::isfinite(h) || h < 0.0) {
        throw InvariantError("custom energies must be finite and >= 0");
      }
    }
  }
  if (!cfg.custom_weights.empty()) {
    if (static_cast<int>(cfg.custom_weights.size()) < cfg.truncation) {
      throw InvariantError("custom weights need at least N entries");
    }
    for (double p : cfg.custom_weights) {
      if (!std::isfinite(p) || p <= 0.0) {
        throw InvariantError("custom weights must be finite and > 0");
      }
    }
  }
}

std::vector<double> level_weights(const CounterexampleConfig& cfg) {
  validate(cfg);
  const int n_levels = cfg.truncation;
  std::vector<double> p(n_levels);
  if (cfg.custom_weights.empty()) {
    for (int n = 1; n <= n_levels; ++n) {
      p[n - 1] = std::ldexp(1.0, -n);  // 2^-n, exact
    }
  } else {
    for (int n = 0; n < n_levels; ++n) p[n] = cfg.custom_weights[n];
  }
  if (cfg.renormalize) {
    long double sum = 0.0L;
    for (double v : p) sum += v;
    for (double& v : p) v = static_cast<double>(v / sum);
  }
  return p;
}

std::vector<double> level_energies(const CounterexampleConfig& cfg) {
  validate(cfg);
  std::vector<double> h(cfg.truncation);
  switch (cfg.rule) {
    case EnergyRule::linear:
      for (int n = 1; n <= cfg.truncation; ++n) h[n - 1] = 0.25 * n;
      break;
    case EnergyRule::geometric: {
      long double power = 1.0L;
      for (int n = 1; n <= cfg.truncation; ++n) {
        power *= 25.0L;
        h[n - 1] = static_cast<double>(power * kPiL / 4.0L);
      }
      break;
    }
    case EnergyRule::custom:
      for (int n = 0; n < cfg.truncation; ++n) h[n] = cfg.custom_energies[n];
      break;
  }
  return h;
}

Eigen::Matrix4cd chi_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Eigen::Matrix4cd chi = Eigen::Matrix4cd::Zero();
  // Rows follow the (s1e1, s1e2, s2e1, s2e2) ordering.
  chi(0, 0) = s;          // chi_1 = (|s1e1> + i |s2e2>)/sqrt(2)
  chi(3, 0) = i * s;
  chi(2, 1) = 1.0;        // chi_2 = |s2e1>
  chi(1, 2) = 1.0;        // chi_3 = |s1e2>
  chi(0, 3) = s;          // chi_4 = (|s1e1> - i |s2e2>)/sqrt(2)
  chi(3, 3) = -i * s;
  return chi;
}

BipartiteState build_initial_state(const CounterexampleConfig& cfg) {
  const std::vector<double> p = level_weights(cfg);
  const Index n_levels = static_cast<Index>(p.size());
  const Index dim = 4 * n_levels;
  if (dim > dimension_guard()) {
    throw DimensionError("counterexample dimension 4N = " +
                         std::to_string(dim) + " exceeds the guard of " +
                         std::to_string(dimension_guard()));
  }
  Matrix rho = Matrix::Zero(dim, dim);
  for (Index n = 0; n < n_levels; ++n) {
    rho(4 * n, 4 * n) = p[n];  // |s1e1> slot of level n
  }
  return BipartiteState(DensityOperator(std::move(rho)), 2 * n_levels, 2);
}

Matrix build_hamiltonian(const CounterexampleConfig& cfg) {
  const std::vector<double> h = level_energies(cfg);
  const Index n_levels = static_cast<Index>(h.size());
  const Index dim = 4 * n_levels;
  if (dim > dimension_guard()) {
    throw DimensionError("counterexample dimension 4N = " +
                         std::to_string(dim) + " exceeds the guard of " +
                         std::to_string(dimension_guard()));
  }
  Matrix ham = Matrix::Zero(dim, dim);
  const Complex i(0.0, 1.0);
  for (Index n = 0; n < n_levels; ++n) {
    const Index b = 4 * n;
    const double hn = h[n];
    // h_n (I_4 + i |s1e1><s2e2| - i |s2e2><s1e1|): spectrum {0, h, h, 2h}.
    ham(b + 0, b + 0) = hn;
    ham(b + 1, b + 1) = hn;
    ham(b + 2, b + 2) = hn;
    ham(b + 3, b + 3) = hn;
    ham(b + 0, b + 3) = i * hn;
    ham(b + 3, b + 0) = -i * hn;
  }
  return ham;
}

PuritySeries simulate_truncated(const CounterexampleConfig& cfg,
                                std::span<const double> times) {
  const BipartiteState state = build_initial_state(cfg);
  const Matrix h_int = build_hamiltonian(cfg);
  const HamiltonianDecomposition h(Matrix::Zero(state.d_s, state.d_s),
                                   Matrix::Zero(state.d_e, state.d_e), h_int);
  return purity_series(state, h, times);
}

double cos_pi_power_multiple(std::uint64_t base, int power, double t) {
  if (base < 1) throw InvariantError("cos_pi_power_multiple: base must be >= 1");
  if (power < 0) throw InvariantError("cos_pi_power_multiple: power must be >= 0");
  if (!std::isfinite(t)) {
    throw InvariantError("cos_pi_power_multiple: time must be finite");
  }
  if (t == 0.0) return 1.0;
  const double x = std::fabs(t);
  int exp2 = 0;
  const double frac = std::frexp(x, &exp2);
  auto m = static_cast<std::uint64_t>(std::ldexp(frac, 53));  // x = m * 2^(exp2-53)
  int e = exp2 - 53;
  const int tz = std::countr_zero(m);
  m >>= tz;
  e += tz;  // m odd now
  const bool even_base = (base % 2 == 0) && power > 0;
  if (e >= 1) return 1.0;                    // multiplier is an even integer
  if (e == 0) return even_base ? 1.0 : -1.0;  // odd*odd stays odd
  const int q = -e;
  if (q <= 126) {
    const u128 modulus = u128{1} << (q + 1);
    const u128 r =
        mulmod(modpow(base, static_cast<std::uint64_t>(power), modulus),
               u128{m} % modulus, modulus);
    long double y = static_cast<long double>(r) /
                    static_cast<long double>(u128{1} << q);  // in [0, 2)
    if (y > 1.0L) y = 2.0L - y;
    return static_cast<double>(cosl(kPiL * y));
  }
  // Extreme subnormal scale: fall back to iterative (lossy) reduction.
  long double r = fmodl(static_cast<long double>(x), 2.0L);
  for (int j = 0; j < power; ++j) {
    r = fmodl(r * static_cast<long double>(base), 2.0L);
  }
  return static_cast<double>(cosl(kPiL * r));
}

namespace {

void validate_weierstrass_params(double a, int b) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw InvariantError("weierstrass amplitude a must lie in (0, 1)");
  }
  if (b < 1 || b % 2 == 0) {
    throw InvariantError("weierstrass frequency b must be an odd positive integer");
  }
}

}  // namespace

double weierstrass_f(double t, double a, int b, int terms) {
  validate_weierstrass_params(a, b);
  if (terms < 0) throw InvariantError("weierstrass_f: terms must be >= 0");
  long double sum = 0.0L;
  long double amp = 1.0L;
  for (int n = 0; n <= terms; ++n) {
    sum += amp * static_cast<long double>(
                     cos_pi_power_multiple(static_cast<std::uint64_t>(b), n, t));
    amp *= static_cast<long double>(a);
  }
  return static_cast<double>(sum);
}

bool weierstrass_nondifferentiable(double a, int b) {
  validate_weierstrass_params(a, b);
  return a * b > 1.0 + 1.5 * kPiL;
}

double purity_weierstrass_form(double t, int terms) {
  if (terms < 0) {
    throw InvariantError("purity_weierstrass_form: terms must be >= 0");
  }
  const double cos_pi_t = cos_pi_power_multiple(25, 0, t);
  return 0.25 * (1.0 - cos_pi_t + weierstrass_f(t, 0.25, 25, terms));
}

double analytic_purity(const CounterexampleConfig& cfg, double t) {
  const std::vector<double> p = level_weights(cfg);
  const std::vector<double> h = level_energies(cfg);
  long double p0 = 0.0L;
  long double osc = 0.0L;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const long double p2 =
        static_cast<long double>(p[n]) * static_cast<long double>(p[n]);
    p0 += p2;
    double c = 0.0;
    switch (cfg.rule) {
      case EnergyRule::linear:
        // 4 h_n t = n t; arguments stay in std::cos's exact-reduction range.
        c = std::cos(static_cast<double>(n + 1) * t);
        break;
      case EnergyRule::geometric:
        // 4 h_n t = 25^n pi t; exact modular reduction.
        c = cos_pi_power_multiple(25, static_cast<int>(n + 1), t);
        break;
      case EnergyRule::custom:
        c = std::cos(4.0 * h[n] * t);
        break;
    }
    osc += p2 * static_cast<long double>(c);
  }
  return static_cast<double>(0.75L * p0 + 0.25L * osc);
}

double truncation_tail_bound(const CounterexampleConfig& cfg) {
  validate(cfg);
  // Default weights p_n = 2^-n: sum_{n>N} 4^-n = 4^-N / 3.
  return std::ldexp(1.0, -2 * cfg.truncation) / 3.0;
}

std::vector<VarianceRow> variance_series(const CounterexampleConfig& cfg,
                                         int up_to_n) {
  validate(cfg);
  if (up_to_n < 1) {
    throw InvariantError("variance_series: up_to_n must be >= 1");
  }
  std::vector<VarianceRow> rows;
  rows.reserve(static_cast<std::size_t>(up_to_n));
  for (int n = 1; n <= up_to_n; ++n) {
    CounterexampleConfig c = cfg;
    c.truncation = n;
    const BipartiteState state = build_initial_state(c);
    const Matrix h = build_hamiltonian(c);
    const EnergyMoments m = energy_moments(state, h);
    rows.push_back({n, m.mean, m.variance});
  }
  return rows;
}

int probe_terms_required(int k_max) {
  if (k_max < 1) throw InvariantError("probe scales must be >= 1");
  // Tail-to-quotient ratio at scale k with N terms is 4^(k-N); k + 5 gives
  // 4^-5 < 1e-3.
  return k_max + 5;
}

std::vector<ProbeRow> nondiff_probe(const CounterexampleConfig& cfg, int terms,
                                    int k_max) {
  validate(cfg);
  if (k_max < 1 || k_max > 12) {
    throw InvariantError("probe scales k_max must lie in [1, 12]");
  }
  if (terms < probe_terms_required(k_max)) {
    throw InvariantError("nondiff_probe needs at least " +
                         std::to_string(probe_terms_required(k_max)) +
                         " terms for k_max = " + std::to_string(k_max));
  }
  CounterexampleConfig probe_cfg = cfg;
  probe_cfg.truncation = terms;
  if (probe_cfg.rule == EnergyRule::custom &&
      static_cast<int>(probe_cfg.custom_energies.size()) < terms) {
    throw InvariantError("custom energy rule needs at least `terms` energies");
  }
  const std::vector<double> p = level_weights(probe_cfg);
  const std::vector<double> h = level_energies(probe_cfg);

  std::vector<ProbeRow> rows;
  rows.reserve(static_cast<std::size_t>(k_max));
  std::int64_t den = 1;
  for (int k = 1; k <= k_max; ++k) {
    den *= 25;  // 25^k <= 25^12 < 2^63
    const long double hk = 1.0L / static_cast<long double>(den);
    long double diff = 0.0L;  // P(h_k) - P(0), term by term
    for (int n = 1; n <= terms; ++n) {
      const long double p2 = static_cast<long double>(p[n - 1]) *
                             static_cast<long double>(p[n - 1]);
      long double delta = 0.0L;  // cos(4 h_n t_k) - 1
      switch (probe_cfg.rule) {
        case EnergyRule::linear: {
          // cos(n / 25^k) - 1 = -2 sin^2(n / (2 * 25^k))
          const long double s = sinl(0.5L * static_cast<long double>(n) * hk);
          delta = -2.0L * s * s;
          break;
        }
        case EnergyRule::geometric: {
          if (n >= k) {
            // 25^(n-k) is an odd integer: cos(odd * pi) - 1 = -2 exactly.
            delta = -2.0L;
          } else {
            long double x = 1.0L;  // 25^(n-k) < 1
            for (int j = 0; j < k - n; ++j) x /= 25.0L;
            const long double s = sinl(0.5L * kPiL * x);
            delta = -2.0L * s * s;
          }
          break;
        }
        case EnergyRule::custom: {
          const long double s =
              sinl(2.0L * static_cast<long double>(h[n - 1]) * hk);
          delta = -2.0L * s * s;
          break;
        }
      }
      diff += 0.25L * p2 * delta;
    }
    const long double quotient = diff * static_cast<long double>(den);
    rows.push_back({k, static_cast<double>(hk), static_cast<double>(quotient)});
  }
  return rows;
}

}  // namespace puritylens
