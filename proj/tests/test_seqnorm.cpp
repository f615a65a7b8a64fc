#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "besov/coefficient_field.hpp"
#include "besov/params.hpp"
#include "besov/seqnorm.hpp"
#include "doctest.h"

using besov::b_norm;
using besov::BesovParams;
using besov::brute_force_lambda_star;
using besov::brute_force_norm;
using besov::CoefficientField;
using besov::EnumerationPolicy;
using besov::kInf;
using besov::lambda_star_norm;
using besov::read_coefficients_csv;
using besov::write_coefficients_csv;

namespace {

CoefficientField single_wavelet(int dim, int level, double value) {
  CoefficientField f(dim);
  f.set_wavelet(1, level, std::vector<long long>(dim, 0), value);
  return f;
}

BesovParams make_params(double s, double p, double q, double tau, int n) {
  BesovParams prm;
  prm.s = s;
  prm.p = p;
  prm.q = q;
  prm.tau = tau;
  prm.n = n;
  return prm;
}

// Small random field over [roughly] the unit cube, every inner sum holding
// few enough terms that finite-p comparisons stay tight.
CoefficientField random_field(std::mt19937_64& rng, int dim, int max_level,
                              int entries) {
  CoefficientField f(dim);
  std::uniform_int_distribution<int> lvl(0, max_level);
  std::uniform_int_distribution<int> type(1, (1 << dim) - 1);
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_int_distribution<int> scal(0, 3);
  for (int i = 0; i < entries; ++i) {
    const int j = lvl(rng);
    std::uniform_int_distribution<long long> off(-2, (3LL << j) - 1);
    std::vector<long long> m(dim);
    for (auto& v : m) v = off(rng);
    double t = val(rng);
    if (t == 0.0) t = 0.5;
    f.add_wavelet(type(rng), j, m, t);
  }
  for (int i = 0; i < 2; ++i) {
    std::vector<long long> m(dim);
    for (auto& v : m) v = scal(rng);
    f.set_scaling(m, val(rng));
  }
  return f;
}

const std::vector<BesovParams> kParamGrid = {
    make_params(0.5, 2, 2, 0.0, 1),   make_params(0.0, 1, 1, 0.25, 1),
    make_params(-0.5, 0.5, 2, 0.0, 1), make_params(1.0, kInf, 2, 0.1, 1),
    make_params(0.5, 2, kInf, 0.5, 1), make_params(0.25, 2, 2, 0.0, 2),
    make_params(0.0, 0.5, 1, 0.3, 2),  make_params(1.5, 4, 0.5, 0.0, 2),
    make_params(-1.0, 2, 2, 0.7, 2),   make_params(0.5, kInf, kInf, 0.2, 2),
};

}  // namespace

TEST_CASE("coefficient field stores sparsely") {
  CoefficientField f(2);
  CHECK(f.num_types() == 3);
  CHECK(f.wavelet(1, 0, {0, 0}) == 0.0);

  f.set_wavelet(2, 3, {1, 2}, 0.75);
  CHECK(f.wavelet(2, 3, {1, 2}) == 0.75);
  CHECK(f.wavelet_count() == 1);
  CHECK(f.max_level() == 3);

  f.set_wavelet(2, 3, {1, 2}, 0.0);  // exact zero erases
  CHECK(f.wavelet_count() == 0);
  CHECK(f.max_level() == -1);

  f.set_scaling({-1, 4}, 2.0);
  f.add_scaling({-1, 4}, -2.0);  // cancels away
  CHECK(f.scaling_count() == 0);

  CHECK_THROWS_AS(f.set_wavelet(4, 0, {0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(f.set_wavelet(0, 0, {0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(f.set_wavelet(1, -1, {0, 0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(f.set_scaling({0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(f.set_scaling({0, 0}, std::nan("")), std::invalid_argument);

  std::vector<long long> lo, hi;
  CHECK_FALSE(f.support_box(lo, hi));
  f.set_wavelet(1, 1, {3, -2}, 1.0);  // cell block [1,2) x [-1,0) at level 0
  f.set_scaling({4, 4}, 1.0);
  REQUIRE(f.support_box(lo, hi));
  CHECK(lo == std::vector<long long>{1, -1});
  CHECK(hi == std::vector<long long>{5, 5});
}

TEST_CASE("norm of a single coefficient is the bare weight") {
  // Level 0: every weight power is 2^0, so the norm is the magnitude.
  auto f = single_wavelet(1, 0, 1.0);
  auto policy = EnumerationPolicy::covering(f, 0);
  for (const auto& prm : kParamGrid) {
    if (prm.n != 1) continue;
    CHECK(b_norm(f, prm, policy) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Level 4 with s + n/2 - n/p = 1/2: weight 2^2.
  auto g = single_wavelet(1, 4, 1.0);
  auto prm = make_params(0.5, 2, 2, 0.0, 1);
  CHECK(b_norm(g, prm, EnumerationPolicy::covering(g, 4)) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Morrey prefactor localizes at the coefficient cube") {
  // Single coefficient at level 2, zero weight exponent: the sup is
  // |Q_{2,0}|^(-tau) = 2^(2 tau).
  auto f = single_wavelet(1, 2, 1.0);
  auto prm = make_params(0.0, 2, 2, 0.5, 1);
  CHECK(b_norm(f, prm, EnumerationPolicy::covering(f, 2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("inner sums aggregate in p and q") {
  CoefficientField f(1);
  f.set_wavelet(1, 0, {0}, 3.0);
  f.set_wavelet(1, 0, {1}, 4.0);
  auto policy = EnumerationPolicy::covering(f, 0);
  CHECK(b_norm(f, make_params(0, 2, 2, 0, 1), policy) ==
        doctest::Approx(5.0).epsilon(1e-12));
  CHECK(b_norm(f, make_params(0, kInf, 2, 0, 1), policy) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(b_norm(f, make_params(0, 1, 2, 0, 1), policy) ==
        doctest::Approx(7.0).epsilon(1e-12));

  // q = inf takes the sup of the weighted level values.
  CoefficientField g(1);
  g.set_wavelet(1, 0, {0}, 1.0);
  g.set_wavelet(1, 3, {0}, 1.0);
  auto prm = make_params(0.5, 2, kInf, 0.0, 1);
  CHECK(b_norm(g, prm, EnumerationPolicy::covering(g, 3)) ==
        doctest::Approx(std::exp2(1.5)).epsilon(1e-12));
}

TEST_CASE("scaling layer enters the lambda-star norm") {
  CoefficientField f(1);
  for (long long m = 0; m < 4; ++m) f.set_scaling({m}, 1.0);

  auto p0 = make_params(0.0, 2, 2, 0.0, 1);
  CHECK(lambda_star_norm(f, p0, EnumerationPolicy::covering(f, 0)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // tau = 1/4, p = 2: the sup over P in {Q_0, Q_-1, Q_-2} is at Q_-2,
  // value 4^(1/2) * 4^(-1/4) = sqrt 2.
  auto p1 = make_params(0.0, 2, 2, 0.25, 1);
  CHECK(lambda_star_norm(f, p1, EnumerationPolicy::covering(f, 0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // Wavelet layers are unaffected by scaling entries in b_norm.
  CHECK(b_norm(f, p1, EnumerationPolicy::covering(f, 0)) == 0.0);
}

TEST_CASE("optimized evaluators match brute force on random fields") {
  std::mt19937_64 rng(0x5eed5eedULL);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 1 + (trial % 2);
    auto f = random_field(rng, dim, 3, 8);
    const auto& prm_base = kParamGrid[trial % kParamGrid.size()];
    auto prm = prm_base;
    prm.n = dim;
    auto policy = EnumerationPolicy::covering(f, 4);
    const double fast = b_norm(f, prm, policy);
    const double slow = brute_force_norm(f, prm, policy);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
    const double fast_star = lambda_star_norm(f, prm, policy);
    const double slow_star = brute_force_lambda_star(f, prm, policy);
    CHECK(fast_star == doctest::Approx(slow_star).epsilon(1e-9));
  }
}

TEST_CASE("norms are monotone nonincreasing in q") {
  std::mt19937_64 rng(1234);
  const double qs[] = {0.5, 1.0, 2.0, 8.0, kInf};
  for (int trial = 0; trial < 30; ++trial) {
    const int dim = 1 + (trial % 2);
    auto f = random_field(rng, dim, 3, 8);
    auto policy = EnumerationPolicy::covering(f, 3);
    auto prm = make_params(0.25, 2.0, 1.0, 0.25 * (trial % 3), dim);
    double prev = -1.0;
    for (double q : qs) {
      prm.q = q;
      const double v = b_norm(f, prm, policy);
      if (prev >= 0.0) CHECK(v <= prev * (1.0 + 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("norms scale linearly with the coefficients") {
  std::mt19937_64 rng(99);
  auto f = random_field(rng, 2, 3, 10);
  CoefficientField g(2);
  const double c = -2.5;
  for (const auto& [m, v] : f.scaling_entries()) g.set_scaling(m, c * v);
  for (const auto& [j, entries] : f.wavelet_levels())
    for (const auto& [key, v] : entries)
      g.set_wavelet(key.first, j, key.second, c * v);

  auto policy = EnumerationPolicy::covering(f, 3);
  for (const auto& base : kParamGrid) {
    auto prm = base;
    prm.n = 2;
    CHECK(b_norm(g, prm, policy) ==
          doctest::Approx(std::abs(c) * b_norm(f, prm, policy)).epsilon(1e-12));
    CHECK(lambda_star_norm(g, prm, policy) ==
          doctest::Approx(std::abs(c) * lambda_star_norm(f, prm, policy))
              .epsilon(1e-12));
  }
}

TEST_CASE("raising the level cutoff never decreases the norm") {
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_field(rng, 1, 5, 10);
    auto prm = kParamGrid[trial % kParamGrid.size()];
    prm.n = 1;
    double prev = 0.0;
    for (int jmax = 0; jmax <= 5; ++jmax) {
      const double v = b_norm(f, prm, EnumerationPolicy::covering(f, jmax));
      CHECK(v >= prev * (1.0 - 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("the sup localizes once a cube covers the support") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + (trial % 2);
    auto f = random_field(rng, dim, 3, 6);
    auto prm = kParamGrid[trial % kParamGrid.size()];
    prm.n = dim;
    auto policy = EnumerationPolicy::covering(f, 3);
    const double base = b_norm(f, prm, policy);
    const double base_star = lambda_star_norm(f, prm, policy);
    for (int deeper = 1; deeper <= 3; ++deeper) {
      auto wide = policy;
      wide.min_level = policy.min_level - deeper;
      CHECK(b_norm(f, prm, wide) == doctest::Approx(base).epsilon(1e-12));
      CHECK(lambda_star_norm(f, prm, wide) ==
            doctest::Approx(base_star).epsilon(1e-12));
    }
  }
}

TEST_CASE("large finite p approximates p = inf") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_field(rng, 1, 3, 8);
    auto policy = EnumerationPolicy::covering(f, 3);
    auto prm64 = make_params(0.25, 64.0, 2.0, 0.25, 1);
    auto prm_inf = make_params(0.25, kInf, 2.0, 0.25, 1);
    const double v64 = b_norm(f, prm64, policy);
    const double vinf = b_norm(f, prm_inf, policy);
    // Inner sums dominate the sup but the weight 2^(j(s + n/2 - n/p))
    // loses a factor up to 2^(-max_level * n / p) against p = inf.
    CHECK(v64 >= vinf * std::exp2(-3.0 / 64.0) * (1.0 - 1e-12));
    CHECK(v64 <= vinf * 1.05);
  }
}

TEST_CASE("coefficient CSV round-trips byte for byte") {
  std::mt19937_64 rng(2718);
  auto f = random_field(rng, 2, 4, 12);
  f.set_wavelet(3, 2, {-7, 9}, 1.0 / 3.0);
  f.set_scaling({-3, 0}, 1e-17);

  std::ostringstream first;
  write_coefficients_csv(f, first);
  std::istringstream in(first.str());
  auto g = read_coefficients_csv(in);
  std::ostringstream second;
  write_coefficients_csv(g, second);
  CHECK(first.str() == second.str());

  CHECK(g.dim() == f.dim());
  CHECK(g.scaling_entries() == f.scaling_entries());
  CHECK(g.wavelet_levels() == f.wavelet_levels());
}
