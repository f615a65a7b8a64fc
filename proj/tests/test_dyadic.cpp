#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "besov/dyadic.hpp"
#include "doctest.h"

using besov::construct_distributed_cubes;
using besov::contains;
using besov::DistributedCubeSet;
using besov::DyadicCube;
using besov::floor_shift;
using besov::verify_distribution_bounds;

TEST_CASE("floor_shift floors toward minus infinity") {
  CHECK(floor_shift(7, 1) == 3);
  CHECK(floor_shift(5, 0) == 5);
  CHECK(floor_shift(-1, 1) == -1);
  CHECK(floor_shift(-4, 2) == -1);
  CHECK(floor_shift(-7, 2) == -2);
  CHECK(floor_shift(-8, 3) == -1);
  CHECK(floor_shift(-9, 3) == -2);
  CHECK(floor_shift(0, 40) == 0);
}

TEST_CASE("cube geometry") {
  DyadicCube q(1, {0, 0});
  CHECK(q.dim() == 2);
  CHECK(q.side() == doctest::Approx(0.5));
  CHECK(q.volume() == doctest::Approx(0.25));

  DyadicCube big(-2, {0});
  CHECK(big.side() == doctest::Approx(4.0));
  CHECK(big.volume() == doctest::Approx(4.0));

  DyadicCube big3(-2, {0, 0, 0});
  CHECK(big3.volume() == doctest::Approx(64.0));

  CHECK_THROWS_AS(DyadicCube(63, {0}), std::invalid_argument);
  CHECK_THROWS_AS(DyadicCube(-63, {0}), std::invalid_argument);
  CHECK_THROWS_AS(DyadicCube(0, {}), std::invalid_argument);
}

TEST_CASE("containment on frozen cases") {
  DyadicCube outer(1, {0, 1});
  CHECK(contains(DyadicCube(2, {1, 2}), outer));
  CHECK(contains(DyadicCube(2, {0, 3}), outer));
  CHECK_FALSE(contains(DyadicCube(2, {2, 1}), outer));
  CHECK_FALSE(contains(DyadicCube(2, {1, 1}), outer));

  // Equal cubes contain each other; a coarser cube is never inside a finer one.
  CHECK(contains(outer, outer));
  CHECK(contains(DyadicCube(2, {0}), DyadicCube(1, {0})));
  CHECK_FALSE(contains(DyadicCube(1, {0}), DyadicCube(2, {0})));

  // Negative offsets and negative levels.
  CHECK(contains(DyadicCube(0, {-1}), DyadicCube(-1, {-1})));
  CHECK(contains(DyadicCube(0, {-2}), DyadicCube(-1, {-1})));
  CHECK_FALSE(contains(DyadicCube(0, {1}), DyadicCube(-1, {-1})));
  CHECK_FALSE(contains(DyadicCube(0, {-3}), DyadicCube(-1, {-1})));

  CHECK_THROWS_AS(contains(DyadicCube(0, {0}), DyadicCube(0, {0, 0})),
                  std::invalid_argument);
}

TEST_CASE("containment is a partial order on random cubes") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> dim_d(1, 3);
  std::uniform_int_distribution<int> lvl_d(-3, 6);
  std::uniform_int_distribution<long long> off_d(-5, 5);

  auto random_cube = [&](int dim) {
    std::vector<long long> off(dim);
    for (auto& o : off) o = off_d(rng);
    return DyadicCube(lvl_d(rng), std::move(off));
  };
  // A guaranteed descendant: refine `base` by `extra` levels, then pick a
  // child offset inside the refined block.
  auto random_descendant = [&](const DyadicCube& base, int extra) {
    std::vector<long long> off(base.offset.size());
    for (std::size_t k = 0; k < off.size(); ++k) {
      std::uniform_int_distribution<long long> pick(0, (1LL << extra) - 1);
      off[k] = (base.offset[k] << extra) + pick(rng);
    }
    return DyadicCube(base.level + extra, std::move(off));
  };

  for (int trial = 0; trial < 500; ++trial) {
    const int dim = dim_d(rng);
    DyadicCube a = random_cube(dim);
    std::uniform_int_distribution<int> extra_d(0, 4);
    DyadicCube b = random_descendant(a, extra_d(rng));
    DyadicCube c = random_descendant(b, extra_d(rng));
    DyadicCube u = random_cube(dim);

    // Reflexive.
    CHECK(contains(a, a));
    CHECK(contains(u, u));
    // Constructed chains are transitive end to end.
    CHECK(contains(b, a));
    CHECK(contains(c, b));
    CHECK(contains(c, a));
    // Antisymmetric: mutual containment forces identical cubes.
    if (contains(a, u) && contains(u, a)) {
      CHECK(a.level == u.level);
      CHECK(a.offset == u.offset);
    }
    // Transitive with an unrelated third cube.
    if (contains(u, c)) CHECK(contains(u, a));
  }
}

TEST_CASE("distributed cube sets have exact cardinality") {
  // floor(2^(level*alpha)) members, lexicographically sorted, inside the grid.
  for (int dim : {1, 2, 3}) {
    for (double alpha : {0.3, 0.5, 1.0, 1.5}) {
      if (alpha >= dim) continue;
      for (int level : {0, 1, 3, 5}) {
        auto set = construct_distributed_cubes(dim, alpha, level);
        const auto expect =
            static_cast<long long>(std::floor(std::exp2(level * alpha)));
        CHECK(set.cardinality() == expect);
        CHECK(std::is_sorted(set.members.begin(), set.members.end()));
        for (const auto& m : set.members) {
          REQUIRE(static_cast<int>(m.size()) == dim);
          for (auto v : m) {
            CHECK(v >= 0);
            CHECK(v < (1LL << level));
          }
        }
      }
    }
  }
}

TEST_CASE("distributed cube set frozen example") {
  auto set = construct_distributed_cubes(2, 1.0, 3);
  CHECK(set.cardinality() == 8);
  CHECK(set.c_tilde == doctest::Approx(4.0));  // max(1, (4 + 2 - 2)/(2 - 1))

  auto report = verify_distribution_bounds(set);
  CHECK(report.pass);
  for (const auto& lvl : report.levels) {
    CHECK(lvl.balance_ok);
    CHECK(lvl.pinning_ok);
    if (lvl.coarse_level == 1) {
      CHECK(lvl.corner_count >= 4);
      CHECK(lvl.corner_count <= 16);
    }
  }

  auto tiny = construct_distributed_cubes(2, 1.0, 1);
  CHECK(tiny.cardinality() == 2);
  CHECK(verify_distribution_bounds(tiny).pass);
}

TEST_CASE("distribution bounds hold across the parameter grid") {
  for (int dim : {1, 2, 3}) {
    for (double alpha : {0.3, 0.5, 1.0, 1.5}) {
      if (alpha >= dim) continue;
      for (int level : {2, 4, 6}) {
        auto set = construct_distributed_cubes(dim, alpha, level);
        auto report = verify_distribution_bounds(set);
        CAPTURE(dim);
        CAPTURE(alpha);
        CAPTURE(level);
        CHECK(report.pass);
      }
    }
  }
}

TEST_CASE("distributed cube construction is deterministic") {
  auto a = construct_distributed_cubes(3, 1.5, 4);
  auto b = construct_distributed_cubes(3, 1.5, 4);
  CHECK(a.members == b.members);
}

TEST_CASE("distributed cube construction rejects bad input") {
  CHECK_THROWS_AS(construct_distributed_cubes(1, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_distributed_cubes(2, 0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_distributed_cubes(2, -0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_distributed_cubes(0, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(construct_distributed_cubes(2, 1.0, -1), std::invalid_argument);
}
