#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace besov {

// Half-open dyadic cube 2^-level * ([0,1)^n + offset).
// Negative levels mean cubes larger than the unit cube. |level| <= 62 so
// that all containment arithmetic stays inside 64-bit integers.
struct DyadicCube {
  int level = 0;
  std::vector<long long> offset;

  DyadicCube() = default;
  DyadicCube(int lvl, std::vector<long long> off);

  int dim() const { return static_cast<int>(offset.size()); }
  double side() const;
  // Volume exponent: |Q| = 2^(-level*dim).
  double volume() const;
  std::string to_string() const;
};

inline constexpr int kMaxLevel = 62;

// True iff inner is a subset of outer (cubes of the same dimension).
// Exact integer arithmetic; equal cubes contain each other.
bool contains(const DyadicCube& inner, const DyadicCube& outer);

// floor(a / 2^shift) for possibly negative a.
long long floor_shift(long long a, int shift);

// A family of level-j offsets concentrated near the origin corner:
// floor(2^(level*alpha)) cubes distributed so that every dyadic cube
// Q_{J,K} holds at most twice as many members as the corner cube Q_{J,0},
// while the corner count stays pinned between floor(2^((level-J)*alpha))
// and c_tilde * 2^((level-J)*alpha).
struct DistributedCubeSet {
  int dim = 1;
  double alpha = 0.5;
  int level = 0;
  double c_tilde = 1.0;
  std::vector<std::vector<long long>> members;  // sorted lexicographically

  long long cardinality() const { return static_cast<long long>(members.size()); }
};

struct DistributionLevelCheck {
  int coarse_level = 0;            // J
  long long corner_count = 0;      // members inside Q_{J,0}
  long long max_count = 0;         // max over all K of members inside Q_{J,K}
  std::vector<long long> max_offset;
  long long pin_lower = 0;         // floor(2^((level-J)*alpha))
  double pin_upper = 0.0;          // c_tilde * 2^((level-J)*alpha)
  bool balance_ok = false;         // max_count <= 2*corner_count
  bool pinning_ok = false;         // pin_lower <= corner_count <= pin_upper
};

struct DistributionReport {
  bool pass = false;
  std::vector<DistributionLevelCheck> levels;
};

// Deterministic construction. Requires 0 < alpha < dim, 0 <= level, and a
// resulting cardinality small enough to enumerate.
DistributedCubeSet construct_distributed_cubes(int dim, double alpha, int level);

// Exhaustive check of the balance and pinning bounds at every coarse level.
// Offsets K with no members hold trivially and are not listed.
DistributionReport verify_distribution_bounds(const DistributedCubeSet& set);

}  // namespace besov
