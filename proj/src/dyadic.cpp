#include "besov/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace besov {

namespace {

void check_level(int level) {
  if (level > kMaxLevel || level < -kMaxLevel)
    throw std::invalid_argument("cube level out of range");
}

// floor(2^x) computed once through exp2 so that construction and
// verification always agree on the rounding of fractional powers.
long long floor_exp2(double x) {
  return static_cast<long long>(std::floor(std::exp2(x)));
}

}  // namespace

DyadicCube::DyadicCube(int lvl, std::vector<long long> off)
    : level(lvl), offset(std::move(off)) {
  check_level(level);
  if (offset.empty()) throw std::invalid_argument("cube needs >= 1 axis");
}

double DyadicCube::side() const { return std::exp2(-static_cast<double>(level)); }

double DyadicCube::volume() const {
  return std::exp2(-static_cast<double>(level) * dim());
}

std::string DyadicCube::to_string() const {
  std::ostringstream os;
  os << "Q_{" << level << ",(";
  for (int i = 0; i < dim(); ++i) os << (i ? "," : "") << offset[i];
  os << ")}";
  return os.str();
}

long long floor_shift(long long a, int shift) {
  // Arithmetic right shift rounds toward -inf for negative a as well,
  // which is exactly the ancestor-offset map we need.
  return a >> shift;
}

bool contains(const DyadicCube& inner, const DyadicCube& outer) {
  if (inner.dim() != outer.dim())
    throw std::invalid_argument("containment needs equal dimensions");
  check_level(inner.level);
  check_level(outer.level);
  if (inner.level < outer.level) return false;
  const int shift = inner.level - outer.level;
  for (int i = 0; i < inner.dim(); ++i)
    if (floor_shift(inner.offset[i], shift) != outer.offset[i]) return false;
  return true;
}

namespace {

// Places `count` members inside the cube of side 2^r cells whose lowest
// cell is `base`, spreading them as evenly as possible: the count is split
// near-equally over the 2^dim child cubes (lexicographically earlier
// children absorb the remainder) and the split recurses down to cells.
void fill_balanced(const std::vector<long long>& base, int r, long long count,
                   int dim, std::vector<std::vector<long long>>& out) {
  if (count == 0) return;
  if (r == 0) {
    out.push_back(base);
    return;
  }
  const long long nchild = 1LL << dim;
  const long long quota = count / nchild;
  const long long rem = count % nchild;
  for (long long c = 0; c < nchild; ++c) {
    long long take = quota + (c < rem ? 1 : 0);
    if (take == 0) continue;
    std::vector<long long> child = base;
    for (int i = 0; i < dim; ++i)
      if ((c >> (dim - 1 - i)) & 1) child[i] += 1LL << (r - 1);
    fill_balanced(child, r - 1, take, dim, out);
  }
}

}  // namespace

DistributedCubeSet construct_distributed_cubes(int dim, double alpha, int level) {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (!(alpha > 0.0) || !(alpha < dim))
    throw std::invalid_argument("alpha must lie in (0, dim)");
  if (level < 0 || level > kMaxLevel)
    throw std::invalid_argument("level out of range");
  if (level * alpha > 40.0)
    throw std::invalid_argument("cube set too large to enumerate");

  DistributedCubeSet set;
  set.dim = dim;
  set.alpha = alpha;
  set.level = level;
  set.c_tilde =
      std::max(1.0, (std::exp2(dim) + std::exp2(alpha) - 2.0) / (std::exp2(alpha) - 1.0));

  // Corner member first; shells double the covered cube from level `level`
  // up to level 1, keeping the corner count pinned to floor(2^(r*alpha)).
  set.members.push_back(std::vector<long long>(dim, 0));
  for (int J = level; J >= 1; --J) {
    const int r = level - J;
    const long long have = floor_exp2(r * alpha);
    const long long want = floor_exp2((r + 1) * alpha);
    long long need = want - have;
    if (need <= 0) continue;
    const long long nsib = (1LL << dim) - 1;
    const long long quota = need / nsib;
    const long long rem = need % nsib;
    // Siblings of the corner cube inside its parent, lexicographic order.
    for (long long c = 1; c <= nsib; ++c) {
      long long take = quota + (c <= rem ? 1 : 0);
      if (take == 0) continue;
      std::vector<long long> base(dim, 0);
      for (int i = 0; i < dim; ++i)
        if ((c >> (dim - 1 - i)) & 1) base[i] = 1LL << r;
      fill_balanced(base, r, take, dim, set.members);
    }
  }
  std::sort(set.members.begin(), set.members.end());
  return set;
}

DistributionReport verify_distribution_bounds(const DistributedCubeSet& set) {
  DistributionReport report;
  report.pass = true;

  const long long expected = static_cast<long long>(std::floor(std::exp2(set.level * set.alpha)));
  if (set.cardinality() != expected) report.pass = false;

  for (int J = 0; J <= set.level; ++J) {
    const int shift = set.level - J;
    std::map<std::vector<long long>, long long> buckets;
    std::vector<long long> ancestor(set.dim);
    for (const auto& m : set.members) {
      for (int i = 0; i < set.dim; ++i) ancestor[i] = floor_shift(m[i], shift);
      ++buckets[ancestor];
    }

    DistributionLevelCheck check;
    check.coarse_level = J;
    const std::vector<long long> corner(set.dim, 0);
    auto it = buckets.find(corner);
    check.corner_count = (it == buckets.end()) ? 0 : it->second;
    for (const auto& [off, cnt] : buckets) {
      if (cnt > check.max_count) {
        check.max_count = cnt;
        check.max_offset = off;
      }
    }
    check.pin_lower = static_cast<long long>(std::floor(std::exp2(shift * set.alpha)));
    check.pin_upper = set.c_tilde * std::exp2(shift * set.alpha);
    check.balance_ok = check.max_count <= 2 * check.corner_count;
    check.pinning_ok = check.pin_lower <= check.corner_count &&
                       static_cast<double>(check.corner_count) <= check.pin_upper;
    if (!check.balance_ok || !check.pinning_ok) report.pass = false;
    report.levels.push_back(std::move(check));
  }
  return report;
}

}  // namespace besov
