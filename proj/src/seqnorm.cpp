#include "besov/seqnorm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "besov/dyadic.hpp"

namespace besov {

void EnumerationPolicy::validate(int dim) const {
  if (min_level > 0 || max_level < 0)
    throw std::invalid_argument("policy needs min_level <= 0 <= max_level");
  if (min_level < -kMaxLevel || max_level > kMaxLevel)
    throw std::invalid_argument("policy level out of range");
  if (window.dim() != dim) throw std::invalid_argument("policy window dimension mismatch");
}

EnumerationPolicy EnumerationPolicy::covering(const CoefficientField& field,
                                              int max_level) {
  EnumerationPolicy policy;
  policy.max_level = std::max(0, max_level);
  CoefficientField::Offset lo, hi;
  if (!field.support_box(lo, hi)) {
    lo.assign(field.dim(), 0);
    hi.assign(field.dim(), 1);
  }
  policy.window.lo = lo;
  policy.window.hi = hi;
  // Negative and nonnegative cells never share a dyadic ancestor, so ask
  // only that each side of the origin collapse to one ancestor per axis;
  // deeper cubes then enlarge |P| without gaining coefficients, and the
  // sup cannot move.
  int lvl = 0;
  while (lvl > -kMaxLevel) {
    bool settled = true;
    for (int i = 0; i < field.dim() && settled; ++i) {
      const long long a = lo[i], b = hi[i] - 1;
      if (a < 0)
        settled = floor_shift(a, -lvl) == floor_shift(std::min(b, -1LL), -lvl);
      if (settled && b >= 0)
        settled = floor_shift(std::max(a, 0LL), -lvl) == floor_shift(b, -lvl);
    }
    if (settled) break;
    --lvl;
  }
  policy.min_level = lvl;
  return policy;
}

namespace {

// True iff the cube at (level, offset) meets the window box.
bool cube_meets_window(int level, const std::vector<long long>& offset,
                       const CellBox& window) {
  for (int i = 0; i < static_cast<int>(offset.size()); ++i) {
    long long lo = window.lo[i], hi = window.hi[i];
    if (level >= 0) {
      if (offset[i] >= hi << level || offset[i] < lo << level) return false;
    } else {
      const int s = -level;
      if (offset[i] << s >= hi || (offset[i] + 1) << s <= lo) return false;
    }
  }
  return true;
}

// Per-ancestor accumulator: sorted (key, value) pairs with key = (j<<8)|i,
// value = sum of |t|^p (finite p) or max |t| (p = inf) over descendants.
using Acc = std::vector<std::pair<int, double>>;

void merge_into(Acc& dst, const Acc& src, bool p_finite) {
  Acc merged;
  merged.reserve(dst.size() + src.size());
  std::size_t a = 0, b = 0;
  while (a < dst.size() || b < src.size()) {
    if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
      merged.push_back(dst[a++]);
    } else if (a == dst.size() || src[b].first < dst[a].first) {
      merged.push_back(src[b++]);
    } else {
      double v = p_finite ? dst[a].second + src[b].second
                          : std::max(dst[a].second, src[b].second);
      merged.emplace_back(dst[a].first, v);
      ++a;
      ++b;
    }
  }
  dst = std::move(merged);
}

// Combines the per-(i,j) magnitudes of one outer cube into its norm value,
// working with base-2 logs so that extreme weights stay representable.
double combine_cube(const Acc& acc, const BesovParams& params, int cube_level) {
  const double e = params.s + params.n / 2.0 - params.n * params.inv_p();
  const bool p_finite = !is_inf(params.p);
  const double prefix = cube_level * params.n * params.tau;  // log2 |P|^-tau

  double max_log = -kInf;
  std::vector<double> logs;
  logs.reserve(acc.size());
  for (const auto& [key, raw] : acc) {
    if (raw <= 0.0) {
      logs.push_back(-kInf);
      continue;
    }
    const int j = key >> 8;
    const double log_m = p_finite ? std::log2(raw) * params.inv_p() : std::log2(raw);
    const double lg = j * e + log_m;
    logs.push_back(lg);
    max_log = std::max(max_log, lg);
  }
  if (max_log == -kInf) return 0.0;

  if (is_inf(params.q)) return std::exp2(prefix + max_log);

  double sum = 0.0;
  for (double lg : logs)
    if (lg != -kInf) sum += std::exp2(params.q * (lg - max_log));
  return std::exp2(prefix + max_log + std::log2(sum) / params.q);
}

double wavelet_magnitude(double value, const BesovParams& params) {
  return is_inf(params.p) ? std::fabs(value) : std::pow(std::fabs(value), params.p);
}

}  // namespace

double b_norm(const CoefficientField& field, const BesovParams& params,
              const EnumerationPolicy& policy) {
  params.validate();
  policy.validate(field.dim());
  if (policy.window.empty()) return 0.0;

  const int deepest = std::min(field.max_level(), policy.max_level);
  if (deepest < 0) return 0.0;
  const bool p_finite = !is_inf(params.p);

  std::map<std::vector<long long>, Acc> nodes;
  double best = 0.0;
  for (int lvl = deepest; lvl >= policy.min_level; --lvl) {
    // Entries whose own cube sits at this level join the aggregation.
    if (lvl >= 0) {
      auto it = field.wavelet_levels().find(lvl);
      if (it != field.wavelet_levels().end()) {
        for (const auto& [key, value] : it->second) {
          Acc leaf{{(lvl << 8) | key.first, wavelet_magnitude(value, params)}};
          merge_into(nodes[key.second], leaf, p_finite);
        }
      }
    }
    for (const auto& [offset, acc] : nodes)
      if (cube_meets_window(lvl, offset, policy.window))
        best = std::max(best, combine_cube(acc, params, lvl));
    if (lvl == policy.min_level) break;

    std::map<std::vector<long long>, Acc> parents;
    for (auto& [offset, acc] : nodes) {
      std::vector<long long> up(offset.size());
      for (std::size_t i = 0; i < offset.size(); ++i) up[i] = floor_shift(offset[i], 1);
      auto [it, fresh] = parents.try_emplace(std::move(up), std::move(acc));
      if (!fresh) merge_into(it->second, acc, p_finite);
    }
    nodes = std::move(parents);
  }
  return best;
}

namespace {

// Scaling-layer sup: same bottom-up walk, but a single accumulator per
// cube and no level weights. Only cubes of level <= 0 can hold level-0
// cells, so the walk starts there.
double scaling_layer_sup(const CoefficientField& field, const BesovParams& params,
                         const EnumerationPolicy& policy) {
  if (field.scaling_entries().empty() || policy.window.empty()) return 0.0;
  const bool p_finite = !is_inf(params.p);

  std::map<std::vector<long long>, double> nodes;
  for (const auto& [offset, value] : field.scaling_entries()) {
    double mag = wavelet_magnitude(value, params);
    auto [it, fresh] = nodes.try_emplace(offset, mag);
    if (!fresh) it->second = p_finite ? it->second + mag : std::max(it->second, mag);
  }

  double best = 0.0;
  for (int lvl = 0; lvl >= policy.min_level; --lvl) {
    for (const auto& [offset, acc] : nodes) {
      if (!cube_meets_window(lvl, offset, policy.window)) continue;
      double base = p_finite ? std::pow(acc, params.inv_p()) : acc;
      best = std::max(best, std::exp2(lvl * params.n * params.tau) * base);
    }
    if (lvl == policy.min_level) break;
    std::map<std::vector<long long>, double> parents;
    for (const auto& [offset, acc] : nodes) {
      std::vector<long long> up(offset.size());
      for (std::size_t i = 0; i < offset.size(); ++i) up[i] = floor_shift(offset[i], 1);
      auto [it, fresh] = parents.try_emplace(std::move(up), acc);
      if (!fresh) it->second = p_finite ? it->second + acc : std::max(it->second, acc);
    }
    nodes = std::move(parents);
  }
  return best;
}

}  // namespace

double lambda_star_norm(const CoefficientField& field, const BesovParams& params,
                        const EnumerationPolicy& policy) {
  params.validate();
  policy.validate(field.dim());
  return scaling_layer_sup(field, params, policy) + b_norm(field, params, policy);
}

namespace {

// Enumerates every cube of `level` meeting the window, invoking fn(offset).
// Throws if the window holds too many cubes to visit.
template <typename Fn>
void for_each_cube(const CellBox& window, int level, Fn&& fn) {
  const int dim = window.dim();
  std::vector<long long> lo(dim), hi(dim);  // inclusive..exclusive offsets
  double total = 1.0;
  for (int i = 0; i < dim; ++i) {
    if (level >= 0) {
      lo[i] = window.lo[i] << level;
      hi[i] = window.hi[i] << level;
    } else {
      lo[i] = floor_shift(window.lo[i], -level);
      hi[i] = floor_shift(window.hi[i] - 1, -level) + 1;
    }
    total *= static_cast<double>(hi[i] - lo[i]);
  }
  if (total > (1 << 24))
    throw std::invalid_argument("window too large for brute-force enumeration");
  std::vector<long long> off = lo;
  while (true) {
    fn(off);
    int axis = dim - 1;
    while (axis >= 0) {
      if (++off[axis] < hi[axis]) break;
      off[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) return;
  }
}

bool offset_inside(const std::vector<long long>& m, int j,
                   const std::vector<long long>& P, int level) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (floor_shift(m[i], j - level) != P[i]) return false;
  return true;
}

}  // namespace

double brute_force_norm(const CoefficientField& field, const BesovParams& params,
                        const EnumerationPolicy& policy) {
  params.validate();
  policy.validate(field.dim());
  if (policy.window.empty()) return 0.0;
  const bool p_finite = !is_inf(params.p);
  const bool q_finite = !is_inf(params.q);
  const double e = params.s + params.n / 2.0 - params.n * params.inv_p();

  double best = 0.0;
  for (int level = policy.min_level; level <= policy.max_level; ++level) {
    for_each_cube(policy.window, level, [&](const std::vector<long long>& P) {
      // inner magnitudes per (type, level j)
      std::map<std::pair<int, int>, double> inner;
      for (const auto& [j, entries] : field.wavelet_levels()) {
        if (j > policy.max_level || j < level) continue;
        for (const auto& [key, value] : entries) {
          if (!offset_inside(key.second, j, P, level)) continue;
          double mag = p_finite ? std::pow(std::fabs(value), params.p) : std::fabs(value);
          auto [it, fresh] = inner.try_emplace({j, key.first}, mag);
          if (!fresh) it->second = p_finite ? it->second + mag : std::max(it->second, mag);
        }
      }
      if (inner.empty()) return;
      double max_log = -kInf;
      std::vector<double> logs;
      for (const auto& [jk, raw] : inner) {
        if (raw <= 0.0) continue;
        double log_m = p_finite ? std::log2(raw) / params.p : std::log2(raw);
        logs.push_back(jk.first * e + log_m);
        max_log = std::max(max_log, logs.back());
      }
      if (max_log == -kInf) return;
      double value;
      if (q_finite) {
        double sum = 0.0;
        for (double lg : logs) sum += std::exp2(params.q * (lg - max_log));
        value = std::exp2(level * params.n * params.tau + max_log +
                          std::log2(sum) / params.q);
      } else {
        value = std::exp2(level * params.n * params.tau + max_log);
      }
      best = std::max(best, value);
    });
  }
  return best;
}

double brute_force_lambda_star(const CoefficientField& field, const BesovParams& params,
                               const EnumerationPolicy& policy) {
  params.validate();
  policy.validate(field.dim());
  if (policy.window.empty()) return 0.0;
  const bool p_finite = !is_inf(params.p);

  double best = 0.0;
  for (int level = policy.min_level; level <= 0; ++level) {
    for_each_cube(policy.window, level, [&](const std::vector<long long>& P) {
      double acc = 0.0;
      bool any = false;
      for (const auto& [m, value] : field.scaling_entries()) {
        if (!offset_inside(m, 0, P, level)) continue;
        any = true;
        acc = p_finite ? acc + std::pow(std::fabs(value), params.p)
                       : std::max(acc, std::fabs(value));
      }
      if (!any) return;
      double base = p_finite ? std::pow(acc, params.inv_p()) : acc;
      best = std::max(best, std::exp2(level * params.n * params.tau) * base);
    });
  }
  return best + brute_force_norm(field, params, policy);
}

}  // namespace besov
