#include "besov/diffnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "besov/dyadic.hpp"

namespace besov {

void DifferenceGrid::validate() const {
  if (t_values.empty()) throw std::invalid_argument("empty t grid");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    if (!(t > 0.0) || t > 2.0) throw std::invalid_argument("t out of (0, 2]");
    if (t != std::exp2(std::round(std::log2(t))))
      throw std::invalid_argument("t values must be powers of two");
    if (i > 0 && t >= t_values[i - 1])
      throw std::invalid_argument("t values must strictly decrease");
  }
  if (h_samples_per_shell < 1) throw std::invalid_argument("need >= 1 h sample");
  if (order < 1) throw std::invalid_argument("difference order must be >= 1");
}

std::vector<double> DifferenceGrid::shell_magnitudes(double t) const {
  std::vector<double> out;
  out.reserve(h_samples_per_shell);
  for (int k = 0; k < h_samples_per_shell; ++k)
    out.push_back(t * (1.0 - std::exp2(-(k + 1))));
  return out;
}

DifferenceGrid DifferenceGrid::octaves(int count, int h_samples, int order) {
  if (count < 1) throw std::invalid_argument("need >= 1 octave");
  DifferenceGrid g;
  for (int k = 1; k <= count; ++k) g.t_values.push_back(std::exp2(-k));
  g.h_samples_per_shell = h_samples;
  g.order = order;
  g.validate();
  return g;
}

double lp_tau_norm(const DyadicStepFunction& f, double p, double tau) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("tau must be finite and nonnegative");
  if (f.values.empty()) return 0.0;

  if (is_inf(p)) {
    double top = 0.0;
    for (const auto& [cell, v] : f.values) top = std::max(top, std::abs(v));
    return top;  // attained already at a unit cube around the largest cell
  }

  const double cellvol = f.cell_volume();
  std::map<std::vector<long long>, double> masses;
  std::vector<long long> key(f.dim);
  for (const auto& [cell, v] : f.values) {
    if (v == 0.0) continue;
    for (int k = 0; k < f.dim; ++k) key[k] = floor_shift(cell[k], f.resolution);
    masses[key] += std::pow(std::abs(v), p) * cellvol;
  }
  if (masses.empty()) return 0.0;

  double best = 0.0;
  for (int level = 0;; --level) {
    for (const auto& [cube, mass] : masses)
      best = std::max(best, std::exp2(level * f.dim * tau) *
                                std::pow(mass, 1.0 / p));
    if (masses.size() == 1 || level <= -kMaxLevel) break;
    std::map<std::vector<long long>, double> up;
    for (const auto& [cube, mass] : masses) {
      std::vector<long long> parent(f.dim);
      for (int k = 0; k < f.dim; ++k) parent[k] = floor_shift(cube[k], 1);
      up[parent] += mass;
    }
    masses.swap(up);
  }
  return best;
}

namespace {

double binom(int m, int j) {
  double v = 1.0;
  for (int i = 1; i <= j; ++i) v = v * (m - i + 1) / i;
  return v;
}

double clip_len(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

}  // namespace

double difference_power_integral(const DyadicStepFunction& f, int axis,
                                 double step, int order, double p,
                                 const std::vector<double>& lo,
                                 const std::vector<double>& hi) {
  if (axis < 0 || axis >= f.dim) throw std::invalid_argument("axis out of range");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (static_cast<int>(lo.size()) != f.dim || static_cast<int>(hi.size()) != f.dim)
    throw std::invalid_argument("box dimension mismatch");

  std::vector<double> coeff(order + 1);
  for (int j = 0; j <= order; ++j)
    coeff[j] = (j % 2 ? -1.0 : 1.0) * binom(order, j);

  const double side = std::exp2(-f.resolution);
  // Group the cells into columns along `axis`; the difference only moves
  // breakpoints along that one axis, so each column is a 1-D sweep.
  std::map<std::vector<long long>, std::vector<std::pair<long long, double>>>
      columns;
  for (const auto& [cell, v] : f.values) {
    if (v == 0.0) continue;
    std::vector<long long> key;
    key.reserve(f.dim - 1);
    for (int k = 0; k < f.dim; ++k)
      if (k != axis) key.push_back(cell[k]);
    columns[std::move(key)].emplace_back(cell[axis], v);
  }

  const bool sup_mode = is_inf(p);
  double total = 0.0;
  double top = 0.0;
  std::vector<std::pair<double, double>> events;
  for (auto& [key, cells] : columns) {
    double transverse = 1.0;
    {
      int k = 0;
      for (int d = 0; d < f.dim; ++d) {
        if (d == axis) continue;
        const double a = key[k] * side;
        transverse *= clip_len(a, a + side, lo[d], hi[d]);
        ++k;
      }
    }
    if (transverse == 0.0) continue;

    events.clear();
    for (const auto& [c, v] : cells) {
      const double a = c * side;
      for (int j = 0; j <= order; ++j) {
        const double shift = (order - j) * step;
        events.emplace_back(a - shift, coeff[j] * v);
        events.emplace_back(a + side - shift, -coeff[j] * v);
      }
    }
    std::sort(events.begin(), events.end());
    double value = 0.0;
    for (std::size_t i = 0; i < events.size();) {
      const double x0 = events[i].first;
      while (i < events.size() && events[i].first == x0) value += events[i++].second;
      if (i == events.size()) break;
      const double seg = clip_len(x0, events[i].first, lo[axis], hi[axis]);
      if (seg == 0.0) continue;
      if (sup_mode)
        top = std::max(top, std::abs(value));
      else
        total += std::pow(std::abs(value), p) * seg * transverse;
    }
  }
  return sup_mode ? top : total;
}

namespace {

struct RealBox {
  std::vector<double> lo, hi;
};

double cube_seminorm_value(const DyadicStepFunction& f, const BesovParams& params,
                           const DifferenceGrid& grid, int level,
                           const std::vector<long long>& offset) {
  const int n = f.dim;
  const double side = std::exp2(-level);
  RealBox box;
  box.lo.resize(n);
  box.hi.resize(n);
  for (int k = 0; k < n; ++k) {
    box.lo[k] = offset[k] * side;
    box.hi[k] = box.lo[k] + side;
  }
  const double t_cap = 2.0 * std::min(side, 1.0);

  double qsum = 0.0;
  double qsup = 0.0;
  bool any = false;
  for (double t : grid.t_values) {
    if (t > t_cap) continue;
    double best = 0.0;
    for (double mag : grid.shell_magnitudes(t)) {
      for (int axis = 0; axis < n; ++axis) {
        for (double sign : {-1.0, 1.0}) {
          const double integral = difference_power_integral(
              f, axis, sign * mag, grid.order, params.p, box.lo, box.hi);
          best = std::max(best, integral);
        }
      }
    }
    const double lp = is_inf(params.p) ? best : std::pow(best, params.inv_p());
    any = true;
    if (is_inf(params.q))
      qsup = std::max(qsup, std::pow(t, -params.s) * lp);
    else
      qsum += std::pow(t, -params.s * params.q) * std::pow(lp, params.q) *
              std::numbers::ln2;
  }
  if (!any) return 0.0;
  const double inner =
      is_inf(params.q) ? qsup : std::pow(qsum, params.inv_q());
  return std::exp2(level * n * params.tau) * inner;
}

}  // namespace

double difference_seminorm(const DyadicStepFunction& f, const BesovParams& params,
                           const DifferenceGrid& grid) {
  params.validate();
  grid.validate();
  if (f.values.empty()) return 0.0;
  const int n = f.dim;
  if (n != params.n) throw std::invalid_argument("dimension mismatch");

  const double side = std::exp2(-f.resolution);
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  for (const auto& [cell, v] : f.values) {
    for (int k = 0; k < n; ++k) {
      lo[k] = std::min(lo[k], cell[k] * side);
      hi[k] = std::max(hi[k], (cell[k] + 1) * side);
    }
  }
  const double pad = grid.order * grid.t_values.front();
  for (int k = 0; k < n; ++k) {
    lo[k] -= pad;
    hi[k] += pad;
  }

  // Deepest useful level: below it the t-range 0 < t <= 2 side(P) has no
  // grid point left.
  const double t_min = grid.t_values.back();
  const int max_level =
      static_cast<int>(std::floor(1.0 - std::log2(t_min)));
  // Coarsest useful level: once one cube contains the padded support the
  // prefactor only decays.
  int min_level = 0;
  while (min_level > -kMaxLevel) {
    const double s = std::exp2(-min_level);
    bool covered = true;
    for (int k = 0; k < n; ++k)
      if (std::floor(lo[k] / s) != std::floor((hi[k] - 0.5 * side) / s))
        covered = false;
    if (covered) break;
    --min_level;
  }

  double best = 0.0;
  for (int level = min_level; level <= max_level; ++level) {
    const double s = std::exp2(-level);
    double count = 1.0;
    std::vector<long long> first(n), last(n);
    for (int k = 0; k < n; ++k) {
      first[k] = static_cast<long long>(std::floor(lo[k] / s));
      last[k] = static_cast<long long>(std::ceil(hi[k] / s)) - 1;
      count *= static_cast<double>(last[k] - first[k] + 1);
    }
    if (count > (1 << 22)) throw std::invalid_argument("difference grid too large");
    std::vector<long long> offset = first;
    while (true) {
      best = std::max(best, cube_seminorm_value(f, params, grid, level, offset));
      int axis = n - 1;
      while (axis >= 0) {
        if (++offset[axis] <= last[axis]) break;
        offset[axis] = first[axis];
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return best;
}

DivergenceWitnessReport chi_divergence_witness(const BesovParams& params,
                                               const DifferenceGrid& grid) {
  params.validate();
  grid.validate();
  if (params.s != params.inv_p())
    throw std::invalid_argument("witness needs s = 1/p");
  const double n = params.n;
  if (!(params.p > (n - 1.0) / n))
    throw std::invalid_argument("witness needs p > (n-1)/n");

  DyadicStepFunction chi = DyadicStepFunction::indicator(
      0, std::vector<long long>(params.n, 0), std::vector<long long>(params.n, 1));
  const std::vector<double> lo(params.n, 0.0);
  const std::vector<double> hi(params.n, 1.0);

  DivergenceWitnessReport report;
  const double qip = is_inf(params.q) ? 0.0 : params.q * params.inv_p();
  double running = 0.0;
  for (double t : grid.t_values) {
    report.t_values.push_back(t);
    report.witness_integrals.push_back(difference_power_integral(
        chi, 0, -0.5 * t, grid.order, params.p, lo, hi));
    double sup = 0.0;
    for (double mag : grid.shell_magnitudes(t)) {
      for (int axis = 0; axis < params.n; ++axis) {
        for (double sign : {-1.0, 1.0}) {
          sup = std::max(sup, difference_power_integral(chi, axis, sign * mag,
                                                        grid.order, params.p, lo,
                                                        hi));
        }
      }
    }
    report.shell_sups.push_back(sup);
    if (is_inf(params.q)) {
      // t^(-1/p) (t/2)^(1/p) = 2^(-1/p): the running sup is flat.
      running = std::max(running, std::exp2(-params.inv_p()));
    } else {
      running += std::numbers::ln2 * std::exp2(-qip);
    }
    report.partial_sums.push_back(running);
  }
  report.slope_per_octave =
      is_inf(params.q) ? 0.0 : std::numbers::ln2 * std::exp2(-qip);
  return report;
}

}  // namespace besov
