#include "besov/haar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "besov/dyadic.hpp"

namespace besov {

void HaarIndex::validate() const {
  if (offset.empty()) throw std::invalid_argument("index needs >= 1 axis");
  if (kind == Kind::Scaling) {
    if (level != 0 || type != 0)
      throw std::invalid_argument("scaling indices live at level 0 with type 0");
    return;
  }
  if (level < 0 || level > kMaxLevel) throw std::invalid_argument("level out of range");
  if (type < 1 || type >= (1 << dim())) throw std::invalid_argument("type out of range");
}

HaarIndex HaarIndex::scaling(std::vector<long long> offset) {
  HaarIndex ix;
  ix.kind = Kind::Scaling;
  ix.offset = std::move(offset);
  ix.validate();
  return ix;
}

HaarIndex HaarIndex::wavelet(int type, int level, std::vector<long long> offset) {
  HaarIndex ix;
  ix.kind = Kind::Wavelet;
  ix.type = type;
  ix.level = level;
  ix.offset = std::move(offset);
  ix.validate();
  return ix;
}

void Box::validate() const {
  if (lo.size() != hi.size() || lo.empty()) throw std::invalid_argument("bad box");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw std::invalid_argument("box needs finite lo < hi");
}

Box Box::unit(int dim) { return shifted_unit(dim, 0.0); }

Box Box::shifted_unit(int dim, double shift) {
  Box b;
  b.lo.assign(dim, shift);
  b.hi.assign(dim, 1.0 + shift);
  b.validate();
  return b;
}

double haar_value(const HaarIndex& index, const std::vector<double>& x) {
  index.validate();
  if (x.size() != index.offset.size())
    throw std::invalid_argument("point dimension mismatch");
  const double scale = std::exp2(index.level);
  double value = 1.0;
  for (int k = 0; k < index.dim(); ++k) {
    const double u = x[k] * scale - static_cast<double>(index.offset[k]);
    if (u < 0.0 || u >= 1.0) return 0.0;
    if (index.kind == HaarIndex::Kind::Wavelet && ((index.type >> k) & 1))
      value *= (u < 0.5) ? 1.0 : -1.0;
  }
  if (index.kind == HaarIndex::Kind::Wavelet)
    value *= std::exp2(0.5 * index.level * index.dim());
  return value;
}

namespace {

double overlap(double a, double b, double c, double d) {
  return std::max(0.0, std::min(b, d) - std::max(a, c));
}

// Integral over [lo, hi) of the axis factor of the basis function on the
// level-`level` cell with offset m. step = true for the +/- half factor.
double axis_integral(double lo, double hi, int level, long long m, bool step) {
  const double side = std::exp2(-level);
  const double a = m * side;
  const double b = a + side;
  if (!step) return overlap(lo, hi, a, b);
  const double mid = a + 0.5 * side;
  return overlap(lo, hi, a, mid) - overlap(lo, hi, mid, b);
}

}  // namespace

double box_coefficient(const Box& box, const HaarIndex& index) {
  box.validate();
  index.validate();
  if (box.dim() != index.dim()) throw std::invalid_argument("box dimension mismatch");
  double value = 1.0;
  for (int k = 0; k < index.dim(); ++k) {
    const bool step =
        index.kind == HaarIndex::Kind::Wavelet && ((index.type >> k) & 1);
    value *= axis_integral(box.lo[k], box.hi[k], index.level, index.offset[k], step);
    if (value == 0.0) return 0.0;
  }
  if (index.kind == HaarIndex::Kind::Wavelet)
    value *= std::exp2(0.5 * index.level * index.dim());
  return value;
}

namespace {

struct AxisCandidates {
  std::vector<long long> offsets;
  std::vector<double> integrals;
};

// Offsets on one axis that can give a nonzero factor. For the step factor
// only cells straddling a box edge qualify (interior cells cancel,
// exterior cells vanish), which keeps the visit count per level
// proportional to the box surface, not its volume.
AxisCandidates axis_candidates(double lo, double hi, int level, bool step) {
  AxisCandidates out;
  const double scale = std::exp2(level);
  auto push = [&](long long m) {
    double g = axis_integral(lo, hi, level, m, step);
    if (g != 0.0) {
      out.offsets.push_back(m);
      out.integrals.push_back(g);
    }
  };
  if (step) {
    long long first = static_cast<long long>(std::floor(lo * scale));
    long long second = static_cast<long long>(std::floor(hi * scale));
    push(first);
    if (second != first) push(second);
    return out;
  }
  long long m0 = static_cast<long long>(std::floor(lo * scale));
  long long m1 = static_cast<long long>(std::ceil(hi * scale));
  for (long long m = m0; m < m1; ++m) push(m);
  return out;
}

}  // namespace

CoefficientField analyze_box(const Box& box, int max_level) {
  box.validate();
  if (max_level < 0 || max_level > kMaxLevel)
    throw std::invalid_argument("max_level out of range");
  const int n = box.dim();
  CoefficientField field(n);

  auto emit_product = [&](const std::vector<AxisCandidates>& axes, double norm,
                          auto&& store) {
    double count = 1.0;
    for (const auto& ax : axes) count *= static_cast<double>(ax.offsets.size());
    if (count > (1 << 24)) throw std::invalid_argument("box too large to analyze");
    if (count == 0.0) return;
    std::vector<std::size_t> idx(n, 0);
    std::vector<long long> offset(n);
    while (true) {
      double g = norm;
      for (int k = 0; k < n; ++k) {
        offset[k] = axes[k].offsets[idx[k]];
        g *= axes[k].integrals[idx[k]];
      }
      if (g != 0.0) store(offset, g);
      int axis = n - 1;
      while (axis >= 0) {
        if (++idx[axis] < axes[axis].offsets.size()) break;
        idx[axis] = 0;
        --axis;
      }
      if (axis < 0) return;
    }
  };

  {
    std::vector<AxisCandidates> axes(n);
    for (int k = 0; k < n; ++k) axes[k] = axis_candidates(box.lo[k], box.hi[k], 0, false);
    emit_product(axes, 1.0, [&](const std::vector<long long>& off, double g) {
      field.set_scaling(off, g);
    });
  }

  for (int j = 0; j <= max_level; ++j) {
    const double norm = std::exp2(0.5 * j * n);
    // Candidate-count bound per axis, checked before anything is
    // enumerated so an oversized request cannot allocate first.
    const double scale = std::exp2(j);
    std::vector<double> ind_count(n);
    for (int k = 0; k < n; ++k)
      ind_count[k] =
          std::ceil(box.hi[k] * scale) - std::floor(box.lo[k] * scale);
    for (int type = 1; type < (1 << n); ++type) {
      double bound = 1.0;
      for (int k = 0; k < n; ++k)
        bound *= ((type >> k) & 1) ? 2.0 : ind_count[k];
      if (bound > (1 << 24))
        throw std::invalid_argument("box too large to analyze");
      std::vector<AxisCandidates> axes(n);
      for (int k = 0; k < n; ++k)
        axes[k] = axis_candidates(box.lo[k], box.hi[k], j, (type >> k) & 1);
      emit_product(axes, norm, [&](const std::vector<long long>& off, double g) {
        field.set_wavelet(type, j, off, g);
      });
    }
  }
  return field;
}

CoefficientField analyze_step(const DyadicStepFunction& f, int max_level) {
  if (f.resolution < 0 || f.resolution > kMaxLevel)
    throw std::invalid_argument("resolution out of range");
  if (max_level < 0) throw std::invalid_argument("max_level out of range");
  const int n = f.dim;
  CoefficientField field(n);

  // Cell integrals at the finest level, then one reduction per level:
  // the parent integral is the child sum, and the wavelet coefficients
  // are signed child combinations.
  std::map<std::vector<long long>, double> integrals;
  const double cellvol = f.cell_volume();
  for (const auto& [cell, v] : f.values)
    if (v != 0.0) integrals[cell] = v * cellvol;

  for (int lvl = f.resolution; lvl > 0; --lvl) {
    const int parent_level = lvl - 1;
    std::map<std::vector<long long>, std::vector<double>> groups;
    std::vector<long long> up(n);
    for (const auto& [cell, integral] : integrals) {
      int child = 0;
      for (int k = 0; k < n; ++k) {
        up[k] = floor_shift(cell[k], 1);
        child |= static_cast<int>(cell[k] & 1) << k;
      }
      auto [it, fresh] = groups.try_emplace(up);
      if (fresh) it->second.assign(std::size_t{1} << n, 0.0);
      it->second[child] += integral;
    }

    integrals.clear();
    const double norm = std::exp2(0.5 * parent_level * n);
    for (const auto& [parent, childs] : groups) {
      double total = 0.0;
      for (double c : childs) total += c;
      if (total != 0.0) integrals[parent] = total;
      if (parent_level > max_level) continue;
      for (int type = 1; type < (1 << n); ++type) {
        double t = 0.0;
        for (int c = 0; c < (1 << n); ++c) {
          int sign_bits = c & type;
          t += (std::popcount(static_cast<unsigned>(sign_bits)) % 2 ? -1.0 : 1.0) *
               childs[c];
        }
        if (t != 0.0) field.set_wavelet(type, parent_level, parent, t * norm);
      }
    }
  }

  for (const auto& [cell, integral] : integrals) field.set_scaling(cell, integral);
  return field;
}

namespace {

DyadicStepFunction partial_sum_impl(const CoefficientField& field, int top_level,
                                    int resolution, const CellBox& cells) {
  if (resolution < 0 || resolution > kMaxLevel)
    throw std::invalid_argument("resolution out of range");
  const int deepest_wavelet = std::min(top_level, field.max_level());
  if (resolution <= deepest_wavelet)
    throw std::invalid_argument(
        "grid resolution must exceed the deepest wavelet level");
  const int n = field.dim();
  if (cells.dim() != n) throw std::invalid_argument("cell box dimension mismatch");

  DyadicStepFunction out;
  out.dim = n;
  out.resolution = resolution;
  if (cells.empty()) return out;

  double count = 1.0;
  for (int k = 0; k < n; ++k)
    count *= static_cast<double>(cells.hi[k] - cells.lo[k]) * std::exp2(resolution);
  if (count > (1 << 24)) throw std::invalid_argument("grid too large");

  std::vector<long long> cell(n), look(n);
  for (int k = 0; k < n; ++k) cell[k] = cells.lo[k] << resolution;
  while (true) {
    // Scaling layer: the level-0 cell containing this grid cell.
    for (int k = 0; k < n; ++k) look[k] = floor_shift(cell[k], resolution);
    double v = field.scaling(look);
    // Wavelet layers: one containing cube per level, sign from the
    // half-cell bit on each step axis.
    for (int j = 0; j <= deepest_wavelet; ++j) {
      auto lvl_it = field.wavelet_levels().find(j);
      if (lvl_it == field.wavelet_levels().end()) continue;
      const int shift = resolution - j;
      for (int k = 0; k < n; ++k) look[k] = floor_shift(cell[k], shift);
      const double norm = std::exp2(0.5 * j * n);
      for (int type = 1; type < (1 << n); ++type) {
        auto it = lvl_it->second.find(std::make_pair(type, look));
        if (it == lvl_it->second.end()) continue;
        double sign = 1.0;
        for (int k = 0; k < n; ++k) {
          if (!((type >> k) & 1)) continue;
          if (floor_shift(cell[k], shift - 1) & 1) sign = -sign;
        }
        v += it->second * sign * norm;
      }
    }
    if (v != 0.0) out.values[cell] = v;

    int axis = n - 1;
    while (axis >= 0) {
      if (++cell[axis] < cells.hi[axis] << resolution) break;
      cell[axis] = cells.lo[axis] << resolution;
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

}  // namespace

DyadicStepFunction partial_sum(const CoefficientField& field, int top_level,
                               int resolution, const CellBox& cells) {
  return partial_sum_impl(field, top_level, resolution, cells);
}

DyadicStepFunction partial_sum(const CoefficientField& field, int top_level,
                               int resolution) {
  CellBox cells;
  CoefficientField::Offset lo, hi;
  if (!field.support_box(lo, hi)) {
    lo.assign(field.dim(), 0);
    hi.assign(field.dim(), 1);
  }
  cells.lo = lo;
  cells.hi = hi;
  return partial_sum_impl(field, top_level, resolution, cells);
}

double pair_with_box(const CoefficientField& field, const Box& box, int top_level) {
  box.validate();
  if (box.dim() != field.dim()) throw std::invalid_argument("box dimension mismatch");
  double sum = 0.0;
  for (const auto& [off, v] : field.scaling_entries())
    sum += v * box_coefficient(box, HaarIndex::scaling(off));
  for (const auto& [lvl, entries] : field.wavelet_levels()) {
    if (lvl > top_level) break;
    for (const auto& [key, v] : entries)
      sum += v * box_coefficient(box, HaarIndex::wavelet(key.first, lvl, key.second));
  }
  return sum;
}

}  // namespace besov
