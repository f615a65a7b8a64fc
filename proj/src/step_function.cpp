#include "besov/step_function.hpp"

#include <cmath>
#include <stdexcept>

namespace besov {

double DyadicStepFunction::cell_volume() const {
  return std::exp2(-static_cast<double>(resolution) * dim);
}

double DyadicStepFunction::integral() const {
  double sum = 0.0;
  for (const auto& [cell, v] : values) sum += v;
  return sum * cell_volume();
}

double DyadicStepFunction::squared_integral() const {
  double sum = 0.0;
  for (const auto& [cell, v] : values) sum += v * v;
  return sum * cell_volume();
}

double DyadicStepFunction::value_at(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("point dimension mismatch");
  std::vector<long long> cell(dim);
  const double scale = std::exp2(resolution);
  for (int i = 0; i < dim; ++i) cell[i] = static_cast<long long>(std::floor(x[i] * scale));
  auto it = values.find(cell);
  return it == values.end() ? 0.0 : it->second;
}

DyadicStepFunction DyadicStepFunction::refined(int new_resolution) const {
  if (new_resolution < resolution)
    throw std::invalid_argument("refinement must not coarsen");
  if (new_resolution == resolution) return *this;
  const int s = new_resolution - resolution;
  DyadicStepFunction out;
  out.dim = dim;
  out.resolution = new_resolution;
  std::vector<long long> child(dim);
  for (const auto& [cell, v] : values) {
    // Enumerate the 2^(s*dim) subcells.
    std::vector<long long> idx(dim, 0);
    while (true) {
      for (int i = 0; i < dim; ++i) child[i] = (cell[i] << s) + idx[i];
      out.values[child] = v;
      int axis = dim - 1;
      while (axis >= 0) {
        if (++idx[axis] < (1LL << s)) break;
        idx[axis] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
  }
  return out;
}

DyadicStepFunction DyadicStepFunction::indicator(int resolution,
                                                 const std::vector<long long>& lo,
                                                 const std::vector<long long>& hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw std::invalid_argument("bad indicator box");
  DyadicStepFunction out;
  out.dim = static_cast<int>(lo.size());
  out.resolution = resolution;
  std::vector<long long> cell = lo;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] >= hi[i]) return out;
  while (true) {
    out.values[cell] = 1.0;
    int axis = out.dim - 1;
    while (axis >= 0) {
      if (++cell[axis] < hi[axis]) break;
      cell[axis] = lo[axis];
      --axis;
    }
    if (axis < 0) break;
  }
  return out;
}

}  // namespace besov
