#pragma once

#include <map>
#include <vector>

namespace besov {

// Piecewise-constant function on the dyadic grid of cells with side
// 2^-resolution. Only nonzero cells are stored.
struct DyadicStepFunction {
  int dim = 1;
  int resolution = 0;
  std::map<std::vector<long long>, double> values;

  double cell_volume() const;
  double integral() const;
  double squared_integral() const;
  // Value at a point (cells are half-open).
  double value_at(const std::vector<double>& x) const;
  // Same function represented on a finer grid.
  DyadicStepFunction refined(int new_resolution) const;
  // Indicator of an axis-aligned dyadic box given in cell coordinates.
  static DyadicStepFunction indicator(int resolution, const std::vector<long long>& lo,
                                      const std::vector<long long>& hi);
};

}  // namespace besov
