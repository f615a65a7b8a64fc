#pragma once

#include <vector>

#include "besov/coefficient_field.hpp"
#include "besov/seqnorm.hpp"
#include "besov/step_function.hpp"

namespace besov {

// One member of the inhomogeneous tensor Haar system on R^n:
// either a level-0 scaling indicator X_{0,m}, or a wavelet
// h_{i,j,m} = 2^(jn/2) h_i(2^j . - m). The type i in [1, 2^n - 1] selects
// per axis k (bit k of i) between the step factor (bit 1) and the
// indicator factor (bit 0); the step factor is +1 on the first half of
// its cell and -1 on the second.
struct HaarIndex {
  enum class Kind { Scaling, Wavelet };
  Kind kind = Kind::Scaling;
  int type = 0;  // 0 for scaling
  int level = 0;
  std::vector<long long> offset;

  int dim() const { return static_cast<int>(offset.size()); }
  void validate() const;

  static HaarIndex scaling(std::vector<long long> offset);
  static HaarIndex wavelet(int type, int level, std::vector<long long> offset);
};

// Axis-aligned half-open box with real endpoints.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  void validate() const;
  static Box unit(int dim);
  static Box shifted_unit(int dim, double shift);
};

// Pointwise value of the basis function.
double haar_value(const HaarIndex& index, const std::vector<double>& x);

// Exact integral of the basis function over the box, via per-axis
// interval overlaps.
double box_coefficient(const Box& box, const HaarIndex& index);

// All scaling coefficients and all wavelet coefficients with level
// <= max_level of the box indicator. Only cubes that can carry a nonzero
// value are visited: for each step-factor axis, just the cells straddling
// a box edge.
CoefficientField analyze_box(const Box& box, int max_level);

// Exact multilevel transform of a dyadic step function: coefficients at
// levels <= min(max_level, resolution - 1) plus the scaling layer.
CoefficientField analyze_step(const DyadicStepFunction& f, int max_level);

// Partial reconstruction: scaling layer plus wavelet levels <= top_level,
// sampled exactly on the grid at `resolution` (which must exceed the
// deepest wavelet level used) over the cells covering the field support.
DyadicStepFunction partial_sum(const CoefficientField& field, int top_level,
                               int resolution);
DyadicStepFunction partial_sum(const CoefficientField& field, int top_level,
                               int resolution, const CellBox& cells);

// <S f, indicator of box> for the truncation with wavelet levels <= top_level.
double pair_with_box(const CoefficientField& field, const Box& box, int top_level);

}  // namespace besov
