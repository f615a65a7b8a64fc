#pragma once

#include <vector>

#include "besov/coefficient_field.hpp"
#include "besov/params.hpp"

namespace besov {

// Axis-aligned half-open integer box in level-0 cell coordinates.
struct CellBox {
  std::vector<long long> lo;
  std::vector<long long> hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty() const {
    for (int i = 0; i < dim(); ++i)
      if (lo[i] >= hi[i]) return true;
    return lo.empty();
  }
};

// Controls which outer cubes P enter the sup: levels min_level..max_level
// (min_level <= 0 <= max_level) whose cubes meet `window`. Inner sums run
// over wavelet levels up to max_level; the window never clips them.
struct EnumerationPolicy {
  int min_level = -1;
  int max_level = 0;
  CellBox window;

  void validate(int dim) const;

  // Window hugging the field support, min_level deep enough that a single
  // enumerated cube contains all of it (harmless for tau >= 0 since larger
  // cubes only shrink the Morrey prefactor).
  static EnumerationPolicy covering(const CoefficientField& field, int max_level);
};

// Morrey-weighted sequence quasi-norm of the wavelet layers:
//   sup_P |P|^(-tau) { sum_j 2^(j(s+n/2-n/p)q) sum_i [ sum_{m: Q_jm in P}
//   |t_ijm|^p ]^(q/p) }^(1/q)
// with sups replacing sums when p or q is infinite. Bottom-up aggregation
// over the ancestor tree, O(#coefficients * depth) per evaluation.
double b_norm(const CoefficientField& field, const BesovParams& params,
              const EnumerationPolicy& policy);

// Adds the level-0 scaling layer term
//   sup_P |P|^(-tau) ( sum_{m: Q_0m in P} |lambda_m|^p )^(1/p)
// (cubes of level <= 0 only) to b_norm of the wavelet layers.
double lambda_star_norm(const CoefficientField& field, const BesovParams& params,
                        const EnumerationPolicy& policy);

// Same contracts, but enumerating every cube in the window at every level
// and testing containment coefficient by coefficient. Exists as the
// correctness oracle for the aggregating evaluators; keep it slow and
// obvious.
double brute_force_norm(const CoefficientField& field, const BesovParams& params,
                        const EnumerationPolicy& policy);
double brute_force_lambda_star(const CoefficientField& field, const BesovParams& params,
                               const EnumerationPolicy& policy);

}  // namespace besov
