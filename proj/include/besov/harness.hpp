#pragma once

#include <vector>

#include "besov/families.hpp"
#include "besov/params.hpp"
#include "besov/regions.hpp"

namespace besov {

// Ordinary least-squares slope through (x, log2_y) points. Rejects fewer
// than 3 points or non-finite input.
double fit_slope(const std::vector<double>& x, const std::vector<double>& log2_y);

struct ProbeOptions {
  std::vector<double> shift;  // per-axis; empty means 1/3 everywhere
  std::vector<int> levels;    // truncation sweep; empty means 4..10
  double slope_threshold = 0.05;
};

// Empirical membership probe for a shifted box indicator: norms of the
// truncated analyses against the truncation level, a fitted growth
// exponent, and the verdict the closed-form predicate predicts.
struct ProbeReport {
  std::vector<int> levels;
  std::vector<double> norms;
  double fitted_slope = 0.0;
  double tail_slope = 0.0;  // same fit on the last few sweep points
  bool divergent = false;
  // Growth exponent the non-membership estimates predict when they bind:
  // max(s - 1/p, s + n tau - n/p).
  double predicted_slope = 0.0;
  // s = 1/p with finite q grows like (J+1)^(1/q), invisible to an
  // exponential fit; that case is flagged and tested by ratio stability.
  bool boundary_case = false;
  double boundary_ratio = 0.0;  // max/min of norm_J / (J+1)^(1/q)
  MembershipVerdict predicted;
};

// Analyzes the box [shift, shift+1)^n once at the deepest sweep level,
// then evaluates the scaling-augmented sequence norm truncated at each J.
// Classification: divergent iff the fitted slope and the tail slope both
// exceed the threshold (a saturating member loses its slope along the
// tail) or the boundary ratio test fires. Dyadic shifts are rejected:
// their coefficients terminate and the probe would be meaningless.
ProbeReport probe_chi_membership(const BesovParams& params,
                                 const ProbeOptions& options = {});

// The four norm-vs-pairing experiments, named by the family and the
// magnitude rule they drive:
//  - HarmonicFace:   face layer,   lambda_j = 2^(-j(n/2-1)) / j
//  - LinearFace:     face layer,   lambda_j = j 2^(-j(n/2-1))
//  - HarmonicSparse: sparse layer, lambda_j = 2^(-j(n p tau - n/2)) / j
//  - HarmonicColumn: single column, lambda_j = 2^(j n/2) / j
// Each targets a boundary parameter tuple where the norm stays bounded
// (or grows slowly) while the pairing outruns it.
enum class DivergenceKind { HarmonicFace, LinearFace, HarmonicSparse, HarmonicColumn };

const char* to_string(DivergenceKind kind);

struct ExperimentRow {
  int top_level = 0;
  double norm = 0.0;
  double pairing = 0.0;
  double ratio = 0.0;  // |pairing| / norm
};

struct ExperimentTable {
  DivergenceKind kind = DivergenceKind::HarmonicFace;
  int start_level = 0;
  FunctionalVerdict region;  // must come back DoesNotExtend to run
  std::vector<ExperimentRow> rows;
};

// Closed-form norm and exact pairing per truncation level. Refuses to run
// unless the extension predicate confirms the tuple sits in the
// non-extending region the experiment is meant to witness.
ExperimentTable divergence_experiment(DivergenceKind kind,
                                      const BesovParams& params,
                                      const GeneratorModel& gen,
                                      const std::vector<int>& top_levels);

struct SweepOptions {
  bool probe = false;
  ProbeOptions probe_options;
};

struct SweepRow {
  BesovParams params;
  MembershipVerdict membership;
  FunctionalVerdict functional;
  bool probed = false;
  ProbeReport probe;
};

// One row per tuple, in input order.
std::vector<SweepRow> region_sweep(const std::vector<BesovParams>& grid,
                                   const SweepOptions& options = {});

}  // namespace besov
