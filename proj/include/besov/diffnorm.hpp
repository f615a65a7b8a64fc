#pragma once

#include <vector>

#include "besov/params.hpp"
#include "besov/step_function.hpp"

namespace besov {

// Discretization of the difference-seminorm integral: one t per octave
// (weight ln 2 stands in for dt/t), and per shell t/2 <= |h| < t the
// axis-aligned magnitudes t(1 - 2^-(k+1)), k = 0..h_samples_per_shell-1,
// in both directions along every axis. k = 0 is the witness magnitude
// t/2; growing k approaches t from below. All values stay dyadic so the
// arithmetic below is exact.
struct DifferenceGrid {
  std::vector<double> t_values;  // strictly decreasing dyadic scales in (0, 2]
  int h_samples_per_shell = 4;
  int order = 1;  // difference order M

  void validate() const;
  std::vector<double> shell_magnitudes(double t) const;
  static DifferenceGrid octaves(int count, int h_samples = 4, int order = 1);
};

// sup over dyadic cubes P with |P| >= 1 of |P|^(-tau) (int_P |f|^p)^(1/p),
// exact on cells. Enumeration stops at the cube containing the support;
// larger cubes only shrink the prefactor.
double lp_tau_norm(const DyadicStepFunction& f, double p, double tau);

// Exact integral over the real box [lo, hi) of |D^order f|^p, where D is
// the finite difference with shift `step` along `axis`:
//   (D^M f)(x) = sum_j (-1)^j binom(M, j) f(x + (M-j) step e_axis).
// The shift must be dyadic so all breakpoints are exact. p = inf returns
// the essential sup over the box instead.
double difference_power_integral(const DyadicStepFunction& f, int axis,
                                 double step, int order, double p,
                                 const std::vector<double>& lo,
                                 const std::vector<double>& hi);

// Discretized difference seminorm:
//   sup_P |P|^(-tau) { sum_{t in grid, t <= 2 min(side(P), 1)} t^(-s q)
//       sup_h (int_P |D_h^M f|^p)^(q/p) * ln 2 }^(1/q),
// with sup semantics for q = inf. P runs over every dyadic cube meeting
// the (difference-padded) support whose t-range is nonempty.
double difference_seminorm(const DyadicStepFunction& f, const BesovParams& params,
                           const DifferenceGrid& grid);

// Lower-bound bookkeeping for the box indicator at the critical
// smoothness s = 1/p: per octave, the guaranteed witness shift
// h = -(t/2) e_1 contributes (t/2)^(q/p) to the q-sum, and since
// t^(-s q) (t/2)^(q/p) = 2^(-q/p) the partial sums grow exactly
// linearly in the octave count. For q = inf the running sup is the
// constant 2^(-1/p) instead: bounded, matching membership at q = inf.
struct DivergenceWitnessReport {
  std::vector<double> t_values;
  std::vector<double> witness_integrals;  // exact value of the witness integral
  std::vector<double> shell_sups;         // sup over all sampled h per shell
  std::vector<double> partial_sums;       // cumulative lower-bound q-sums
  double slope_per_octave = 0.0;          // ln 2 * 2^(-q/p); 0 when q = inf
};

// Requires s = 1/p exactly and p > (n-1)/n. Finite q is the divergence
// regime; q = inf is allowed and reports the bounded sup path.
DivergenceWitnessReport chi_divergence_witness(const BesovParams& params,
                                               const DifferenceGrid& grid);

}  // namespace besov
