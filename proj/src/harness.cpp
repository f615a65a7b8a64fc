#include "besov/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "besov/haar.hpp"
#include "besov/seqnorm.hpp"

namespace besov {

double fit_slope(const std::vector<double>& x, const std::vector<double>& log2_y) {
  if (x.size() != log2_y.size() || x.size() < 3)
    throw std::invalid_argument("slope fit needs >= 3 points");
  for (double v : log2_y)
    if (!std::isfinite(v))
      throw std::invalid_argument("slope fit needs finite log values");
  const double nn = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += log2_y[i];
  }
  mx /= nn;
  my /= nn;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (log2_y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x");
  return sxy / sxx;
}

ProbeReport probe_chi_membership(const BesovParams& params,
                                 const ProbeOptions& options) {
  params.validate();
  std::vector<double> shift = options.shift;
  if (shift.empty()) shift.assign(params.n, 1.0 / 3.0);
  if (static_cast<int>(shift.size()) != params.n)
    throw std::invalid_argument("shift dimension mismatch");
  std::vector<int> levels = options.levels;
  if (levels.empty())
    for (int j = 4; j <= 10; ++j) levels.push_back(j);
  if (levels.size() < 3) throw std::invalid_argument("need >= 3 sweep levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("sweep levels must be strictly increasing");
  const int deepest = levels.back();
  if (levels.front() < 0 || deepest > 24)
    throw std::invalid_argument("sweep levels out of range");
  for (double c : shift) {
    const double scaled = std::ldexp(c, deepest);
    if (scaled == std::floor(scaled))
      throw std::invalid_argument(
          "dyadic shift: coefficients terminate, probe is meaningless");
  }

  Box box;
  box.lo = shift;
  box.hi = shift;
  for (double& v : box.hi) v += 1.0;
  const CoefficientField field = analyze_box(box, deepest);

  ProbeReport report;
  report.levels = levels;
  std::vector<double> xs, logs;
  for (int J : levels) {
    EnumerationPolicy policy = EnumerationPolicy::covering(field, J);
    const double norm = lambda_star_norm(field, params, policy);
    report.norms.push_back(norm);
    if (!(norm > 0.0))
      throw std::invalid_argument("probe produced a nonpositive norm");
    xs.push_back(static_cast<double>(J));
    logs.push_back(std::log2(norm));
  }
  report.fitted_slope = fit_slope(xs, logs);
  // A genuinely divergent sweep keeps its log-slope; a norm saturating
  // toward a finite limit loses it along the tail. Requiring both the
  // full fit and the tail fit to clear the threshold keeps members with
  // slow geometric tails from reading as divergent.
  const std::size_t tail = std::min<std::size_t>(4, xs.size());
  report.tail_slope =
      fit_slope({xs.end() - tail, xs.end()}, {logs.end() - tail, logs.end()});
  report.predicted_slope =
      std::max(params.s - params.inv_p(),
               params.s + params.n * params.tau - params.n * params.inv_p());
  report.boundary_case = params.s == params.inv_p() && !is_inf(params.q);
  bool boundary_fired = false;
  if (report.boundary_case) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double r =
          report.norms[i] / std::pow(levels[i] + 1.0, params.inv_q());
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    report.boundary_ratio = hi / lo;
    boundary_fired = report.boundary_ratio <= 2.0;
  }
  report.divergent = (report.fitted_slope > options.slope_threshold &&
                      report.tail_slope > options.slope_threshold) ||
                     boundary_fired;
  report.predicted = chi_membership(params);
  return report;
}

const char* to_string(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::HarmonicFace:
      return "harmonic-face";
    case DivergenceKind::LinearFace:
      return "linear-face";
    case DivergenceKind::HarmonicSparse:
      return "harmonic-sparse";
    case DivergenceKind::HarmonicColumn:
      return "harmonic-column";
  }
  return "?";
}

ExperimentTable divergence_experiment(DivergenceKind kind,
                                      const BesovParams& params,
                                      const GeneratorModel& gen,
                                      const std::vector<int>& top_levels) {
  params.validate();
  gen.validate();
  if (top_levels.empty()) throw std::invalid_argument("empty level sweep");

  ExperimentTable table;
  table.kind = kind;
  table.region = functional_verdict(params);
  if (table.region.value != Extension::DoesNotExtend)
    throw std::invalid_argument(
        std::string("experiment needs a non-extending tuple; got ") +
        to_string(table.region.value) + " via " + table.region.active_condition);

  const double n = params.n;
  int start = gen.min_start_level;
  LambdaRule rule;
  switch (kind) {
    case DivergenceKind::HarmonicFace:
      rule = LambdaRule::harmonic_power(0.5 * n - 1.0);
      break;
    case DivergenceKind::LinearFace:
      rule = LambdaRule::linear_power();
      break;
    case DivergenceKind::HarmonicSparse:
      rule = LambdaRule::harmonic_power(n * params.p * params.tau - 0.5 * n);
      while ((1LL << start) <= gen.support_width()) ++start;
      break;
    case DivergenceKind::HarmonicColumn:
      rule = LambdaRule::harmonic_power(-0.5 * n);
      break;
  }
  if (start < 1 && (kind == DivergenceKind::HarmonicFace ||
                    kind == DivergenceKind::HarmonicSparse ||
                    kind == DivergenceKind::HarmonicColumn))
    start = 1;  // harmonic rules are undefined at level 0
  table.start_level = start;

  for (int N : top_levels) {
    if (N < start)
      throw std::invalid_argument("sweep level below the start level");
    ExperimentRow row;
    row.top_level = N;
    switch (kind) {
      case DivergenceKind::HarmonicFace:
      case DivergenceKind::LinearFace:
        row.norm = face_layer_norm(params, rule, start, N);
        row.pairing = face_layer_pairing(gen, rule, params.n, start, N);
        break;
      case DivergenceKind::HarmonicSparse: {
        row.norm = sparse_layer_norm(params, rule, start, N);
        TestFamilySpec spec;
        spec.kind = FamilyKind::SparseLayer;
        spec.dim = params.n;
        spec.start_level = start;
        spec.top_level = N;
        spec.lambda = rule;
        spec.gen = gen;
        spec.alpha = n * params.p * params.tau;
        row.pairing = sparse_layer_pairing(spec).value;
        break;
      }
      case DivergenceKind::HarmonicColumn:
        row.norm = single_column_norm(params, rule, start, N);
        row.pairing = single_column_pairing(gen, rule, params.n, start, N);
        break;
    }
    row.ratio = row.norm > 0.0 ? std::abs(row.pairing) / row.norm : 0.0;
    table.rows.push_back(row);
  }
  return table;
}

std::vector<SweepRow> region_sweep(const std::vector<BesovParams>& grid,
                                   const SweepOptions& options) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const BesovParams& p : grid) {
    SweepRow row;
    row.params = p;
    row.membership = chi_membership(p);
    row.functional = functional_verdict(p);
    if (options.probe) {
      row.probe = probe_chi_membership(p, options.probe_options);
      row.probed = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace besov
