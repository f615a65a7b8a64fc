#include "besov/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "besov/dyadic.hpp"

namespace besov {

void GeneratorModel::validate() const {
  if (support_lo >= 0 || support_hi <= 0)
    throw std::invalid_argument("generator support must straddle 0");
  if (c_psi == 0.0 || !std::isfinite(c_psi))
    throw std::invalid_argument("c_psi must be nonzero");
  if (c_phi <= 0.0 || !std::isfinite(c_phi))
    throw std::invalid_argument("c_phi must be positive");
  if (min_start_level < 0 || min_start_level > kMaxLevel)
    throw std::invalid_argument("min_start_level out of range");
  if (static_cast<long long>(support_hi) > (1LL << std::min(min_start_level, 62)))
    throw std::invalid_argument("support does not fit at min_start_level");
}

double LambdaRule::value(int level, int dim) const {
  switch (kind) {
    case Kind::Constant:
      return scale;
    case Kind::Power:
      return scale * std::exp2(-level * exponent);
    case Kind::LinearPower:
      return scale * level * std::exp2(-level * (0.5 * dim - 1.0));
    case Kind::HarmonicPower:
      if (level < 1) throw std::invalid_argument("harmonic rule needs level >= 1");
      return scale * std::exp2(-level * exponent) / level;
    case Kind::Custom:
      if (!fn) throw std::invalid_argument("custom rule without a function");
      return fn(level);
  }
  throw std::logic_error("unreachable");
}

LambdaRule LambdaRule::constant(double c) {
  LambdaRule r;
  r.kind = Kind::Constant;
  r.scale = c;
  return r;
}

LambdaRule LambdaRule::power(double a) {
  LambdaRule r;
  r.kind = Kind::Power;
  r.exponent = a;
  return r;
}

LambdaRule LambdaRule::linear_power() {
  LambdaRule r;
  r.kind = Kind::LinearPower;
  return r;
}

LambdaRule LambdaRule::harmonic_power(double a) {
  LambdaRule r;
  r.kind = Kind::HarmonicPower;
  r.exponent = a;
  return r;
}

LambdaRule LambdaRule::custom(std::function<double(int)> f) {
  LambdaRule r;
  r.kind = Kind::Custom;
  r.fn = std::move(f);
  return r;
}

void TestFamilySpec::validate() const {
  if (dim < 1 || dim > 16) throw std::invalid_argument("dimension out of range");
  if (start_level < 0 || top_level > kMaxLevel || top_level < start_level)
    throw std::invalid_argument("bad level range");
  if (width() < 1) throw std::invalid_argument("support width must be positive");
  if (kind == FamilyKind::SparseLayer) {
    if (dim < 2) throw std::invalid_argument("sparse layer needs dim >= 2");
    if (!(alpha > 0.0) || !(alpha < dim - 1))
      throw std::invalid_argument("sparse layer needs alpha in (0, dim-1)");
    if ((1LL << start_level) <= width())
      throw std::invalid_argument("sparse layer start level too small for width");
  }
  if (kind == FamilyKind::HalfFaceLayer && base_level < 0)
    throw std::invalid_argument("base_level must be nonnegative");
}

namespace {

// All offsets (0, k_2..k_n) with 0 <= k_i < bound. For dim == 1 the
// constraint set is empty and the single offset 0 survives any bound.
void for_each_face_offset(
    int dim, long long bound,
    const std::function<void(const std::vector<long long>&)>& visit) {
  std::vector<long long> offset(dim, 0);
  if (dim == 1) {
    visit(offset);
    return;
  }
  if (bound <= 0) return;
  double count = 1.0;
  for (int k = 1; k < dim; ++k) count *= static_cast<double>(bound);
  if (count > (1 << 24)) throw std::invalid_argument("family level too large");
  while (true) {
    visit(offset);
    int axis = dim - 1;
    while (axis >= 1) {
      if (++offset[axis] < bound) break;
      offset[axis] = 0;
      --axis;
    }
    if (axis < 1) return;
  }
}

std::vector<std::vector<long long>> sparse_level_offsets(const TestFamilySpec& spec,
                                                        int level) {
  const long long cutoff = (1LL << level) - spec.width();
  auto set = construct_distributed_cubes(spec.dim - 1, spec.alpha, level);
  std::vector<std::vector<long long>> out;
  for (const auto& m : set.members) {
    if (*std::max_element(m.begin(), m.end()) >= cutoff) continue;
    std::vector<long long> offset(spec.dim, 0);
    std::copy(m.begin(), m.end(), offset.begin() + 1);
    out.push_back(std::move(offset));
  }
  return out;
}

}  // namespace

CoefficientField build_family(const TestFamilySpec& spec) {
  spec.validate();
  CoefficientField field(spec.dim);
  const int type = 1;  // step factor on the first axis only

  for (int l = spec.start_level; l <= spec.top_level; ++l) {
    const double lambda = spec.lambda.value(l, spec.dim);
    if (lambda == 0.0) continue;
    switch (spec.kind) {
      case FamilyKind::FaceLayer:
        for_each_face_offset(spec.dim, (1LL << l) - spec.width(),
                             [&](const std::vector<long long>& off) {
                               field.set_wavelet(type, l, off, lambda);
                             });
        break;
      case FamilyKind::HalfFaceLayer: {
        if (l < std::max(spec.base_level, 1)) break;
        for_each_face_offset(spec.dim, (1LL << (l - 1)) - spec.width(),
                             [&](const std::vector<long long>& off) {
                               field.set_wavelet(type, l, off, lambda);
                             });
        break;
      }
      case FamilyKind::SingleColumn:
        field.set_wavelet(type, l, std::vector<long long>(spec.dim, 0), lambda);
        break;
      case FamilyKind::SparseLayer:
        for (const auto& off : sparse_level_offsets(spec, l))
          field.set_wavelet(type, l, off, lambda);
        break;
    }
  }
  return field;
}

namespace {

// { sum 2^(t q) }^(1/q) over the given log2 terms, computed with a max
// shift so large exponents cannot overflow. q = inf gives the sup.
double lq_from_log2_terms(const std::vector<double>& log2_terms, double q) {
  if (log2_terms.empty()) return 0.0;
  const double top = *std::max_element(log2_terms.begin(), log2_terms.end());
  if (is_inf(q)) return std::exp2(top);
  double sum = 0.0;
  for (double t : log2_terms) sum += std::exp2(q * (t - top));
  return std::exp2(top + std::log2(sum) / q);
}

std::vector<double> collect_log2_terms(const BesovParams& params,
                                       const LambdaRule& lambda, double exponent,
                                       int from, int to) {
  std::vector<double> terms;
  for (int j = from; j <= to; ++j) {
    const double v = std::abs(lambda.value(j, params.n));
    if (v == 0.0) continue;
    terms.push_back(j * exponent + std::log2(v));
  }
  return terms;
}

void check_levels(int start_level, int top_level) {
  if (start_level < 0 || top_level > kMaxLevel || top_level < start_level)
    throw std::invalid_argument("bad level range");
}

}  // namespace

double face_layer_norm(const BesovParams& params, const LambdaRule& lambda,
                       int start_level, int top_level) {
  params.validate();
  check_levels(start_level, top_level);
  const double n = params.n;
  const double e = params.s + 0.5 * n - params.inv_p();
  const double face_threshold = (n - 1.0) * params.inv_p() / n;
  if (params.tau <= face_threshold) {
    return lq_from_log2_terms(
        collect_log2_terms(params, lambda, e, start_level, top_level), params.q);
  }
  // The outer sup over cubes localizes: a cube at level J sees the levels
  // j >= J and carries the prefactor 2^(J(n tau - (n-1)/p)).
  double best = 0.0;
  for (int J = start_level; J <= top_level; ++J) {
    const double prefix = J * (n * params.tau - (n - 1.0) * params.inv_p());
    const double tail = lq_from_log2_terms(
        collect_log2_terms(params, lambda, e, J, top_level), params.q);
    best = std::max(best, std::exp2(prefix) * tail);
  }
  return best;
}

double sparse_layer_norm(const BesovParams& params, const LambdaRule& lambda,
                         int start_level, int top_level) {
  params.validate();
  check_levels(start_level, top_level);
  const double n = params.n;
  const double upper = (n - 1.0) * params.inv_p() / n;
  if (!(params.tau > 0.0) || !(params.tau < upper))
    throw std::invalid_argument(
        "sparse layer norm needs tau strictly between 0 and (n-1)/(n p)");
  const double e = params.s + 0.5 * n + n * params.tau - n * params.inv_p();
  return lq_from_log2_terms(
      collect_log2_terms(params, lambda, e, start_level, top_level), params.q);
}

double single_column_norm(const BesovParams& params, const LambdaRule& lambda,
                          int start_level, int top_level) {
  params.validate();
  check_levels(start_level, top_level);
  const double n = params.n;
  const double e = params.s + 0.5 * n - n * params.inv_p();
  double best = 0.0;
  for (int J = 0; J <= top_level; ++J) {
    const double tail = lq_from_log2_terms(
        collect_log2_terms(params, lambda, e, std::max(J, start_level), top_level),
        params.q);
    best = std::max(best, std::exp2(J * n * params.tau) * tail);
  }
  return best;
}

double face_layer_pairing(double c_psi, double c_phi, int width,
                          const LambdaRule& lambda, int dim, int start_level,
                          int top_level) {
  check_levels(start_level, top_level);
  if (dim < 1 || width < 1) throw std::invalid_argument("bad pairing arguments");
  const double c = c_psi * std::pow(c_phi, dim - 1);
  double sum = 0.0;
  for (int j = start_level; j <= top_level; ++j) {
    const double count =
        dim == 1 ? 1.0
                 : std::pow(std::max(0.0, std::exp2(j) - width),
                            static_cast<double>(dim - 1));
    sum += lambda.value(j, dim) * std::exp2(-0.5 * j * dim) * count;
  }
  return c * sum;
}

double face_layer_pairing(const GeneratorModel& gen, const LambdaRule& lambda,
                          int dim, int start_level, int top_level) {
  gen.validate();
  if (start_level < gen.min_start_level)
    throw std::invalid_argument("start level below the generator's minimum");
  return face_layer_pairing(gen.c_psi, gen.c_phi, gen.support_width(), lambda,
                            dim, start_level, top_level);
}

SparsePairingReport sparse_layer_pairing(const TestFamilySpec& spec) {
  spec.validate();
  if (spec.kind != FamilyKind::SparseLayer)
    throw std::invalid_argument("spec is not a sparse layer");
  const double c = spec.gen.c_psi * std::pow(spec.gen.c_phi, spec.dim - 1);
  SparsePairingReport report;
  double sum = 0.0;
  for (int j = spec.start_level; j <= spec.top_level; ++j) {
    const auto offsets = sparse_level_offsets(spec, j);
    SparsePairingLevel lvl;
    lvl.level = j;
    lvl.cardinality = static_cast<long long>(offsets.size());
    lvl.lower = std::exp2(-spec.alpha) *
                    std::pow(std::exp2(j) - spec.width(), spec.alpha) -
                1.0;
    lvl.upper = std::exp2(j * spec.alpha);
    lvl.informative = lvl.lower >= 1.0;
    report.levels.push_back(lvl);
    sum += spec.lambda.value(j, spec.dim) * std::exp2(-0.5 * j * spec.dim) *
           static_cast<double>(lvl.cardinality);
  }
  report.value = c * sum;
  return report;
}

double single_column_pairing(double c_psi, double c_phi,
                             const LambdaRule& lambda, int dim, int start_level,
                             int top_level) {
  check_levels(start_level, top_level);
  if (dim < 1) throw std::invalid_argument("bad pairing arguments");
  const double c = c_psi * std::pow(c_phi, dim - 1);
  double sum = 0.0;
  for (int j = start_level; j <= top_level; ++j)
    sum += lambda.value(j, dim) * std::exp2(-0.5 * j * dim);
  return c * sum;
}

double single_column_pairing(const GeneratorModel& gen, const LambdaRule& lambda,
                             int dim, int start_level, int top_level) {
  gen.validate();
  if (start_level < gen.min_start_level)
    throw std::invalid_argument("start level below the generator's minimum");
  return single_column_pairing(gen.c_psi, gen.c_phi, lambda, dim, start_level,
                               top_level);
}

}  // namespace besov
