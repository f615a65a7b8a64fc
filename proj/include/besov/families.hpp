#pragma once

#include <functional>
#include <vector>

#include "besov/coefficient_field.hpp"
#include "besov/params.hpp"

namespace besov {

// Reduced description of a compactly supported generator pair on the line.
// Nothing here evaluates the generators pointwise: only the support
// endpoints and the two integral constants enter the pairing formulas.
struct GeneratorModel {
  int support_lo = -1;  // left support endpoint, negative
  int support_hi = 1;   // right support endpoint, positive
  double c_psi = 1.0;   // nonzero integral of the oscillating factor
  double c_phi = 1.0;   // positive integral of the averaging factor
  // Smallest level at which a family may start; the support must fit,
  // i.e. support_hi <= 2^min_start_level.
  int min_start_level = 0;

  int support_width() const { return support_hi - support_lo; }
  void validate() const;
};

// Per-level coefficient magnitude lambda_j.
struct LambdaRule {
  enum class Kind { Constant, Power, LinearPower, HarmonicPower, Custom };
  Kind kind = Kind::Constant;
  double scale = 1.0;     // multiplies every value
  double exponent = 0.0;  // a in 2^(-j a) for Power / HarmonicPower
  std::function<double(int)> fn;

  // LinearPower and the usual harmonic choice depend on the dimension,
  // so evaluation takes it alongside the level.
  double value(int level, int dim) const;

  static LambdaRule constant(double c);
  static LambdaRule power(double a);            // 2^(-j a)
  static LambdaRule linear_power();             // j * 2^(-j(n/2 - 1))
  static LambdaRule harmonic_power(double a);   // 2^(-j a) / j, j >= 1
  static LambdaRule custom(std::function<double(int)> f);
};

// The four coefficient layouts used as extremal inputs. All place type-1
// wavelet coefficients only (step factor on the first axis):
//  - FaceLayer: every offset (0, k_2..k_n) with 0 <= k_i < 2^l - width,
//    a layer hugging the face x_1 = 0.
//  - SparseLayer: offsets (0, m) with m drawn from the distributed cube
//    set of density alpha in the remaining n-1 coordinates.
//  - SingleColumn: offset 0 at every level.
//  - HalfFaceLayer: like FaceLayer but with the halved ranges
//    0 <= k_i < 2^(l-1) - width, starting at max(start_level, base_level).
enum class FamilyKind { FaceLayer, SparseLayer, SingleColumn, HalfFaceLayer };

struct TestFamilySpec {
  FamilyKind kind = FamilyKind::SingleColumn;
  int dim = 1;
  int start_level = 0;  // first populated level
  int top_level = 0;    // last populated level
  LambdaRule lambda;
  GeneratorModel gen;
  double alpha = 0.0;      // SparseLayer only: density in (0, dim - 1)
  int base_level = 0;      // HalfFaceLayer only
  // When positive, use this support width instead of the generator's.
  // The closed forms below are width-generic, and some cross-checks pin
  // widths a concrete generator pair cannot produce.
  int width_override = 0;

  int width() const {
    return width_override > 0 ? width_override : gen.support_width();
  }
  void validate() const;
};

CoefficientField build_family(const TestFamilySpec& spec);

// Closed-form sequence norms of the families, taken over all levels
// start..top with the given magnitude rule.
//
// Face layer: two regimes. For tau <= (n-1)/(n p):
//   { sum_j 2^(j(s + n/2 - 1/p) q) |lambda_j|^q }^(1/q);
// for larger tau the outer sup localizes and the value is
//   sup_J 2^(J(n tau - (n-1)/p)) { sum_{j>=J} ... }^(1/q).
double face_layer_norm(const BesovParams& params, const LambdaRule& lambda,
                       int start_level, int top_level);

// Sparse layer with alpha = n p tau, valid for tau in the open interval
// (0, (n-1)/(n p)):
//   { sum_j 2^(j(s + n/2 + n tau - n/p) q) |lambda_j|^q }^(1/q).
double sparse_layer_norm(const BesovParams& params, const LambdaRule& lambda,
                         int start_level, int top_level);

// Single column: exact identity with the sequence norm at every tau,
//   sup_{J in [0, N]} 2^(J n tau) { sum_{j >= max(J, start)}
//     2^(j(s + n/2 - n/p) q) |lambda_j|^q }^(1/q).
double single_column_norm(const BesovParams& params, const LambdaRule& lambda,
                          int start_level, int top_level);

// Exact pairings of the truncated families against the unit-box
// indicator, in the generator model. Per coefficient the pairing
// contributes c_psi * c_phi^(n-1) * 2^(j n / 2) * 2^(-j n), and the
// formulas below just count the coefficients per level.
double face_layer_pairing(double c_psi, double c_phi, int width,
                          const LambdaRule& lambda, int dim, int start_level,
                          int top_level);
double face_layer_pairing(const GeneratorModel& gen, const LambdaRule& lambda,
                          int dim, int start_level, int top_level);

struct SparsePairingLevel {
  int level = 0;
  long long cardinality = 0;  // actual offset count used at this level
  double lower = 0.0;         // 2^(-alpha) (2^j - width)^alpha - 1
  double upper = 0.0;         // 2^(j alpha)
  bool informative = false;   // lower >= 1, i.e. the sandwich says something
};

struct SparsePairingReport {
  double value = 0.0;
  std::vector<SparsePairingLevel> levels;
};

// Uses the actual per-level cardinalities of the constructed offset sets,
// and reports the sandwich bounds around them.
SparsePairingReport sparse_layer_pairing(const TestFamilySpec& spec);

double single_column_pairing(double c_psi, double c_phi,
                             const LambdaRule& lambda, int dim, int start_level,
                             int top_level);
double single_column_pairing(const GeneratorModel& gen, const LambdaRule& lambda,
                             int dim, int start_level, int top_level);

}  // namespace besov
