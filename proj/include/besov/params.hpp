#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace besov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter tuple (s, p, q, tau, n) of a smoothness space on R^n.
// p and q live in (0, inf], with 1/inf understood as 0; tau >= 0.
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  double tau = 0.0;
  int n = 1;

  void validate() const {
    if (!std::isfinite(s)) throw std::invalid_argument("s must be finite");
    if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
    if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
    if (!(tau >= 0.0) || !std::isfinite(tau))
      throw std::invalid_argument("tau must be finite and >= 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
  }

  // 1/p with the 1/inf = 0 convention (IEEE division already does this).
  double inv_p() const { return 1.0 / p; }
  double inv_q() const { return 1.0 / q; }

  double sigma_p() const { return n * std::max(0.0, 1.0 / p - 1.0); }
};

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

// Parses "inf" (case-insensitive) or a decimal literal.
inline double parse_exponent(const std::string& tok) {
  if (tok == "inf" || tok == "Inf" || tok == "INF" || tok == "Infinity")
    return kInf;
  std::size_t pos = 0;
  double v = std::stod(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("bad number: " + tok);
  return v;
}

inline std::string format_exponent(double x) {
  if (is_inf(x)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace besov
