#pragma once

#include <cstddef>
#include <vector>

#include "uniflow/rational.hpp"

namespace uniflow {

/// Real polynomial sum_k c[k] t^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const noexcept { return c_; }
  /// Degree after dropping exact trailing zeros; -1 for the zero polynomial.
  int degree() const;
  double operator()(double t) const;
  Polynomial derivative() const;
  /// q(t) = p(lambda t).
  Polynomial rescaled(double lambda) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double k) const;

 private:
  std::vector<double> c_;
};

/// Real roots in [a, b], found by bracketing between the critical points
/// (recursively the roots of p') and solving each monotone piece.
std::vector<double> real_roots(const Polynomial& p, double a, double b);

/// sup over [a, b] of |p|, from the endpoints and critical points.
double sup_abs(const Polynomial& p, double a, double b);

/// The coefficient constant C(d): sup_[0,T] |p| < eps implies
/// |a_k| < C(d) T^-k eps, and |a_k| < C(d)^-1 T^-k eps implies sup |p| < eps.
/// Value: max(max row-sum of |V^-1| for the Vandermonde matrix on the nodes
/// k/d, d + 1), exact.
Scalar coefficient_bounds_constant_exact(int d);
double coefficient_bounds_constant(int d);

struct SublevelReport {
  double measure = 0;        // |{t in [a,b] : |p(t)| <= eps}|
  double sup_interval = 0;   // sup_[a,b] |p|
  double sup_sublevel = 0;   // sup of |p| on the sublevel set (<= eps)
  int degree = 0;
  double bg_bound = 0;       // (4|V|/|omega|)^d sup_omega |p|
  bool bg_holds = true;
};

/// Measure of the sublevel set {|p| <= eps} on [a, b] from the exact
/// breakpoints, plus the Brudnyi-Ganzburg check with omega = that set.
/// Throws DegenerateInterval when b <= a.
SublevelReport sublevel_measure(const Polynomial& p, double eps, double a, double b);

/// Brudnyi-Ganzburg with an arbitrary subinterval omega of V.
bool brudnyi_ganzburg_holds(const Polynomial& p, double v0, double v1, double w0, double w1, double* ratio = nullptr);

struct LongRangeSublevel {
  bool hypotheses = false;   // |p(N)| >= eps and |p(0)| < eps / C(d)
  double measure = 0;        // |{w in [0, N^(1+eta)] : |p(w)| <= 10 eps}|
  double bound = 0;          // 40 C(d)^2 N^(1 + eta - eta/d)
  bool holds = true;
};

LongRangeSublevel long_range_sublevel(const Polynomial& p, int d, double eps, double n, double eta);

}  // namespace uniflow
