#include "uniflow/polynomial.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "uniflow/error.hpp"

namespace uniflow {

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

int Polynomial::degree() const {
  int d = static_cast<int>(c_.size()) - 1;
  while (d >= 0 && c_[static_cast<std::size_t>(d)] == 0.0) --d;
  return d;
}

double Polynomial::operator()(double t) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::rescaled(double lambda) const {
  std::vector<double> out = c_;
  double f = 1;
  for (auto& x : out) {
    x *= f;
    f *= lambda;
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> out(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) out[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) out[k] += o.c_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial({0.0});
  std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double k) const {
  std::vector<double> out = c_;
  for (auto& x : out) x *= k;
  return Polynomial(std::move(out));
}

std::vector<double> real_roots(const Polynomial& p, double a, double b) {
  std::vector<double> roots;
  const int deg = p.degree();
  if (deg <= 0 || b < a) return roots;
  if (deg == 1) {
    const double r = -p.coeffs()[0] / p.coeffs()[1];
    if (r >= a && r <= b) roots.push_back(r);
    return roots;
  }
  std::vector<double> knots{a};
  for (double c : real_roots(p.derivative(), a, b))
    if (c > knots.back()) knots.push_back(c);
  if (b > knots.back()) knots.push_back(b);

  auto push = [&](double r) {
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  };
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double x0 = knots[k];
    const double x1 = knots[k + 1];
    const double f0 = p(x0);
    const double f1 = p(x1);
    if (f0 == 0.0) push(x0);
    if (f0 != 0.0 && f1 != 0.0 && (f0 < 0) != (f1 < 0)) {
      std::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          [&](double t) { return p(t); }, x0, x1, f0, f1, boost::math::tools::eps_tolerance<double>(52), iters);
      push(0.5 * (bracket.first + bracket.second));
    }
  }
  if (p(b) == 0.0) push(b);
  return roots;
}

double sup_abs(const Polynomial& p, double a, double b) {
  double s = std::max(std::abs(p(a)), std::abs(p(b)));
  for (double c : real_roots(p.derivative(), a, b)) s = std::max(s, std::abs(p(c)));
  return s;
}

Scalar coefficient_bounds_constant_exact(int d) {
  if (d < 0) fail(ErrorKind::OutOfRange, "degree must be non-negative");
  if (d == 0) return Scalar(1);
  const auto n = static_cast<std::size_t>(d + 1);
  RationalMatrix v(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar node(static_cast<long>(k), d);
    Scalar pw = 1;
    for (std::size_t j = 0; j < n; ++j) {
      v(k, j) = pw;
      pw *= node;
    }
  }
  const RationalMatrix inv = *inverse(v);
  Scalar best = d + 1;
  for (std::size_t j = 0; j < n; ++j) {
    Scalar row = 0;
    for (std::size_t k = 0; k < n; ++k) row += abs(inv(j, k));
    if (row > best) best = row;
  }
  return best;
}

double coefficient_bounds_constant(int d) {
  static const std::vector<double> table = [] {
    std::vector<double> t;
    for (int k = 0; k <= 12; ++k) t.push_back(coefficient_bounds_constant_exact(k).get_d());
    return t;
  }();
  if (d >= 0 && static_cast<std::size_t>(d) < table.size()) return table[static_cast<std::size_t>(d)];
  return coefficient_bounds_constant_exact(d).get_d();
}

SublevelReport sublevel_measure(const Polynomial& p, double eps, double a, double b) {
  if (!(b > a)) fail(ErrorKind::DegenerateInterval, "interval has no interior");
  std::vector<double> breaks{a, b};
  for (double r : real_roots(p - Polynomial({eps}), a, b)) breaks.push_back(r);
  for (double r : real_roots(p + Polynomial({eps}), a, b)) breaks.push_back(r);
  std::sort(breaks.begin(), breaks.end());

  SublevelReport rep;
  rep.degree = std::max(p.degree(), 0);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double x0 = breaks[k];
    const double x1 = breaks[k + 1];
    if (x1 <= x0) continue;
    if (std::abs(p(0.5 * (x0 + x1))) <= eps) {
      rep.measure += x1 - x0;
      rep.sup_sublevel = std::max({rep.sup_sublevel, std::min(std::abs(p(x0)), eps), std::min(std::abs(p(x1)), eps)});
    }
  }
  // interior critical points inside the set
  for (double c : real_roots(p.derivative(), a, b))
    if (std::abs(p(c)) <= eps) rep.sup_sublevel = std::max(rep.sup_sublevel, std::abs(p(c)));
  rep.sup_interval = sup_abs(p, a, b);
  if (rep.measure > 0) {
    rep.bg_bound = std::pow(4.0 * (b - a) / rep.measure, rep.degree) * rep.sup_sublevel;
    rep.bg_holds = rep.sup_interval <= rep.bg_bound * (1 + 1e-12) + 1e-300;
  }
  return rep;
}

bool brudnyi_ganzburg_holds(const Polynomial& p, double v0, double v1, double w0, double w1, double* ratio) {
  if (!(v1 > v0) || !(w1 > w0) || w0 < v0 || w1 > v1) fail(ErrorKind::DegenerateInterval, "need omega inside V");
  const int d = std::max(p.degree(), 0);
  const double lhs = sup_abs(p, v0, v1);
  const double rhs = std::pow(4.0 * (v1 - v0) / (w1 - w0), d) * sup_abs(p, w0, w1);
  if (ratio) *ratio = rhs > 0 ? lhs / rhs : 0.0;
  return lhs <= rhs * (1 + 1e-12);
}

LongRangeSublevel long_range_sublevel(const Polynomial& p, int d, double eps, double n, double eta) {
  if (p.degree() > d) fail(ErrorKind::InvalidArgument, "polynomial degree exceeds d");
  if (d < 1) fail(ErrorKind::OutOfRange, "need d >= 1");
  const double c = coefficient_bounds_constant(d);
  LongRangeSublevel out;
  out.hypotheses = std::abs(p(n)) >= eps && std::abs(p(0)) < eps / c;
  const double top = std::pow(n, 1 + eta);
  out.measure = sublevel_measure(p, 10 * eps, 0, top).measure;
  out.bound = 40 * c * c * std::pow(n, 1 + eta - eta / d);
  out.holds = !out.hypotheses || out.measure <= out.bound;
  return out;
}

}  // namespace uniflow
