#include "uniflow/flow_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "uniflow/error.hpp"
#include "uniflow/rng.hpp"

namespace uniflow {

namespace {

constexpr double kPi = std::numbers::pi;

IntMat2 int_mat(long long a, long long b, long long c, long long d) {
  IntMat2 m;
  m << a, b, c, d;
  return m;
}

Mat2 to_double(const IntMat2& m) { return m.cast<double>(); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return 0;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0;
}

const std::vector<std::vector<IntMat2>>& gamma_shells() {
  // shells[w] holds the SL(2,Z) elements whose largest entry is exactly w
  static const std::vector<std::vector<IntMat2>> shells = [] {
    constexpr long long kMax = 4;
    std::vector<std::vector<IntMat2>> s(kMax + 1);
    for (long long a = -kMax; a <= kMax; ++a)
      for (long long b = -kMax; b <= kMax; ++b)
        for (long long c = -kMax; c <= kMax; ++c)
          for (long long d = -kMax; d <= kMax; ++d) {
            if (a * d - b * c != 1) continue;
            const long long w = std::max({std::llabs(a), std::llabs(b), std::llabs(c), std::llabs(d)});
            s[static_cast<std::size_t>(w)].push_back(int_mat(a, b, c, d));
          }
    return s;
  }();
  return shells;
}

long long ext_gcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1 = 0, y1 = 0;
  const long long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t k = 0; k < n; ++k)
    t[k] = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
  return t;
}

DivergenceFit fit_divergence(const std::vector<double>& times, const std::vector<double>& dist, double t_min) {
  DivergenceFit fit;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (dist[k] > 0.1) {
      fit.shortened = true;
      break;
    }
    fit.times.push_back(times[k]);
    fit.distances.push_back(dist[k]);
    lx.push_back(std::log(times[k]));
    ly.push_back(std::log(dist[k]));
  }
  fit.horizon_used = fit.times.empty() ? 0 : fit.times.back();
  if (fit.times.size() < 4 || fit.horizon_used < 10 * t_min)
    fail(ErrorKind::WrapDetected, "distance saturates before a decade of growth is observed");
  fit.slope = slope(lx, ly);
  return fit;
}

}  // namespace

ModularPoint reduce(const Mat2& g) {
  Eigen::Vector2d b1 = g.col(0), b2 = g.col(1);
  IntMat2 w = IntMat2::Identity();
  for (int it = 0; it < 100000; ++it) {
    if (b1.squaredNorm() > b2.squaredNorm() * (1 + 1e-13)) {
      const Eigen::Vector2d t = b1;
      b1 = b2;
      b2 = -t;
      w = w * int_mat(0, -1, 1, 0);
    }
    const double mu = std::round(b1.dot(b2) / b1.squaredNorm());
    if (mu == 0) break;
    b2 -= mu * b1;
    w = w * int_mat(1, -static_cast<long long>(mu), 0, 1);
  }
  if (b1(0) < 0 || (b1(0) == 0 && b1(1) < 0)) {
    b1 = -b1;
    b2 = -b2;
    w = -w;
  }
  ModularPoint out;
  out.rep.col(0) = b1;
  out.rep.col(1) = b2;
  out.word = w;
  return out;
}

ModularPoint flow(const ModularPoint& x, double t) {
  ModularPoint r = reduce(sl2_exp_u(t) * x.rep);
  r.word = x.word * r.word;
  return r;
}

double sl2_log_norm(const Mat2& a) {
  const double h = 0.5 * a.trace();
  Mat2 b = a;
  b(0, 0) -= h;
  b(1, 1) -= h;
  // b is traceless and b^2 = (h^2 - 1) I, so s2 = -det b = h^2 - 1.
  const double s2 = b(0, 0) * b(0, 0) + b(0, 1) * b(1, 0);
  double f = 1;
  if (s2 > 0) {
    if (h <= 0) return std::numeric_limits<double>::infinity();
    const double sh = std::sqrt(s2);
    f = std::asinh(sh) / sh;
  } else if (s2 < 0) {
    const double sn = std::sqrt(-s2);
    f = std::atan2(sn, h) / sn;
  } else if (h <= 0) {
    return std::numeric_limits<double>::infinity();
  }
  return f * b.norm();
}

QuotientDistance quotient_distance(const Mat2& x, const Mat2& y, int max_window) {
  const auto& shells = gamma_shells();
  const int top = std::min<int>(max_window, static_cast<int>(shells.size()) - 1);
  const Mat2 yi = y.inverse();
  QuotientDistance out;
  out.distance = std::numeric_limits<double>::infinity();
  for (int w = 0; w <= top; ++w) {
    for (const auto& gam : shells[static_cast<std::size_t>(w)])
      out.distance = std::min(out.distance, sl2_log_norm(x * to_double(gam) * yi));
    out.window = w;
    if (w >= 1 && out.distance <= 0.5) break;
  }
  return out;
}

Mat2 haar_fundamental_point(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = stream(seed, index);
  const double y_min = std::sqrt(3.0) / 2;
  for (;;) {
    const double y = y_min / (1 - rng.uniform());
    const double x = rng.uniform() - 0.5;
    const double theta = kPi * rng.uniform();
    if (x * x + y * y < 1) continue;
    return sl2_exp_u(x) * sl2_exp_x(0.5 * std::log(y)) * sl2_rotation(theta);
  }
}

OrbitSegment orbit_segment(const Mat2& base, const std::vector<double>& times) {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) fail(ErrorKind::InvalidArgument, "time grid must be strictly increasing");
  OrbitSegment seg;
  seg.base = base;
  seg.times = times;
  for (double t : times) {
    ModularPoint p = reduce(sl2_exp_u(t) * base);
    seg.height.push_back(p.rep.col(1).norm() / p.rep.col(0).norm());
    seg.distance.push_back(2 * kak(p.rep).s);
    seg.points.push_back(std::move(p));
  }
  return seg;
}

MatchingExperiment matching_experiment(double horizon, double eps, double a, double b, double c, const Mat2& y,
                                       std::size_t grid) {
  const double e5 = std::pow(eps, 5);
  if (!(horizon > 0) || !(eps > 0) || grid < 2) fail(ErrorKind::InvalidArgument, "need R > 0, eps > 0 and a grid");
  if (!(std::abs(a) < e5 / horizon) || !(std::abs(b) < e5) || !(std::abs(c) < e5))
    fail(ErrorKind::PerturbationTooLarge, "perturbation outside |a| < eps^5/R, |b| < eps^5, |c| < eps^5");
  require_sl2(y);

  MatchingExperiment ex;
  ex.y = y;
  ex.a = a;
  ex.b = b;
  ex.c = c;
  ex.horizon = horizon;
  ex.eps = eps;
  ex.grid = grid;
  const Mat2 x = sl2_exp_v(a) * sl2_exp_x(b) * sl2_exp_u(c) * y;
  const double eb = std::exp(b);
  for (std::size_t k = 0; k < grid; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(grid - 1);
    const double den = 1 / eb - a * eb * t;
    const double psi = t * eb / den;
    ex.max_h_prime_dev = std::max(ex.max_h_prime_dev, std::abs(1 / (den * den) - 1));
    const Mat2 ry = reduce(sl2_exp_u(t) * y).rep;
    const auto dm = quotient_distance(reduce(sl2_exp_u(psi) * x).rep, ry);
    const auto di = quotient_distance(reduce(sl2_exp_u(t) * x).rep, ry);
    ex.times.push_back(t);
    ex.psi.push_back(psi);
    ex.d_matched.push_back(dm.distance);
    ex.d_identity.push_back(di.distance);
    ex.sup_matched = std::max(ex.sup_matched, dm.distance);
    ex.sup_identity = std::max(ex.sup_identity, di.distance);
    ex.window = std::max({ex.window, dm.window, di.window});
  }
  const double e3 = eps * eps * eps;
  ex.matched_ok = ex.sup_matched <= e3;
  ex.control_fails = ex.sup_identity > e3;
  ex.h_prime_ok = ex.max_h_prime_dev < eps;
  return ex;
}

SplittingRecord splitting_time(const CoordinateChart& chart, const Mat& g, double eps, int max_exponent) {
  SplittingRecord rec;
  rec.eps = eps;
  try {
    rec.coeffs = decompose(chart, g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfChartDomain) fail(ErrorKind::NotInChart, e.what());
    throw;
  }
  auto member = [&](int k) { return in_kak_ball(chart, rec.coeffs, std::ldexp(1.0, k), eps); };
  if (member(max_exponent)) {
    rec.capped = true;
    rec.exponent = max_exponent;
  } else if (member(0)) {
    int lo = 0, hi = max_exponent;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (member(mid) ? lo : hi) = mid;
    }
    rec.exponent = lo;
  }
  rec.s = rec.exponent >= 0 ? std::ldexp(1.0, rec.exponent) : 0;
  return rec;
}

SplittingRecord splitting_time(const Mat2& x, const Mat2& y, double eps, int max_exponent) {
  static const CoordinateChart chart = [] {
    auto g = build_sl(2);
    return make_chart(g, basis_element(g, 0));
  }();
  const Mat2 g = x * y.inverse();
  return splitting_time(chart, Mat(g), eps, max_exponent);
}

TailReport cusp_tail(std::size_t samples, std::uint64_t seed, double t0) {
  if (samples == 0) fail(ErrorKind::InvalidArgument, "need samples");
  std::vector<double> d(samples);
  for (std::size_t k = 0; k < samples; ++k) d[k] = 2 * kak(haar_fundamental_point(seed, k)).s;
  std::sort(d.begin(), d.end());

  TailReport rep;
  rep.samples = samples;
  rep.t0 = t0;
  const double n = static_cast<double>(samples);
  for (double t = 0;; t += 0.25) {
    const auto above = static_cast<double>(d.end() - std::lower_bound(d.begin(), d.end(), t));
    if (above < 10 && t > 0) break;
    rep.t_grid.push_back(t);
    rep.tail.push_back(above / n);
  }
  double excess = 0;
  for (auto it = std::lower_bound(d.begin(), d.end(), t0); it != d.end(); ++it) {
    excess += *it - t0;
    ++rep.excess_count;
  }
  if (rep.excess_count > 0 && excess > 0) {
    rep.kappa = static_cast<double>(rep.excess_count) / excess;
    const double half = 1.96 / std::sqrt(static_cast<double>(rep.excess_count));
    rep.kappa_lo = rep.kappa * (1 - half);
    rep.kappa_hi = rep.kappa * (1 + half);
  }
  for (std::size_t k = 0; k < rep.t_grid.size(); ++k)
    rep.c = std::max(rep.c, rep.tail[k] * std::exp(rep.kappa * rep.t_grid[k]));
  rep.dominated = rep.kappa > 0;
  for (std::size_t k = 0; k < rep.t_grid.size(); ++k)
    rep.dominated = rep.dominated && rep.tail[k] <= rep.c * std::exp(-rep.kappa * rep.t_grid[k]) * (1 + 1e-12);
  return rep;
}

unsigned long long lattice_count(double t) {
  if (t > 1e4) fail(ErrorKind::BudgetExceeded, "T above 1e4");
  if (t < 0) return 0;
  const auto n = static_cast<long long>(std::floor(t * t + 1e-9));
  const auto amax = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n))));
  unsigned long long count = 0;
  for (long long a = -amax; a <= amax; ++a)
    for (long long c = -amax; c <= amax; ++c) {
      const long long m = n - a * a - c * c;
      if (m < 1) continue;
      long long x = 0, y = 0;
      const long long g = ext_gcd(std::llabs(a), std::llabs(c), x, y);
      if (g != 1) continue;
      // |a| x + |c| y = 1, then a d0 - c b0 = 1
      const long long d0 = a < 0 ? -x : x;
      const long long b0 = c < 0 ? y : -y;
      // (b0 + k a)^2 + (d0 + k c)^2 <= m
      using I = __int128;
      auto q = [&](long long k) {
        const I bb = static_cast<I>(b0) + static_cast<I>(k) * a;
        const I dd = static_cast<I>(d0) + static_cast<I>(k) * c;
        return bb * bb + dd * dd <= static_cast<I>(m);
      };
      const double aa = static_cast<double>(a * a + c * c);
      const double bq = static_cast<double>(a * b0 + c * d0);
      const double cq = static_cast<double>(b0 * b0 + d0 * d0 - m);
      const double disc = bq * bq - aa * cq;
      if (disc < 0) continue;
      const double r = std::sqrt(disc);
      auto lo = static_cast<long long>(std::ceil((-bq - r) / aa));
      auto hi = static_cast<long long>(std::floor((-bq + r) / aa));
      while (q(lo - 1)) --lo;
      while (lo <= hi && !q(lo)) ++lo;
      while (q(hi + 1)) ++hi;
      while (hi >= lo && !q(hi)) --hi;
      if (hi >= lo) count += static_cast<unsigned long long>(hi - lo + 1);
    }
  return count;
}

LatticeCount lattice_count(const std::vector<double>& t_values) {
  LatticeCount out;
  out.t_values = t_values;
  std::vector<double> lx, ly;
  for (double t : t_values) {
    const unsigned long long c = lattice_count(t);
    out.counts.push_back(c);
    if (t >= 2 && c > 0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(static_cast<double>(c)));
    }
  }
  out.exponent = slope(lx, ly);
  return out;
}

DivergenceFit divergence_degree(const CoordinateChart& chart, std::size_t coordinate, double horizon, double delta0,
                                double t_min) {
  if (!(delta0 > 0) || delta0 > 1e-6) fail(ErrorKind::PreconditionViolated, "perturbation size must lie in (0, 1e-6]");
  if (coordinate >= chart.dim()) fail(ErrorKind::OutOfRange, "no such coordinate");
  if (!(horizon > t_min)) fail(ErrorKind::InvalidArgument, "horizon must exceed t_min");
  const auto times = log_grid(t_min, horizon, 64);
  const auto& powers = chart.ad_powers[coordinate];
  std::vector<double> dist;
  // log(exp(tU) exp(Y) exp(-tU)) = Ad(exp tU) Y, a finite sum
  for (double t : times) {
    Mat m = powers[0];
    double tk = 1;
    for (std::size_t k = 1; k < powers.size(); ++k) {
      tk *= t;
      m += tk * powers[k];
    }
    dist.push_back(delta0 * m.norm());
  }
  return fit_divergence(times, dist, t_min);
}

DivergenceFit divergence_degree(const Mat2& x, Sl2Direction direction, double horizon, double delta0, double t_min) {
  if (!(delta0 > 0) || delta0 > 1e-6) fail(ErrorKind::PreconditionViolated, "perturbation size must lie in (0, 1e-6]");
  if (!(horizon > t_min)) fail(ErrorKind::InvalidArgument, "horizon must exceed t_min");
  require_sl2(x);
  const Mat2 p = direction == Sl2Direction::V ? sl2_exp_v(delta0)
                 : direction == Sl2Direction::X ? sl2_exp_x(delta0)
                                                : sl2_exp_u(delta0);
  const auto times = log_grid(t_min, horizon, 64);
  std::vector<double> dist;
  // the metric is right invariant, so (phi_t p x)(phi_t x)^-1 = exp(tU) p exp(-tU)
  // for every base point; forming it without x keeps the rounding at t * eps
  for (double t : times) dist.push_back(sl2_log_norm(sl2_exp_u(t) * p * sl2_exp_u(-t)));
  return fit_divergence(times, dist, t_min);
}

}  // namespace uniflow
