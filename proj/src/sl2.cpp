#include "uniflow/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "uniflow/error.hpp"
#include "uniflow/rng.hpp"

namespace uniflow {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2 * kPi);
  if (t < 0) t += 2 * kPi;
  if (t >= 2 * kPi) t = 0;
  return t;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return 0;
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0;
}

// Point of the unit tangent bundle: Poincare disk coordinate and tangent angle.
struct Frame {
  double wx = 0, wy = 0, theta = 0;
};

Frame frame_of(const Mat2& g) {
  using C = std::complex<double>;
  const C i(0, 1);
  const C den = g(1, 0) * i + g(1, 1);
  const C z = (g(0, 0) * i + g(0, 1)) / den;
  const C w = (z - i) / (z + i);
  return {w.real(), w.imag(), wrap_angle(-2 * std::arg(den))};
}

double frame_distance(const Frame& a, const Frame& b) {
  const double dx = a.wx - b.wx, dy = a.wy - b.wy;
  const double e = std::sqrt(dx * dx + dy * dy);
  const double na = 1 - (a.wx * a.wx + a.wy * a.wy);
  const double nb = 1 - (b.wx * b.wx + b.wy * b.wy);
  const double dh = 2 * std::asinh(e / std::sqrt(na * nb));
  double dt = std::abs(a.theta - b.theta);
  dt = std::min(dt, 2 * kPi - dt);
  return dh + dt;
}

}  // namespace

Mat2 sl2_exp_u(double t) { return (Mat2() << 1, t, 0, 1).finished(); }
Mat2 sl2_exp_v(double a) { return (Mat2() << 1, 0, a, 1).finished(); }
Mat2 sl2_exp_x(double s) { return (Mat2() << std::exp(s), 0, 0, std::exp(-s)).finished(); }
Mat2 sl2_rotation(double theta) {
  return (Mat2() << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)).finished();
}

void require_sl2(const Mat2& g) {
  if (!(std::abs(g.determinant() - 1) <= 1e-12 * std::max(1.0, g.squaredNorm())))
    fail(ErrorKind::InvalidArgument, "matrix is not in SL(2,R)");
}

Mat2 KAKDecomposition::recompose() const { return sl2_rotation(theta1) * sl2_exp_x(s) * sl2_rotation(theta2); }

KAKDecomposition kak(const Mat2& g) {
  require_sl2(g);
  Eigen::JacobiSVD<Mat2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 u = svd.matrixU();
  Mat2 v = svd.matrixV();
  if (u.determinant() < 0) {
    u.col(1) *= -1;
    v.col(1) *= -1;
  }
  KAKDecomposition out;
  const double sigma = svd.singularValues()(0);
  // s from the Frobenius norm is better conditioned near s = 0: |g|^2 = 2 cosh 2s.
  out.s = sigma > 1 + 1e-4 ? std::log(sigma) : 0.5 * std::acosh(std::max(1.0, 0.5 * g.squaredNorm()));
  if (out.s < 1e-15) {
    out.s = 0;
    out.theta1 = 0;
    out.theta2 = wrap_angle(std::atan2(g(1, 0), g(0, 0)));
    return out;
  }
  double t1 = wrap_angle(std::atan2(u(1, 0), u(0, 0)));
  Mat2 k2 = v.transpose();
  if (t1 >= kPi) {
    t1 -= kPi;
    k2 = -k2;
  }
  out.theta1 = t1;
  out.theta2 = wrap_angle(std::atan2(k2(1, 0), k2(0, 0)));
  return out;
}

UnipotentDistanceReport unipotent_distance_check(const std::vector<double>& times, double t0) {
  UnipotentDistanceReport rep;
  for (double t : times) {
    if (!(t >= t0)) fail(ErrorKind::OutOfRange, "time below t0");
    UnipotentDistanceRow row;
    row.t = t;
    row.s = kak(sl2_exp_u(t)).s;
    row.bound = 2 * std::log(t);
    row.ratio = row.s / std::log(t);
    row.holds = row.s <= row.bound;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.all_hold = rep.all_hold && row.holds;
    rep.rows.push_back(row);
  }
  return rep;
}

double psi_derivative(double a_v, double a_x, double t) {
  const double den = std::exp(-a_x) - a_v * std::exp(a_x) * t;
  return 1.0 / (den * den);
}

PsiMatch psi_match(double a_v, double a_x, double t, double eps1) {
  if (!(std::abs(a_x) < eps1)) fail(ErrorKind::DomainExceeded, "|a_X| must be below eps1");
  if (!(std::abs(a_v) * std::abs(t) <= eps1 * (1 + 1e-12))) fail(ErrorKind::DomainExceeded, "|t| exceeds eps1/|a_V|");
  const double ex = std::exp(a_x);
  const double den = 1 / ex - a_v * ex * t;
  PsiMatch out;
  out.psi = t * ex / den;
  out.alpha = a_v * ex * den;
  out.beta = -std::log(den);
  out.psi_prime = 1 / (den * den);
  const Mat2 lhs = sl2_exp_u(out.psi) * sl2_exp_v(a_v) * sl2_exp_x(a_x) * sl2_exp_u(-t);
  const Mat2 rhs = sl2_exp_v(out.alpha) * sl2_exp_x(out.beta);
  out.residual = (lhs - rhs).norm();
  out.alpha_bound = std::abs(out.alpha) <= 2 * std::abs(a_v);
  out.beta_bound = std::abs(out.beta) <= 2 * (std::abs(a_x) + std::abs(a_v) * std::abs(t));
  return out;
}

PsiWindow psi_prime_window(double a_v, double a_x, double eps) {
  PsiWindow w;
  w.hypotheses = std::abs(a_x) < eps * eps;
  w.t_max = a_v == 0 ? std::numeric_limits<double>::infinity() : eps * eps / std::abs(a_v);
  const double p0 = psi_derivative(a_v, a_x, 0);
  double p1 = p0;
  if (a_v != 0) {
    const double den = std::exp(-a_x) - a_v * std::exp(a_x) * w.t_max;
    p1 = den > 0 ? 1 / (den * den) : std::numeric_limits<double>::infinity();
  }
  w.min_prime = std::min(p0, p1);
  w.max_prime = std::max(p0, p1);
  w.holds = w.min_prime > 1 - eps && w.max_prime < 1 + eps;
  return w;
}

SlideResult slide_check(const CoordinateChart& chart, const Vec& coeffs, double horizon, double shift, double eps,
                        double eps1) {
  if (!(eps > 0) || eps > eps1) fail(ErrorKind::PreconditionViolated, "need 0 < eps <= eps1");
  if (std::abs(shift) > horizon / 3) fail(ErrorKind::PreconditionViolated, "|L| exceeds R/3");
  if (!in_kak_ball(chart, coeffs, horizon, eps * eps * eps))
    fail(ErrorKind::PreconditionViolated, "x is not in Kak(R, eps^3, y)");

  const double a_v = coeffs(0), a_x = coeffs(1);
  const PsiMatch pm = psi_match(a_v, a_x, shift, eps1);
  SlideResult out;
  out.ell = pm.psi;
  out.b_l = pm.alpha;
  out.c_l = pm.beta;
  out.ell_below_r = std::abs(out.ell) < horizon;

  const Mat& u = chart.directions[2];
  const Mat lhs = expm(out.ell * u) * expm(a_v * chart.directions[0]) * expm(a_x * chart.directions[1]) *
                  expm(-shift * u);
  const Mat rhs = expm(pm.alpha * chart.directions[0]) * expm(pm.beta * chart.directions[1]);
  out.sl2_residual = (lhs - rhs).norm();

  const Mat moved = expm(out.ell * u) * recompose(chart, coeffs) * expm(-shift * u);
  out.coeffs = decompose(chart, moved);
  out.member = in_kak_ball(chart, out.coeffs, horizon / 2, eps);
  return out;
}

bool admissible(const AppendixParams& prm) {
  const double jd = prm.jd();
  const double tol = 1 + 1e-12;
  auto in = [&](double x, double lo, double hi) { return x >= lo / tol && x <= hi * tol; };
  return jd > 0 && in(prm.p, std::exp2(20 * jd), std::exp2(40 * jd)) && in(prm.q, std::exp2(20 * jd), std::exp2(40 * jd)) &&
         in(std::abs(prm.a), std::exp2(-10 * jd), 1) && in(std::abs(prm.c), std::exp2(-10 * jd), 1) &&
         std::abs(prm.b) <= prm.eps_prime * tol && std::abs(prm.d) <= prm.eps_prime * tol;
}

AppendixParams sample_appendix(double j, double delta, double eps_prime, std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = stream(seed, index);
  const double jd = j * delta;
  auto sign = [&] { return rng.uniform() < 0.5 ? -1.0 : 1.0; };
  AppendixParams prm;
  prm.j = j;
  prm.delta = delta;
  prm.eps_prime = eps_prime;
  prm.p = std::exp2(20 * jd + 20 * jd * rng.uniform());
  prm.q = std::exp2(20 * jd + 20 * jd * rng.uniform());
  prm.a = sign() * std::exp2(-10 * jd * rng.uniform());
  prm.c = sign() * std::exp2(-10 * jd * rng.uniform());
  prm.b = eps_prime * (2 * rng.uniform() - 1);
  prm.d = eps_prime * (2 * rng.uniform() - 1);
  return prm;
}

AppendixTrace appendix_m(const AppendixParams& prm, bool diagnostic) {
  if (!diagnostic && !admissible(prm)) fail(ErrorKind::OutOfRange, "appendix parameters outside the admissible box");
  const auto& [p, q, a, b, c, d, j, delta, eps_prime] = prm;
  (void)j;
  (void)delta;
  (void)eps_prime;
  AppendixTrace out;
  out.m = sl2_exp_x(-d) * sl2_exp_v(-c) * sl2_exp_u(p) * sl2_exp_v(a) * sl2_exp_x(b) * sl2_exp_u(-q);
  out.trace_direct = out.m.trace();
  out.trace_closed = std::exp(-b - d) * (q * std::exp(2 * (b + d)) * (a * (c * p - 1) + c) + std::exp(2 * b) * (a * p + 1) +
                                         std::exp(2 * d) * (1 - c * p));
  out.relative_error = std::abs(out.trace_closed - out.trace_direct) / std::max(std::abs(out.trace_direct), 1e-300);
  out.lower = std::exp2(20 * prm.jd() - 1);
  out.upper = std::exp2(80 * prm.jd() + 1);
  out.window_ok = std::abs(out.trace_direct) >= out.lower && std::abs(out.trace_direct) <= out.upper;
  return out;
}

ConjugatorDecomposition conjugator_decomposition(const Mat2& m) {
  const double tr = m.trace();
  if (!(std::abs(tr) > 2)) fail(ErrorKind::NotHyperbolic, "|Tr m| <= 2");
  ConjugatorDecomposition out;
  out.lambda = 0.5 * (tr + std::copysign(std::sqrt(tr * tr - 4), tr));
  const double mu = 1 / out.lambda;

  auto eigvec = [&](double nu) {
    const Eigen::Vector2d a(m(0, 1), nu - m(0, 0));
    const Eigen::Vector2d b(nu - m(1, 1), m(1, 0));
    return a.squaredNorm() >= b.squaredNorm() ? a : b;
  };
  Eigen::Vector2d v1 = eigvec(out.lambda);
  Eigen::Vector2d v2 = eigvec(mu);
  double det = v1(0) * v2(1) - v1(1) * v2(0);
  if (det < 0) {
    v2 = -v2;
    det = -det;
  }
  v1 /= std::sqrt(det);
  v2 /= std::sqrt(det);

  // h' = k a n' by Gram-Schmidt; h = k exp(alpha U) with alpha = r12 / r22.
  const double r11 = v1.norm();
  const Eigen::Vector2d q1 = v1 / r11;
  const Eigen::Vector2d q2(-q1(1), q1(0));
  const double r12 = q1.dot(v2);
  const double r22 = q2.dot(v2);
  Mat2 k;
  k << q1(0), q2(0), q1(1), q2(1);
  out.alpha = r12 / r22;
  out.h = k * sl2_exp_u(out.alpha);
  out.k_angle = wrap_angle(std::atan2(k(1, 0), k(0, 0)));
  out.log_abs_alpha = out.alpha == 0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(out.alpha));
  out.s = 2 * std::log(std::abs(out.lambda));
  out.s_base2 = 2 * std::log2(std::abs(out.lambda));

  const Mat2 m2 = m * m;
  const Mat2 rebuilt = out.h * sl2_exp_x(out.s) * out.h.inverse();
  out.residual = (m2 - rebuilt).norm() / m2.norm();
  out.p1_distance = kak(m2).s;
  return out;
}

AppendixConjugator conjugator_decomposition(const AppendixParams& prm, bool diagnostic) {
  AppendixConjugator out;
  out.dec = conjugator_decomposition(appendix_m(prm, diagnostic).m);
  const double jd = prm.jd();
  out.window_lo = 40 * jd - 5;
  out.window_hi = 160 * jd + 6;
  const double s = std::abs(out.dec.s_base2);
  out.window_ok = s >= out.window_lo && s <= out.window_hi;
  out.k_prime_u = out.dec.p1_distance / jd;
  const double abs_alpha = std::abs(out.dec.alpha);
  out.k_prime_alpha = abs_alpha > 0 ? std::log2(abs_alpha) / jd : 0;
  out.k_prime_log_alpha = out.dec.log_abs_alpha > 1 ? std::log2(out.dec.log_abs_alpha) / jd : 0;
  return out;
}

double t1h2_distance(const Mat2& g, const Mat2& h) { return frame_distance(frame_of(g), frame_of(h)); }

namespace {

struct CellKey {
  long x, y, t;
  bool operator==(const CellKey&) const = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9e3779b97f4a7c15ULL;
    h ^= static_cast<std::uint64_t>(k.y) * 0xc2b2ae3d27d4eb4fULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.t) * 0x165667b19e3779f9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

// Haar-uniform cloud in {d_H(z, i) + |theta| <= R}: area element sinh r dr dphi
// times d theta, by rejection on |theta|.
std::vector<Frame> ball_cloud(double radius, std::size_t samples, std::uint64_t seed) {
  std::vector<Frame> pts;
  pts.reserve(samples);
  const double tmax = std::min(radius, kPi);
  std::uint64_t index = 0;
  while (pts.size() < samples) {
    SplitMix64 rng = stream(seed, index++);
    const double r = std::acosh(1 + rng.uniform() * (std::cosh(radius) - 1));
    const double phi = 2 * kPi * rng.uniform();
    const double theta = tmax * (2 * rng.uniform() - 1);
    if (r + std::abs(theta) > radius) continue;
    const double rho = std::tanh(r / 2);
    pts.push_back({rho * std::cos(phi), rho * std::sin(phi), wrap_angle(theta)});
  }
  return pts;
}

std::size_t greedy_net(const std::vector<Frame>& pts, double eps) {
  // d <= eps forces |w - w'| <= eps/2 in the disk and |theta - theta'| <= eps.
  const double cw = eps / 2;
  const long tcells = std::max(1L, static_cast<long>(std::floor(2 * kPi / eps)));
  const double ct = 2 * kPi / static_cast<double>(tcells);
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid;
  std::vector<std::size_t> net;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Frame& f = pts[k];
    const long cx = static_cast<long>(std::floor(f.wx / cw));
    const long cy = static_cast<long>(std::floor(f.wy / cw));
    const long ctt = std::min(tcells - 1, static_cast<long>(std::floor(f.theta / ct)));
    bool covered = false;
    for (long dx = -1; dx <= 1 && !covered; ++dx)
      for (long dy = -1; dy <= 1 && !covered; ++dy)
        for (long dt = -1; dt <= 1 && !covered; ++dt) {
          if (tcells < 3 && dt != 0) continue;
          const CellKey key{cx + dx, cy + dy, ((ctt + dt) % tcells + tcells) % tcells};
          auto it = grid.find(key);
          if (it == grid.end()) continue;
          for (std::size_t idx : it->second)
            if (frame_distance(f, pts[idx]) <= eps) {
              covered = true;
              break;
            }
        }
    if (tcells < 3 && !covered) {
      // every theta cell is a neighbour
      for (long t = 0; t < tcells && !covered; ++t)
        for (long dx = -1; dx <= 1 && !covered; ++dx)
          for (long dy = -1; dy <= 1 && !covered; ++dy) {
            auto it = grid.find(CellKey{cx + dx, cy + dy, t});
            if (it == grid.end()) continue;
            for (std::size_t idx : it->second)
              if (frame_distance(f, pts[idx]) <= eps) {
                covered = true;
                break;
              }
          }
    }
    if (!covered) {
      net.push_back(k);
      grid[CellKey{cx, cy, ctt}].push_back(k);
    }
  }
  return net.size();
}

double solve_c(double net, double eps, double radius) {
  // smallest C with log C + 2 C R >= log net + 3 log eps
  const double target = std::log(net) + 3 * std::log(eps);
  if (radius == 0) return std::exp(target);
  double lo = 1e-300, hi = 1;
  while (std::log(hi) + 2 * hi * radius < target) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (std::log(mid) + 2 * mid * radius < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

CoveringReport covering_growth(const std::vector<double>& eps_list, const std::vector<double>& radius_list,
                               std::size_t samples, std::uint64_t seed) {
  constexpr std::size_t kBudget = 5'000'000;
  if (eps_list.empty() || radius_list.empty()) fail(ErrorKind::InvalidArgument, "empty grid");
  if (samples == 0 || samples > kBudget) fail(ErrorKind::SampleBudgetExceeded, "sample count outside (0, 5e6]");
  for (double e : eps_list)
    if (!(e > 0 && e < 1)) fail(ErrorKind::InvalidArgument, "eps must lie in (0, 1)");

  CoveringReport rep;
  for (std::size_t ri = 0; ri < radius_list.size(); ++ri) {
    const double radius = radius_list[ri];
    if (radius < 0) fail(ErrorKind::InvalidArgument, "negative radius");
    const auto cloud = ball_cloud(radius, samples, seed + ri);
    for (double e : eps_list) {
      const std::size_t n = greedy_net(cloud, e);
      if (radius > 0 && n * 5 > samples)
        fail(ErrorKind::SampleBudgetExceeded, "cloud too sparse for the requested eps; raise the sample count");
      rep.cells.push_back({e, radius, n});
    }
  }

  const double r_min = *std::min_element(radius_list.begin(), radius_list.end());
  const double e_min = *std::min_element(eps_list.begin(), eps_list.end());
  std::vector<double> lx, ly, rx, ry;
  for (const auto& c : rep.cells) {
    if (c.radius == r_min) {
      lx.push_back(std::log(1 / c.eps));
      ly.push_back(std::log(static_cast<double>(c.net)));
    }
    if (c.eps == e_min && c.radius > 0) {
      rx.push_back(c.radius);
      ry.push_back(std::log(static_cast<double>(c.net)));
    }
  }
  rep.eps_exponent = slope(lx, ly);
  rep.radius_rate = slope(rx, ry);

  for (const auto& c : rep.cells) rep.c_fit = std::max(rep.c_fit, solve_c(static_cast<double>(c.net), c.eps, c.radius));
  return rep;
}

}  // namespace uniflow
