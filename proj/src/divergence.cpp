#include "uniflow/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uniflow/error.hpp"
#include "uniflow/rng.hpp"

namespace uniflow {

namespace {

constexpr std::size_t kV = 0;
constexpr std::size_t kX = 1;
constexpr std::size_t kU = 2;

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Vec vec_of(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

void require_standard(const Vec& coeffs, const char* what, ErrorKind kind) {
  if (coeffs(kV) != 0.0 || coeffs(kX) != 0.0) fail(kind, std::string(what) + ": V and X coefficients must vanish");
}

// Ad(exp(tU)) Y as the finite sum of ad_U^k(Y) t^k / k!.
Mat flow_adjoint(const CoordinateChart& chart, const Mat& y, double t) {
  const Mat& u = chart.directions[kU];
  Mat term = y;
  Mat sum = y;
  const int top = chart.basis.chains.front().depth();
  for (int k = 1; k <= top; ++k) {
    term = commutator(u, term) * (t / k);
    sum += term;
  }
  return sum;
}

}  // namespace

std::string CoordLabel::name() const {
  switch (kind) {
    case CoordKind::V: return "V";
    case CoordKind::X: return "X";
    case CoordKind::U: return "U";
    case CoordKind::Chain: break;
  }
  return "X_" + std::to_string(level) + "^" + std::to_string(chain);
}

std::size_t CoordinateChart::index(std::size_t standard_chain, int level) const {
  if (standard_chain >= standard_chains.size() || level < 0 || level > depth(standard_chain))
    fail(ErrorKind::OutOfRange, "no such chain coordinate");
  return chain_offset[standard_chain] + static_cast<std::size_t>(level);
}

int CoordinateChart::depth(std::size_t standard_chain) const {
  return basis.chains[standard_chains[standard_chain]].depth();
}

int CoordinateChart::longest_depth() const {
  int l = 0;
  for (std::size_t j = 0; j < chain_count(); ++j) l = std::max(l, depth(j));
  return l;
}

CoordinateChart make_chart(const AlgebraPtr& g, const AlgebraElement& u, double radius) {
  CoordinateChart chart;
  chart.algebra = g;
  chart.triple = jacobson_morozov(g, u);
  chart.basis = chain_basis(g, u, chart.triple);
  chart.radius = radius;
  const std::size_t sl2 = *chart.basis.sl2_chain;

  chart.labels = {{CoordKind::V, -1, -1, -1}, {CoordKind::X, -1, -1, -1}, {CoordKind::U, -1, -1, -1}};
  chart.directions = {to_real(chart.triple.v.matrix()), to_real(chart.triple.x.matrix()),
                      to_real(chart.triple.u.matrix())};
  for (std::size_t c = 0; c < chart.basis.chains.size(); ++c) {
    if (c == sl2) continue;
    const Chain& chain = chart.basis.chains[c];
    const int j = static_cast<int>(chart.standard_chains.size());
    chart.standard_chains.push_back(c);
    chart.chain_offset.push_back(chart.labels.size());
    for (int i = 0; i <= chain.depth(); ++i) {
      chart.labels.push_back({CoordKind::Chain, j, i, chain.depth()});
      chart.directions.push_back(to_real(chain.level(i).matrix()));
    }
  }

  const Eigen::Index n = static_cast<Eigen::Index>(chart.dim());
  Mat d(chart.directions.front().size(), n);
  for (Eigen::Index c = 0; c < n; ++c) d.col(c) = vec_of(chart.directions[static_cast<std::size_t>(c)]);
  chart.coord_map = d.completeOrthogonalDecomposition().pseudoInverse();

  const int top = chart.basis.chains.front().depth();
  for (const auto& dir : chart.directions) {
    std::vector<Mat> powers{dir};
    for (int k = 1; k <= top; ++k) powers.push_back(commutator(chart.directions[kU], powers.back()) / k);
    chart.ad_powers.push_back(std::move(powers));
  }
  return chart;
}

Vec lie_coordinates(const CoordinateChart& chart, const Mat& y) { return chart.coord_map * vec_of(y); }

Mat lie_element(const CoordinateChart& chart, const Vec& coeffs) {
  Mat m = Mat::Zero(chart.directions.front().rows(), chart.directions.front().cols());
  for (std::size_t c = 0; c < chart.dim(); ++c)
    if (coeffs(static_cast<Eigen::Index>(c)) != 0.0) m += coeffs(static_cast<Eigen::Index>(c)) * chart.directions[c];
  return m;
}

Mat standard_part(const CoordinateChart& chart, const Vec& coeffs) {
  Vec c = coeffs;
  c(kV) = 0;
  c(kX) = 0;
  return lie_element(chart, c);
}

Mat recompose(const CoordinateChart& chart, const Vec& coeffs) {
  return expm(coeffs(kV) * chart.directions[kV]) * expm(coeffs(kX) * chart.directions[kX]) *
         expm(standard_part(chart, coeffs));
}

Vec decompose(const CoordinateChart& chart, const Mat& g) {
  const double dist = distance_to_identity(g);
  if (!(dist <= chart.radius)) fail(ErrorKind::OutOfChartDomain, "element lies outside the chart radius");
  const Eigen::Index n = static_cast<Eigen::Index>(chart.dim());

  auto residual = [&](const Vec& a) {
    const Mat h = expm(-a(kX) * chart.directions[kX]) * expm(-a(kV) * chart.directions[kV]) * g;
    Vec r = lie_coordinates(chart, logm(h));
    for (Eigen::Index k = kU; k < n; ++k) r(k) -= a(k);
    return r;
  };

  Vec a = lie_coordinates(chart, logm(g));
  Vec f = residual(a);
  for (int iter = 0; iter < 60 && f.norm() > 1e-15; ++iter) {
    Mat jac(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(a(k)));
      Vec ap = a;
      ap(k) += h;
      jac.col(k) = (residual(ap) - f) / h;
    }
    const Vec step = jac.fullPivLu().solve(-f);
    double lambda = 1;
    Vec trial = a + step;
    Vec ft = residual(trial);
    while (ft.norm() >= f.norm() && lambda > 1e-4) {
      lambda *= 0.5;
      trial = a + lambda * step;
      ft = residual(trial);
    }
    if (ft.norm() >= f.norm()) break;
    a = trial;
    f = ft;
  }
  if ((recompose(chart, a) - g).norm() > 1e-10 * std::max(1.0, g.norm()))
    fail(ErrorKind::OutOfChartDomain, "chart inversion did not converge");
  return a;
}

Vec DivergencePolynomial::evaluate(const CoordinateChart& chart, double t) const {
  Vec out = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
  out(kU) = std::exp(2 * s) * a_u;
  for (const auto& e : entries) out(static_cast<Eigen::Index>(e.coordinate)) = std::exp(e.weight * s) * e.in_t(t);
  return out;
}

DivergencePolynomial conj_poly(const CoordinateChart& chart, const Vec& coeffs, double s, ConjugationOrder order) {
  require_standard(coeffs, "conj_poly", ErrorKind::NonzeroSl2Part);
  DivergencePolynomial p;
  p.s = s;
  p.order = order;
  p.a_u = coeffs(kU);
  for (std::size_t j = 0; j < chart.chain_count(); ++j) {
    const int m = chart.depth(j);
    for (int i = 0; i <= m; ++i) {
      std::vector<double> c;
      for (int k = 0; k <= m - i; ++k) {
        double v = coeffs(static_cast<Eigen::Index>(chart.index(j, k + i))) / factorial(k);
        if (order == ConjugationOrder::FlowOutside) v *= std::exp(-2.0 * k * s);
        c.push_back(v);
      }
      p.entries.push_back({chart.index(j, i), static_cast<int>(j), i, m - 2 * i, Polynomial(std::move(c))});
    }
  }
  return p;
}

Mat conjugate_directly(const CoordinateChart& chart, const Mat& g, double t, double s, ConjugationOrder order) {
  const Mat a = expm(s * chart.directions[kX]);
  const Mat ai = expm(-s * chart.directions[kX]);
  const Mat b = expm(t * chart.directions[kU]);
  const Mat bi = expm(-t * chart.directions[kU]);
  if (order == ConjugationOrder::ScaleOutside) return a * b * g * bi * ai;
  return b * a * g * ai * bi;
}

double bowen_sup(const CoordinateChart& chart, const Mat& y, double horizon) {
  std::vector<Mat> terms{y};
  const int top = chart.basis.chains.front().depth();
  for (int k = 1; k <= top; ++k) terms.push_back(commutator(chart.directions[kU], terms.back()) / k);
  // |sum_k (uR)^k M_k|^2 as a polynomial in u on [0, 1]
  std::vector<double> q(2 * terms.size() - 1, 0.0);
  for (std::size_t k = 0; k < terms.size(); ++k)
    for (std::size_t l = 0; l < terms.size(); ++l)
      q[k + l] += (terms[k].array() * terms[l].array()).sum() * std::pow(horizon, static_cast<double>(k + l));
  if (horizon <= 0) return std::sqrt(std::max(q[0], 0.0));
  return std::sqrt(std::max(sup_abs(Polynomial(q), 0.0, 1.0), 0.0));
}

bool in_bowen_ball(const CoordinateChart& chart, const Mat& y, double horizon, double eps) {
  return bowen_sup(chart, y, horizon) < eps;
}

bool in_kak_ball(const CoordinateChart& chart, const Vec& coeffs, double horizon, double eps) {
  return std::abs(coeffs(kV)) < eps / horizon && std::abs(coeffs(kX)) < eps &&
         in_bowen_ball(chart, standard_part(chart, coeffs), horizon, eps);
}

long long kak_volume_exponent(const ChainBasis& cb) {
  if (!cb.sl2_chain) fail(ErrorKind::PreconditionViolated, "chain basis has no separated sl2 chain");
  long long e = 1;
  for (std::size_t c = 0; c < cb.chains.size(); ++c) {
    if (c == *cb.sl2_chain) continue;
    const long long m = cb.chains[c].depth();
    e += m * (m + 1) / 2;
  }
  return e;
}

int KakBallSpec::exponent_sum() const {
  int s = 0;
  for (int p : r_powers) s += p;
  return s;
}

double KakBallSpec::volume() const {
  double v = 1;
  for (double w : half_widths) v *= 2 * w;
  return v;
}

KakBallSpec kak_ball_spec(const CoordinateChart& chart, double horizon, double eps) {
  if (!(horizon > 0) || !(eps > 0)) fail(ErrorKind::InvalidArgument, "horizon and radius must be positive");
  KakBallSpec spec;
  spec.horizon = horizon;
  spec.eps = eps;
  for (const auto& l : chart.labels) {
    const int p = l.kind == CoordKind::V ? 1 : (l.kind == CoordKind::Chain ? l.level : 0);
    spec.r_powers.push_back(p);
    spec.half_widths.push_back(eps * std::pow(horizon, -p));
  }
  return spec;
}

double coordinate_norm(const CoordinateChart& chart) { return chart.coord_map.rowwise().norm().maxCoeff(); }

double bowen_coefficient_bound(const CoordinateChart& chart, int depth, int level, double horizon, double eps) {
  return coefficient_bounds_constant(depth) * factorial(level) * coordinate_norm(chart) * eps *
         std::pow(horizon, -level);
}

VolumeFit kak_volume_fit(const CoordinateChart& chart, double eps, const std::vector<double>& horizons,
                         std::size_t samples, std::uint64_t seed) {
  if (horizons.size() < 2 || samples == 0) fail(ErrorKind::InvalidArgument, "need at least two horizons and one sample");
  const std::size_t n = chart.dim();
  const double kappa = coordinate_norm(chart);
  const int top = chart.basis.chains.front().depth();

  VolumeFit fit;
  fit.horizons = horizons;
  fit.expected = -(kak_volume_exponent(chart.basis));
  fit.outer_width = kappa;

  std::vector<std::vector<double>> widths(horizons.size(), std::vector<double>(n, 0.0));
  for (std::size_t h = 0; h < horizons.size(); ++h)
    for (std::size_t c = kU; c < n; ++c) {
      const auto& l = chart.labels[c];
      widths[h][c] = l.kind == CoordKind::U ? kappa * eps
                                            : bowen_coefficient_bound(chart, l.depth, l.level, horizons[h], eps);
    }

  std::vector<std::size_t> hits(horizons.size(), 0);
  std::vector<double> u(n);
  const Mat zero = Mat::Zero(chart.directions[0].rows(), chart.directions[0].cols());
  std::vector<Mat> terms(static_cast<std::size_t>(top) + 1, zero);
  std::vector<double> q(2 * terms.size() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    SplitMix64 rng = stream(seed, s);
    for (auto& x : u) x = 2 * rng.uniform() - 1;
    for (std::size_t h = 0; h < horizons.size(); ++h) {
      const double r = horizons[h];
      // V and X are drawn inside their exact boxes; only the standard part
      // meets the Bowen condition.
      for (auto& m : terms) m.setZero();
      for (std::size_t c = kU; c < n; ++c) {
        const double a = u[c] * widths[h][c];
        for (int k = 0; k <= top; ++k) terms[static_cast<std::size_t>(k)] += a * chart.ad_powers[c][static_cast<std::size_t>(k)];
      }
      std::fill(q.begin(), q.end(), 0.0);
      for (std::size_t k = 0; k < terms.size(); ++k)
        for (std::size_t l = 0; l < terms.size(); ++l)
          q[k + l] += (terms[k].array() * terms[l].array()).sum() * std::pow(r, static_cast<double>(k + l));
      if (std::sqrt(std::max(sup_abs(Polynomial(q), 0.0, 1.0), 0.0)) < eps) ++hits[h];
    }
  }

  std::vector<double> lx, ly;
  for (std::size_t h = 0; h < horizons.size(); ++h) {
    const double r = horizons[h];
    double box = 2 * eps / r * 2 * eps;  // V and X
    for (std::size_t c = kU; c < n; ++c) box *= 2 * widths[h][c];
    const double frac = static_cast<double>(hits[h]) / static_cast<double>(samples);
    fit.fractions.push_back(frac);
    fit.volumes.push_back(box * frac);
    if (frac > 0) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(box * frac));
    }
  }
  if (lx.size() < 2) fail(ErrorKind::SampleBudgetExceeded, "no Monte-Carlo hits; raise the sample count");
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxy += (lx[k] - mx) * (ly[k] - my);
    sxx += (lx[k] - mx) * (lx[k] - mx);
  }
  fit.slope = sxy / sxx;
  return fit;
}

RenormalizationResult renormalize_bowen(const CoordinateChart& chart, const Vec& coeffs, double s, double horizon,
                                        double delta_prime, double eps, double c) {
  require_standard(coeffs, "renormalize_bowen", ErrorKind::PreconditionViolated);
  if (!(horizon > 1) || !(eps > 0)) fail(ErrorKind::PreconditionViolated, "need R > 1 and eps > 0");
  if (delta_prime < 0 || delta_prime * c * c >= 1) fail(ErrorKind::PreconditionViolated, "delta' outside [0, C^-2)");
  if (s < 0 || s > 0.5 * (1 + delta_prime) * std::log(horizon) * (1 + 1e-12))
    fail(ErrorKind::PreconditionViolated, "s outside [0, (1+delta')/2 log R]");
  const double kappa = coordinate_norm(chart);
  if (std::abs(coeffs(kU)) > kappa * eps * (1 + 1e-12))
    fail(ErrorKind::PreconditionViolated, "U coefficient beyond the Bowen bound");
  for (std::size_t k = 3; k < chart.dim(); ++k) {
    const auto& l = chart.labels[k];
    if (std::abs(coeffs(static_cast<Eigen::Index>(k))) > bowen_coefficient_bound(chart, l.depth, l.level, horizon, eps) * (1 + 1e-12))
      fail(ErrorKind::PreconditionViolated, "chain coefficient " + l.name() + " beyond the Bowen bound");
  }

  RenormalizationResult r;
  r.scaled = coeffs;
  r.scaled(kU) = std::exp(-2 * s) * coeffs(kU);
  r.y_c = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
  r.y_c(kU) = r.scaled(kU);
  double c2 = 0;
  for (std::size_t k = 3; k < chart.dim(); ++k) {
    const auto& l = chart.labels[k];
    const auto idx = static_cast<Eigen::Index>(k);
    r.scaled(idx) = std::exp(-(l.depth - 2 * l.level) * s) * coeffs(idx);
    if (l.level == 0) r.y_c(idx) = r.scaled(idx);
    else c2 += coefficient_bounds_constant(l.depth) * factorial(l.level) * kappa * chart.directions[k].norm();
  }
  r.short_horizon = std::pow(horizon, 0.5 - c * delta_prime);
  r.short_radius = std::cbrt(eps);
  r.short_sup = bowen_sup(chart, standard_part(chart, r.scaled), r.short_horizon);
  r.member = r.short_sup < r.short_radius;
  r.residual = distance_to_identity(expm(-lie_element(chart, r.y_c)) * expm(standard_part(chart, r.scaled)));
  r.residual_scale = eps / std::sqrt(horizon);
  r.measured_c2 = r.residual / r.residual_scale;
  r.derived_c2 = 2 * c2;
  r.residual_ok = r.residual <= r.derived_c2 * r.residual_scale || r.residual <= 1e-14;
  return r;
}

ThresholdScan renormalization_threshold(const CoordinateChart& chart, const Vec& normalized, double eps,
                                        double delta_prime, int lo, int hi, double c) {
  if (lo > hi) fail(ErrorKind::InvalidArgument, "empty dyadic grid");
  ThresholdScan scan;
  for (int e = lo; e <= hi; ++e) {
    const double r = std::ldexp(1.0, e);
    Vec a = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
    a(kU) = normalized(kU) * eps;
    for (std::size_t k = 3; k < chart.dim(); ++k)
      a(static_cast<Eigen::Index>(k)) = normalized(static_cast<Eigen::Index>(k)) * eps * std::pow(r, -chart.labels[k].level);
    bool ok = false;
    try {
      ok = renormalize_bowen(chart, a, 0.5 * std::log(r), r, delta_prime, eps, c).member;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::PreconditionViolated) throw;
    }
    scan.horizons.push_back(r);
    scan.member.push_back(ok);
  }
  for (std::size_t k = scan.member.size(); k-- > 0;) {
    if (!scan.member[k]) break;
    scan.r0 = scan.horizons[k];
  }
  return scan;
}

EscapeResult escape_direction(const CoordinateChart& chart, const Vec& coeffs, double t, double horizon,
                              double eta_prime, double eps) {
  require_standard(coeffs, "escape_direction", ErrorKind::PreconditionViolated);
  const int big_l = chart.longest_depth();
  const std::size_t n = chart.chain_count();
  if (n == 0) fail(ErrorKind::PreconditionViolated, "no standard chains");
  if (!(eta_prime > 0) || eta_prime >= 1.0 / (2.0 * big_l * big_l + 2.0 * big_l + 1))
    fail(ErrorKind::PreconditionViolated, "eta' outside (0, 1/(2L^2+2L+1))");
  if (t < 0 || t > std::pow(horizon, 1 + eta_prime)) fail(ErrorKind::PreconditionViolated, "t outside [0, R^(1+eta')]");

  std::vector<double> p0(n), depth(n);
  for (std::size_t j = 0; j < n; ++j) {
    const int m = chart.depth(j);
    depth[j] = m;
    double acc = 0;
    double tk = 1;
    for (int k = 0; k <= m; ++k) {
      acc += tk * coeffs(static_cast<Eigen::Index>(chart.index(j, k))) / factorial(k);
      tk *= t;
    }
    p0[j] = acc;
  }
  auto zeta_norm = [&](double s) {
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += std::pow(std::exp(-depth[j] * s) * p0[j], 2);
    return std::sqrt(acc);
  };

  const double s_max = 2.0 * (big_l + 1) * eta_prime * std::log(horizon);
  const double target = 2 * eps;
  if (zeta_norm(0) < target || zeta_norm(s_max) > target)
    fail(ErrorKind::NoCrossing, "|zeta| does not cross 2 eps on [0, 2(L+1) eta' log R]");

  EscapeResult out;
  double lo = 0, hi = s_max;
  while (hi - lo > 1e-15 * std::max(1.0, hi) && out.iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    (zeta_norm(mid) > target ? lo : hi) = mid;
    ++out.iterations;
  }
  out.s = 0.5 * (lo + hi);
  out.zeta_norm = zeta_norm(out.s);

  out.c_t = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
  out.c_t(kU) = std::exp(-2 * out.s) * coeffs(kU);
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = std::exp(-depth[j] * out.s) * p0[j];
    out.c_t(static_cast<Eigen::Index>(chart.index(j, 0))) = cj;
    out.max_c = std::max(out.max_c, std::abs(cj));
  }
  out.max_c_ok = out.max_c >= eps / static_cast<double>(n);

  const Mat y = standard_part(chart, coeffs);
  const Mat z = flow_adjoint(chart, y, t);
  const Mat w = expm(-out.s * chart.directions[kX]) * z * expm(out.s * chart.directions[kX]);
  out.residual = distance_to_identity(expm(w) * expm(-lie_element(chart, out.c_t)));
  out.residual_bound = std::pow(horizon, -eta_prime);
  out.residual_ok = out.residual < out.residual_bound;
  out.conjugated_distance = z.norm();
  out.distance_precondition = out.conjugated_distance > 10 * eps;
  out.bowen_precondition = in_bowen_ball(chart, y, horizon, eps);
  return out;
}

}  // namespace uniflow
