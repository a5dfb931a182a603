#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uniflow/error.hpp"
#include "uniflow/sl2.hpp"

using namespace uniflow;

namespace {

// s from the closed-form top eigenvalue of g g^T.
double s_oracle(const Mat2& g) {
  const Mat2 p = g * g.transpose();
  const double tr = p.trace();
  const double lam = 0.5 * (tr + std::sqrt(tr * tr - 4 * p.determinant()));
  return 0.5 * std::log(lam);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::UnknownSuite;
}

}  // namespace

TEST_CASE("kak decomposition") {
  auto id = kak(Mat2::Identity());
  CHECK(id.s == 0);

  const double t = 10;
  auto u = kak(sl2_exp_u(t));
  const double lam = (t * t + std::sqrt(t * t + 4) * t + 2) / 2;
  CHECK(lam == doctest::Approx(101.990).epsilon(1e-5));
  CHECK(u.s == doctest::Approx(0.5 * std::log(lam)).epsilon(1e-13));
  CHECK(u.s == doctest::Approx(2.3124).epsilon(1e-4));

  auto d = kak(sl2_exp_x(1));
  CHECK(d.s == doctest::Approx(1));
  CHECK(d.theta1 == doctest::Approx(0));
  CHECK(d.theta2 == doctest::Approx(0));

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), ss(0, 9.9), small(-3, 3);
  int tested = 0;
  while (tested < 10000) {
    const Mat2 g = sl2_rotation(ang(rng)) * sl2_exp_x(ss(rng)) * sl2_rotation(ang(rng)) * sl2_exp_u(small(rng)) *
                   (tested % 3 == 0 ? sl2_exp_v(small(rng)) : Mat2::Identity());
    if (g.norm() > std::exp(10.0)) continue;
    ++tested;
    const auto k = kak(g);
    REQUIRE((k.recompose() - g).norm() <= 1e-10 * g.norm());
    REQUIRE(k.s >= 0);
    REQUIRE(k.theta1 >= 0);
    REQUIRE(k.theta1 < std::numbers::pi);
    REQUIRE(k.s == doctest::Approx(s_oracle(g)).epsilon(1e-9));
  }
  CHECK(kind_of([] { kak(2 * Mat2::Identity()); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("unipotent distance grows like log t") {
  auto rep = unipotent_distance_check({2, 10, 100, 1e4, 1e6});
  CHECK(rep.all_hold);
  CHECK(rep.rows[1].s == doctest::Approx(2.3124).epsilon(1e-4));
  CHECK(rep.rows[1].bound == doctest::Approx(4.605).epsilon(1e-3));
  CHECK(std::abs(rep.rows.back().ratio - 1) < 1e-3);
  CHECK(rep.rows.front().s <= 2 * std::log(2.0));
  CHECK(kind_of([] { unipotent_distance_check({1.5}); }) == ErrorKind::OutOfRange);
}

TEST_CASE("psi matching") {
  auto a = psi_match(0, 0.05, 3);
  CHECK(a.psi == doctest::Approx(3 * std::exp(0.1)));
  CHECK(a.alpha == 0);
  // beta collapses to a_X when a_V = 0
  CHECK(a.beta == doctest::Approx(0.05));
  CHECK(a.residual < 1e-12);

  auto b = psi_match(0.001, 0, 100);
  CHECK(b.psi == doctest::Approx(100 / 0.9));
  CHECK(b.alpha == doctest::Approx(0.0009));
  CHECK(b.beta == doctest::Approx(-std::log(0.9)));
  CHECK(b.residual < 1e-10);
  CHECK(b.alpha_bound);
  CHECK(b.beta_bound);
  // t = 100 lies past eps^2/a_V = 40 for eps = 0.2, so psi' leaves the window there
  CHECK(b.psi_prime == doctest::Approx(1 / 0.81));
  auto w = psi_prime_window(0.001, 0, 0.2);
  CHECK(w.t_max == doctest::Approx(40));
  CHECK(w.hypotheses);
  CHECK(w.holds);
  CHECK(w.max_prime == doctest::Approx(1 / (0.96 * 0.96)));

  CHECK(kind_of([] { psi_match(0.01, 0, 100); }) == ErrorKind::DomainExceeded);
  CHECK(kind_of([] { psi_match(0, 0.2, 1); }) == ErrorKind::DomainExceeded);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(-1, 1);
  for (int k = 0; k < 3000; ++k) {
    const double av = 0.01 * unit(rng), ax = 0.0999 * unit(rng);
    const double t = av == 0 ? 1 : 0.1 / std::abs(av) * unit(rng);
    auto r = psi_match(av, ax, t);
    REQUIRE(r.residual < 1e-10 * std::max(1.0, std::abs(r.psi)));
    REQUIRE(r.alpha_bound);
    REQUIRE(r.beta_bound);
    const double e = 0.05 + 0.15 * std::abs(unit(rng));
    auto win = psi_prime_window(av, 0.99 * e * e * unit(rng), e);
    REQUIRE(win.holds);
  }
}

TEST_CASE("slide lemma") {
  auto g2 = build_sl(2);
  auto chart = make_chart(g2, basis_element(g2, 0));
  const double eps = 0.1, r = std::ldexp(1.0, 16);
  Vec c = Vec::Zero(3);
  auto zero = slide_check(chart, c, r, 0, eps);
  CHECK(zero.ell == 0);
  CHECK(zero.member);

  c(0) = 0.99 * eps * eps * eps / r;
  auto quarter = slide_check(chart, c, r, r / 4, eps);
  CHECK(quarter.member);
  CHECK(quarter.ell_below_r);
  CHECK(quarter.sl2_residual < 1e-12);
  CHECK(quarter.coeffs(0) == doctest::Approx(quarter.b_l));
  CHECK(quarter.coeffs(1) == doctest::Approx(quarter.c_l));

  auto edge = slide_check(chart, c, r, r / 3, eps);
  CHECK(std::abs(edge.ell) < r);
  CHECK(edge.member);
  CHECK(kind_of([&] { slide_check(chart, c, r, r / 2, eps); }) == ErrorKind::PreconditionViolated);
  Vec far = c;
  far(0) = 2 * eps * eps * eps / r;
  CHECK(kind_of([&] { slide_check(chart, far, r, 1, eps); }) == ErrorKind::PreconditionViolated);

  auto g3 = build_sl(3);
  auto chart3 = make_chart(g3, testing_helpers::sl_elem(g3, 3, {{1, 2}}));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(-0.9, 0.9);
  const double e3 = eps * eps * eps;
  const double rr = 4096;
  for (int k = 0; k < 20; ++k) {
    Vec x = Vec::Zero(8);
    x(0) = unit(rng) * e3 / rr;
    x(1) = unit(rng) * e3;
    x(2) = unit(rng) * e3 / 4;
    for (std::size_t i = 3; i < 8; ++i) {
      const auto& l = chart3.labels[i];
      x(static_cast<Eigen::Index>(i)) = unit(rng) * e3 / 8 * std::pow(rr, -l.level);
    }
    if (!in_kak_ball(chart3, x, rr, e3)) continue;
    auto res = slide_check(chart3, x, rr, rr / 3 * unit(rng), eps);
    CHECK(res.member);
    CHECK(res.ell_below_r);
    CHECK(res.sl2_residual < 1e-12);
  }
}

TEST_CASE("appendix trace formula") {
  AppendixParams prm{4, 4, 1, 0, 1, 0};
  auto m = appendix_m(prm, true);
  CHECK(m.trace_closed == doctest::Approx(18));
  CHECK(m.trace_direct == doctest::Approx(18));
  CHECK(std::abs(m.m.determinant() - 1) < 1e-12);

  AppendixParams degen{5, 3, 0, 0, 0, 0};
  auto u = appendix_m(degen, true);
  CHECK(u.trace_direct == doctest::Approx(2));
  CHECK(kind_of([&] { appendix_m(degen); }) == ErrorKind::OutOfRange);

  for (double jd : {0.5, 1.0, 1.5}) {
    for (std::uint64_t k = 0; k < 2000; ++k) {
      auto s = sample_appendix(jd, 1.0, 0.01, 99, k);
      REQUIRE(admissible(s));
      auto t = appendix_m(s);
      REQUIRE(t.relative_error < 1e-9);
      REQUIRE(t.window_ok);
      REQUIRE(std::abs(t.m.determinant() - 1) <= 1e-12 * t.m.squaredNorm());
    }
  }
}

TEST_CASE("conjugator decomposition") {
  auto d = conjugator_decomposition(sl2_exp_x(1));
  CHECK(d.s == doctest::Approx(2));
  CHECK(d.alpha == doctest::Approx(0));
  CHECK((d.h - Mat2::Identity()).norm() < 1e-12);
  CHECK(d.residual < 1e-14);
  CHECK(kind_of([] { conjugator_decomposition(sl2_exp_u(3)); }) == ErrorKind::NotHyperbolic);

  // negative trace: m^2 still matches h exp(sX) h^-1
  auto n = conjugator_decomposition(Mat2(-sl2_exp_x(0.5) * sl2_exp_u(1)));
  CHECK(n.lambda < 0);
  CHECK(n.residual < 1e-12);

  for (double jd : {0.25, 0.5, 1.0}) {
    for (std::uint64_t k = 0; k < 1000; ++k) {
      auto prm = sample_appendix(jd, 1.0, 0.01, 5, k);
      const Mat2 m = appendix_m(prm).m;
      auto c = conjugator_decomposition(prm);
      REQUIRE(c.dec.residual < 1e-8);
      REQUIRE(m.trace() == doctest::Approx(c.dec.lambda + 1 / c.dec.lambda).epsilon(1e-9));
      REQUIRE(c.window_ok);
      REQUIRE(std::abs(c.dec.h.determinant() - 1) < 1e-9);
      const double kk = std::atan2(c.dec.h(1, 0), c.dec.h(0, 0));
      CHECK(std::abs(std::remainder(kk - c.dec.k_angle, 2 * std::numbers::pi)) < 1e-9);
    }
  }
  auto window = conjugator_decomposition(sample_appendix(0.25, 1.0, 0.01, 1, 0));
  CHECK(window.window_lo == doctest::Approx(5));
  CHECK(window.window_hi == doctest::Approx(46));
}

TEST_CASE("covering growth") {
  auto zero = covering_growth({0.3}, {0.0}, 1000, 1);
  CHECK(zero.cells.front().net == 1);

  auto rep = covering_growth({0.2, 0.1}, {1.0, 2.0}, 400000, 3);
  const double ratio = static_cast<double>(rep.cells[1].net) / static_cast<double>(rep.cells[0].net);
  MESSAGE("net ratio at R=1: " << ratio << ", C = " << rep.c_fit);
  CHECK(ratio == doctest::Approx(8).epsilon(0.3));
  CHECK(rep.radius_rate > 0);
  for (const auto& c : rep.cells)
    CHECK(static_cast<double>(c.net) <= rep.c_fit * std::pow(c.eps, -3) * std::exp(2 * rep.c_fit * c.radius) * (1 + 1e-9));
  CHECK(kind_of([] { covering_growth({0.01}, {3.0}, 1000, 1); }) == ErrorKind::SampleBudgetExceeded);
}
