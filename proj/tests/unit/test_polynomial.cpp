#include <cmath>
#include <random>

#include "doctest.h"
#include "uniflow/error.hpp"
#include "uniflow/polynomial.hpp"

using namespace uniflow;

namespace {

// Lagrange basis on nodes k/d, expanded into monomials with exact rationals.
// Row j of the inverse Vandermonde is the t^j coefficient of each basis poly.
Scalar lagrange_constant_oracle(int d) {
  std::vector<Scalar> nodes;
  for (int k = 0; k <= d; ++k) nodes.emplace_back(k, d == 0 ? 1 : d);
  std::vector<std::vector<Scalar>> basis;
  for (int k = 0; k <= d; ++k) {
    std::vector<Scalar> poly{Scalar(1)};
    for (int m = 0; m <= d; ++m) {
      if (m == k) continue;
      const Scalar denom = nodes[k] - nodes[m];
      std::vector<Scalar> next(poly.size() + 1, Scalar(0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i] / denom;
        next[i] -= poly[i] * nodes[m] / denom;
      }
      poly = next;
    }
    basis.push_back(poly);
  }
  Scalar best = d + 1;
  for (int j = 0; j <= d; ++j) {
    Scalar row = 0;
    for (int k = 0; k <= d; ++k) row += abs(basis[k][j]);
    if (row > best) best = row;
  }
  return best;
}

}  // namespace

TEST_CASE("coefficient constant C(d)") {
  CHECK(coefficient_bounds_constant_exact(0) == 1);
  CHECK(coefficient_bounds_constant_exact(1) == 2);
  CHECK(coefficient_bounds_constant_exact(2) == 8);
  for (int d = 0; d <= 8; ++d) {
    CHECK(coefficient_bounds_constant_exact(d) == lagrange_constant_oracle(d));
    CHECK(coefficient_bounds_constant_exact(d) >= d + 1);
    CHECK(coefficient_bounds_constant(d) == doctest::Approx(coefficient_bounds_constant_exact(d).get_d()));
  }
  CHECK_THROWS_AS(coefficient_bounds_constant_exact(-1), Error);
}

TEST_CASE("C(d) survives random falsification on both directions") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss;
  for (int d = 1; d <= 4; ++d) {
    const double c = coefficient_bounds_constant(d);
    const double big_t = 1.0 + d;
    for (int trial = 0; trial < 4000; ++trial) {
      std::vector<double> a(static_cast<std::size_t>(d) + 1);
      for (auto& x : a) x = gauss(rng);
      Polynomial p(a);
      const double sup = sup_abs(p, 0, big_t);
      for (int k = 0; k <= d; ++k) REQUIRE(std::abs(a[static_cast<std::size_t>(k)]) <= c * std::pow(big_t, -k) * sup * (1 + 1e-9));
      // converse: shrink the coefficients under C^-1 T^-k
      std::vector<double> small(a.size());
      std::uniform_real_distribution<double> unit(-1, 1);
      for (int k = 0; k <= d; ++k) small[static_cast<std::size_t>(k)] = unit(rng) / c * std::pow(big_t, -k);
      REQUIRE(sup_abs(Polynomial(small), 0, big_t) < 1.0);
    }
  }
}

TEST_CASE("polynomial arithmetic and roots") {
  const Polynomial p = Polynomial({-0.1, 1}) * Polynomial({-0.5, 1}) * Polynomial({-0.9, 1});
  CHECK(p.degree() == 3);
  const auto roots = real_roots(p, 0, 1);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(roots[2] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(real_roots(p, 0.2, 0.4).empty());
  CHECK(p.derivative()(0.0) == doctest::Approx(0.05 + 0.09 + 0.45));
  CHECK(p.rescaled(2)(0.25) == doctest::Approx(p(0.5)));
  CHECK(Polynomial({0, 0, 0}).degree() == -1);
  CHECK(sup_abs(Polynomial({0, 1, -1}), 0, 1) == doctest::Approx(0.25));
}

TEST_CASE("sublevel measure") {
  auto lin = sublevel_measure(Polynomial({0, 1}), 0.1, 0, 1);
  CHECK(lin.measure == doctest::Approx(0.1));
  CHECK(lin.sup_interval == doctest::Approx(1));
  CHECK(lin.bg_bound == doctest::Approx(4));
  CHECK(lin.bg_holds);

  auto sq = sublevel_measure(Polynomial({0, 0, 1}), 0.01, 0, 1);
  CHECK(sq.measure == doctest::Approx(0.1));
  CHECK(sq.bg_holds);

  // |t^2 - 1/4| <= 0.05 on [0,1]: sqrt(0.3) - sqrt(0.2)
  auto band = sublevel_measure(Polynomial({-0.25, 0, 1}), 0.05, 0, 1);
  CHECK(band.measure == doctest::Approx(std::sqrt(0.3) - std::sqrt(0.2)).epsilon(1e-12));

  auto flat = sublevel_measure(Polynomial({0.05}), 0.1, 0, 2);
  CHECK(flat.measure == doctest::Approx(2));

  CHECK_THROWS_AS(sublevel_measure(Polynomial({0, 1}), 0.1, 1, 1), Error);
  try {
    sublevel_measure(Polynomial({0, 1}), 0.1, 1, 0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInterval);
  }
}

TEST_CASE("Brudnyi-Ganzburg on random polynomials") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<double> a(1 + trial % 6);
    for (auto& x : a) x = gauss(rng);
    Polynomial p(a);
    double w0 = unit(rng), w1 = unit(rng);
    if (w0 > w1) std::swap(w0, w1);
    if (w1 - w0 < 1e-3) continue;
    double ratio = 0;
    REQUIRE(brudnyi_ganzburg_holds(p, 0, 1, w0, w1, &ratio));
    CHECK(ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("long-range sublevel bound") {
  // p(t) = (t/N)^3 eps: |p(N)| = eps, p(0) = 0
  const double n = 1000, eps = 0.01, eta = 0.3;
  Polynomial p({0, 0, 0, eps / (n * n * n)});
  auto r = long_range_sublevel(p, 3, eps, n, eta);
  CHECK(r.hypotheses);
  CHECK(r.holds);
  CHECK(r.measure == doctest::Approx(std::cbrt(10.0) * n));
  const double c3 = coefficient_bounds_constant(3);
  CHECK(r.bound == doctest::Approx(40 * c3 * c3 * std::pow(n, 1 + eta - eta / 3)));
}
