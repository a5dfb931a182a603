#include <Eigen/Dense>

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "uniflow/error.hpp"
#include "uniflow/lie_algebra.hpp"

using namespace uniflow;
using testing_helpers::mat;
using testing_helpers::random_element;
using testing_helpers::sl_elem;

namespace {

// Killing rank through plain doubles and direct commutators, independent of
// the cached structure constants.
int killing_rank_oracle(const AlgebraPtr& g) {
  const std::size_t n = g->dim();
  std::vector<Eigen::MatrixXd> ads;
  for (std::size_t a = 0; a < n; ++a) {
    Eigen::MatrixXd ad(n, n);
    for (std::size_t b = 0; b < n; ++b) {
      const RationalVector c = g->coordinates(commutator(g->basis()[a], g->basis()[b]));
      for (std::size_t k = 0; k < n; ++k) ad(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b)) = c[k].get_d();
    }
    ads.push_back(ad);
  }
  Eigen::MatrixXd kf(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      kf(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = (ads[a] * ads[b]).trace();
  return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(kf).rank());
}

void check_closure_oracle(const AlgebraPtr& g) {
  for (std::size_t a = 0; a < g->dim(); ++a)
    for (std::size_t b = 0; b < g->dim(); ++b) {
      const RationalMatrix direct = commutator(g->basis()[a], g->basis()[b]);
      const AlgebraElement br = bracket(basis_element(g, a), basis_element(g, b));
      REQUIRE(br.matrix() == direct);
    }
}

}  // namespace

TEST_CASE("sl(d) bases") {
  auto sl2 = build_sl(2);
  CHECK(sl2->dim() == 3);
  CHECK(sl2->basis()[0] == mat({{0, 1}, {0, 0}}));
  CHECK(sl2->basis()[1] == mat({{0, 0}, {1, 0}}));
  CHECK(sl2->basis()[2] == mat({{1, 0}, {0, -1}}));
  CHECK(build_sl(3)->dim() == 8);
  CHECK(build_sl(5)->dim() == 24);
  CHECK_THROWS_AS(build_sl(1), Error);
  try {
    build_sl(1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
}

TEST_CASE("bracket closure against direct commutators") {
  auto sl4 = build_sl(4);
  CHECK(sl4->dim() * (sl4->dim() - 1) / 2 == 105);
  check_closure_oracle(sl4);
  check_closure_oracle(build_su21());
  check_closure_oracle(direct_sum(build_sl(2), build_sl(3)));
}

TEST_CASE("sl(2) relations") {
  auto g = build_sl(2);
  auto u = basis_element(g, 0);
  auto v = basis_element(g, 1);
  auto x = basis_element(g, 2);
  CHECK(bracket(x, u) == Scalar(2) * u);
  CHECK(bracket(u, u).is_zero());
  CHECK(bracket(u, v) == x);
  CHECK(bracket(x, v) == Scalar(-2) * v);
}

TEST_CASE("su(2,1)") {
  auto g = build_su21();
  CHECK(g->dim() == 8);
  CHECK(g->ambient_dim() == 6);
  CHECK(killing_rank_oracle(g) == 8);
  // iE12 has nilpotent ad
  auto u = basis_element(g, kSu21UnipotentIndex);
  RationalMatrix p = ad_matrix(u);
  p = p * p * p;
  CHECK(p.is_zero());
  // preserves the Hermitian form: A^* J + J A = 0, checked on the realified J
  const RationalMatrix j = realify(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), RationalMatrix(3, 3));
  for (const auto& b : g->basis()) CHECK((b.transpose() * j + j * b).is_zero());
}

TEST_CASE("Killing form nondegenerate on every builtin") {
  for (int d = 2; d <= 4; ++d) CHECK(killing_rank_oracle(build_sl(d)) == d * d - 1);
  CHECK(killing_rank_oracle(power(build_sl(2), 3)) == 9);
}

TEST_CASE("direct sums") {
  auto sl2 = build_sl(2);
  auto g = direct_sum(sl2, sl2);
  CHECK(g->dim() == 6);
  CHECK(bracket(basis_element(g, 0), basis_element(g, 4)).is_zero());
  CHECK(direct_sum(sl2, build_sl(3))->dim() == 11);
}

TEST_CASE("centralizers") {
  auto sl2 = build_sl(2);
  const std::vector<AlgebraElement> only_u{basis_element(sl2, 0)};
  auto c = centralizer(sl2, only_u);
  REQUIRE(c.size() == 1);
  CHECK(c[0] == basis_element(sl2, 0));

  auto sl3 = build_sl(3);
  AlgebraElement u = sl_elem(sl3, 3, {{1, 2}});
  AlgebraElement v = sl_elem(sl3, 3, {{2, 1}});
  AlgebraElement x = element_from_matrix(sl3, mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}));
  const std::vector<AlgebraElement> ux{u, x};
  const std::vector<AlgebraElement> uvx{u, v, x};
  const std::vector<AlgebraElement> xs{x};
  auto cux = centralizer(sl3, ux);
  auto cuvx = centralizer(sl3, uvx);
  CHECK(cux.size() == cuvx.size());
  for (const auto& a : cux) CHECK(bracket(a, v).is_zero());
  // null-space oracle: diagonal X with eigenvalues (1,-1,0) commutes with the
  // Cartan and with E_ij exactly when x_i = x_j, which never happens here.
  CHECK(centralizer(sl3, xs).size() == 2);
}

TEST_CASE("algebraic identities on random elements") {
  std::mt19937_64 rng(11);
  for (auto g : {build_sl(3), build_su21(), direct_sum(build_sl(2), build_sl(2))}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto x = random_element(g, rng);
      auto y = random_element(g, rng);
      auto z = random_element(g, rng);
      const Scalar k(3, 7);
      CHECK(bracket(x, y) == Scalar(-1) * bracket(y, x));
      CHECK(bracket(k * x + y, z) == k * bracket(x, z) + bracket(y, z));
      CHECK((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero());
      CHECK(ad_matrix(x) * y.coeffs == bracket(x, y).coeffs);
    }
    for (std::size_t a = 0; a < g->dim(); ++a)
      for (std::size_t b = 0; b < g->dim(); ++b)
        for (std::size_t c = 0; c < g->dim(); ++c) {
          auto x = basis_element(g, a);
          auto y = basis_element(g, b);
          auto z = basis_element(g, c);
          REQUIRE((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero());
        }
  }
}

TEST_CASE("coordinates reject matrices outside the span") {
  auto g = build_sl(2);
  try {
    g->coordinates(mat({{1, 0}, {0, 0}}));
    FAIL("expected NotInSpan");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInSpan);
  }
}

TEST_CASE("non-semisimple bases are rejected") {
  // upper triangular 2x2 traceless: span{E12, diag(1,-1)} is solvable
  std::vector<RationalMatrix> basis{mat({{0, 1}, {0, 0}}), mat({{1, 0}, {0, -1}})};
  try {
    LieAlgebra bad("borel", 2, basis);
    FAIL("expected NotSemisimple");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSemisimple);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_scalar("3/6") == Scalar(1, 2));
  CHECK(parse_scalar("-4") == Scalar(-4));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
}
