#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "uniflow/chain_structure.hpp"
#include "uniflow/error.hpp"

using namespace uniflow;
using testing_helpers::mat;
using testing_helpers::sl_elem;

namespace {

// Jordan block sizes from the dimensions of ker A^k, computed with a
// separate null-space call chain.
std::vector<int> block_oracle(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> kernel{0};
  RationalMatrix p = RationalMatrix::identity(n);
  while (kernel.back() < n) {
    p = p * a;
    kernel.push_back(null_space(p).size());
  }
  std::vector<int> sizes;
  for (std::size_t k = 1; k < kernel.size(); ++k) {
    const std::size_t ge_k = kernel[k] - kernel[k - 1];
    const std::size_t ge_k1 = k + 1 < kernel.size() ? kernel[k + 1] - kernel[k] : 0;
    for (std::size_t i = 0; i < ge_k - ge_k1; ++i) sizes.push_back(static_cast<int>(k));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

bool same_span(const std::vector<RationalVector>& a, const std::vector<RationalVector>& b, std::size_t n) {
  std::vector<RationalVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = rank(from_columns(a, n));
  return r == rank(from_columns(b, n)) && r == rank(from_columns(both, n));
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

TEST_CASE("Jacobson-Morozov on the documented examples") {
  auto sl2 = build_sl(2);
  auto t2 = jacobson_morozov(sl2, basis_element(sl2, 0));
  CHECK(t2.x.matrix() == mat({{1, 0}, {0, -1}}));
  CHECK(t2.v.matrix() == mat({{0, 0}, {1, 0}}));

  auto sl3 = build_sl(3);
  auto t3 = jacobson_morozov(sl3, sl_elem(sl3, 3, {{1, 2}}));
  CHECK(satisfies_sl2_relations(t3));
  CHECK(t3.x.matrix() == mat({{1, 0, 0}, {0, -1, 0}, {0, 0, 0}}));
  CHECK(t3.v.matrix() == mat({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}));

  auto reg = jacobson_morozov(sl3, sl_elem(sl3, 3, {{1, 2}, {2, 3}}));
  CHECK(satisfies_sl2_relations(reg));
  CHECK(reg.x.matrix() == mat({{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}));
  CHECK(reg.v.matrix() == mat({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}));
}

TEST_CASE("Jacobson-Morozov errors") {
  auto sl2 = build_sl(2);
  CHECK(kind_of([&] { jacobson_morozov(sl2, make_element(sl2, RationalVector(3))); }) == ErrorKind::ZeroElement);
  CHECK(kind_of([&] { jacobson_morozov(sl2, basis_element(sl2, 2)); }) == ErrorKind::NotNilpotent);
  CHECK(kind_of([&] { chain_basis(sl2, basis_element(sl2, 2)); }) == ErrorKind::NotNilpotent);
}

TEST_CASE("chain bases") {
  auto sl2 = build_sl(2);
  auto cb2 = chain_basis(sl2, basis_element(sl2, 0));
  CHECK(cb2.depths() == std::vector<int>{2});
  CHECK(growth_rate(cb2) == 3);
  REQUIRE(cb2.sl2_chain.has_value());
  CHECK(cb2.chains[0].vectors[0].matrix() == mat({{0, 0}, {1, 0}}));
  CHECK(cb2.chains[0].vectors[1].matrix() == mat({{1, 0}, {0, -1}}));
  CHECK(cb2.chains[0].vectors[2].matrix() == mat({{0, -2}, {0, 0}}));

  auto sl3 = build_sl(3);
  auto cb = chain_basis(sl3, sl_elem(sl3, 3, {{1, 2}}));
  CHECK(cb.depths() == std::vector<int>{2, 1, 1, 0});
  CHECK(growth_rate(cb) == 5);
  CHECK(cb.sl2_chain == std::size_t{0});
  // the two depth-1 chains span {E23, E13} and {E31, E32}
  auto coords = [&](int i, int j) { return sl_elem(sl3, 3, {{i, j}}).coeffs; };
  std::vector<RationalVector> first{cb.chains[1].vectors[0].coeffs, cb.chains[1].vectors[1].coeffs};
  std::vector<RationalVector> second{cb.chains[2].vectors[0].coeffs, cb.chains[2].vectors[1].coeffs};
  CHECK(same_span(first, {coords(2, 3), coords(1, 3)}, 8));
  CHECK(same_span(second, {coords(3, 1), coords(3, 2)}, 8));
  CHECK(cb.chains[1].vectors[0].coeffs == coords(2, 3));
  CHECK(cb.chains[1].vectors[1].coeffs == coords(1, 3));
  // E31 -> [E12, E31] = -E32
  CHECK(cb.chains[2].vectors[0].coeffs == coords(3, 1));
  CHECK(cb.chains[2].level(0) == Scalar(-1) * sl_elem(sl3, 3, {{3, 2}}));

  auto reg = chain_basis(sl3, sl_elem(sl3, 3, {{1, 2}, {2, 3}}));
  CHECK(reg.depths() == std::vector<int>{4, 2});
  CHECK(growth_rate(reg) == 13);
  CHECK(block_oracle(ad_matrix(reg.u)) == std::vector<int>{5, 3});
}

TEST_CASE("su(2,1) chain structure") {
  auto g = build_su21();
  auto u = basis_element(g, kSu21UnipotentIndex);
  auto cb = chain_basis(g, u);
  CHECK(cb.depths() == std::vector<int>{2, 1, 1, 0});
  CHECK(growth_rate(cb) == 5);
  auto r = classify(g, u);
  CHECK(r.gr == 5);
  CHECK_FALSE(r.standard);
}

TEST_CASE("Jordan chains match the rank oracle") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 5; ++d) {
    auto g = build_sl(d);
    for (const auto& part : partitions(d)) {
      if (part.front() == 1) continue;
      auto u = sl_partition_nilpotent(g, d, part);
      const RationalMatrix a = ad_matrix(u);
      const auto sizes = jordan_block_sizes(a);
      CHECK(sizes == block_oracle(a));
      auto chains = jordan_chains(a);
      std::vector<RationalVector> all;
      std::vector<int> lens;
      for (const auto& c : chains) {
        lens.push_back(static_cast<int>(c.size()));
        for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(a * c[i] == c[i + 1]);
        CHECK(is_zero(a * c.back()));
        all.insert(all.end(), c.begin(), c.end());
      }
      CHECK(lens == sizes);
      CHECK(rank(from_columns(all, g->dim())) == g->dim());
    }
  }
}

TEST_CASE("representation relations") {
  auto sl2 = build_sl(2);
  auto t = jacobson_morozov(sl2, basis_element(sl2, 0));
  auto rep = verify_rep_relations(chain_basis(sl2, t.u, t), t);
  CHECK(rep.weights[0] == std::vector<long long>{2, 0, -2});

  auto sl3 = build_sl(3);
  auto t3 = jacobson_morozov(sl3, sl_elem(sl3, 3, {{1, 2}}));
  auto cb = chain_basis(sl3, t3.u, t3);
  auto rep3 = verify_rep_relations(cb, t3);
  CHECK(rep3.weights[1] == std::vector<long long>{1, -1});
  CHECK(rep3.weights[3] == std::vector<long long>{0});
  CHECK(rep3.lowering[3].empty());
  CHECK(bracket(t3.v, cb.chains[3].vectors[0]).is_zero());
  CHECK(bracket(t3.u, cb.chains[3].vectors[0]).is_zero());
}

TEST_CASE("classification") {
  auto g = direct_sum(build_sl(2), build_sl(3));
  auto r = classify(g, basis_element(g, 0));
  CHECK(r.gr == 3);
  CHECK(r.standard);
  CHECK(r.centralizer_criterion_consistent);

  auto sl3 = build_sl(3);
  auto r3 = classify(sl3, sl_elem(sl3, 3, {{1, 2}}));
  CHECK(r3.gr == 5);
  CHECK_FALSE(r3.standard);
  CHECK(r3.invariant_lower == 1);
  CHECK(r3.invariant_upper == 2);
  CHECK(r3.invariant_cocompact == 2);

  for (int k = 1; k <= 4; ++k) {
    auto gk = power(build_sl(2), k);
    RationalVector c(gk->dim());
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(3 * i)] = 1;
    auto rk = classify(gk, make_element(gk, c));
    CHECK(rk.gr == 3 * k);
    CHECK(rk.invariant_cocompact == 3 * k - 3);
    CHECK(rk.invariant_lower == 3 * k - 4);
    CHECK(rk.centralizer_criterion_consistent);
  }
}

TEST_CASE("single-block closed form and gap") {
  for (int d = 2; d <= 6; ++d) {
    auto g = build_sl(d);
    for (int l = 2; l <= d; ++l) {
      std::vector<int> part{l};
      for (int i = l; i < d; ++i) part.push_back(1);
      auto u = sl_partition_nilpotent(g, d, part);
      CHECK(sl_d_single_block_gr(d, l) == growth_rate(chain_basis(g, u)));
      if (l < d) CHECK(sl_d_single_block_gr(d, l + 1) - sl_d_single_block_gr(d, l) == l * (2 * d - l));
    }
  }
  CHECK(sl_d_single_block_gr(3, 2) == 5);
  CHECK(sl_d_single_block_gr(3, 3) == 13);
  CHECK_THROWS_AS(sl_d_single_block_gr(3, 4), Error);
  CHECK_THROWS_AS(sl_d_single_block_gr(3, 1), Error);

  std::set<long long> seen;
  for (int d = 2; d <= 5; ++d) {
    auto g = build_sl(d);
    for (const auto& part : partitions(d)) {
      if (part.front() == 1) continue;
      auto r = classify(g, sl_partition_nilpotent(g, d, part));
      CHECK(r.gap_witness);
      CHECK(r.gr != 4);
      CHECK(r.centralizer_criterion_consistent);
      seen.insert(r.gr);
    }
  }
  CHECK(seen.count(3) == 1);
}

TEST_CASE("partitions") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(5).size() == 7);
  CHECK(partitions(3).front() == std::vector<int>{3});
}

TEST_CASE("Kakutani table") {
  auto sl4 = build_sl(4);
  std::vector<AlgebraElement> us{sl_partition_nilpotent(sl4, 4, {2, 1, 1}), sl_partition_nilpotent(sl4, 4, {3, 1}),
                                 sl_partition_nilpotent(sl4, 4, {4})};
  auto table = kakutani_table(sl4, us);
  REQUIRE(table.size() == 3);
  CHECK(table[0].gr == 7);
  CHECK(table[1].gr == 19);
  CHECK(table[2].gr == 34);
  for (const auto& c : table) CHECK(c.status == "singleton");

  auto sl2 = build_sl(2);
  auto t2 = kakutani_table(sl2, {basis_element(sl2, 0), basis_element(sl2, 1)});
  REQUIRE(t2.size() == 1);
  CHECK(t2[0].gr == 3);
  CHECK(t2[0].status == "undetermined");

  auto sl3 = build_sl(3);
  auto t3 = kakutani_table(sl3, {sl_elem(sl3, 3, {{1, 2}}), sl_elem(sl3, 3, {{1, 3}})});
  REQUIRE(t3.size() == 1);
  CHECK(t3[0].gr == 5);
}
