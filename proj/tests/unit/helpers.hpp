#pragma once

#include <initializer_list>
#include <random>

#include "uniflow/lie_algebra.hpp"

namespace testing_helpers {

inline uniflow::RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const std::size_t n = rows.size();
  uniflow::RationalMatrix m(n, rows.begin()->size());
  std::size_t r = 0;
  for (auto row : rows) {
    std::size_t c = 0;
    for (long x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

inline uniflow::AlgebraElement sl_elem(const uniflow::AlgebraPtr& g, int d,
                                       std::initializer_list<std::pair<int, int>> units) {
  uniflow::RationalVector c(g->dim());
  for (auto [i, j] : units) c[uniflow::sl_offdiag_index(d, i - 1, j - 1)] += 1;
  return uniflow::make_element(g, c);
}

inline uniflow::AlgebraElement random_element(const uniflow::AlgebraPtr& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  uniflow::RationalVector c(g->dim());
  for (auto& x : c) {
    x = uniflow::Scalar(num(rng), den(rng));
    x.canonicalize();
  }
  return uniflow::make_element(g, c);
}

}  // namespace testing_helpers
