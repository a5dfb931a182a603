#include "uniflow/lie_algebra.hpp"

#include <utility>

#include "uniflow/error.hpp"

namespace uniflow {

LieAlgebra::LieAlgebra(std::string label, std::size_t ambient_dim, std::vector<RationalMatrix> basis)
    : label_(std::move(label)), ambient_dim_(ambient_dim), basis_(std::move(basis)) {
  if (basis_.empty()) fail(ErrorKind::InvalidDimension, "empty basis for " + label_);
  const std::size_t n2 = ambient_dim_ * ambient_dim_;
  for (const auto& b : basis_)
    if (b.rows() != ambient_dim_ || b.cols() != ambient_dim_)
      fail(ErrorKind::InvalidDimension, "basis matrix has the wrong shape in " + label_);

  RationalMatrix rows(dim(), n2);
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t e = 0; e < n2; ++e) rows(a, e) = basis_[a].entries()[e];
  const RowEchelon echelon = rref(rows);
  if (echelon.pivots.size() < dim()) fail(ErrorKind::InvalidArgument, "basis of " + label_ + " is linearly dependent");
  pivot_entries_ = echelon.pivots;
  RationalMatrix restricted(dim(), dim());
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = 0; c < dim(); ++c) restricted(r, c) = basis_[c].entries()[pivot_entries_[r]];
  pivot_inverse_ = *inverse(restricted);

  structure_.assign(dim() * dim() * dim(), Scalar(0));
  for (std::size_t a = 0; a < dim(); ++a) {
    for (std::size_t b = a + 1; b < dim(); ++b) {
      RationalVector c;
      try {
        c = coordinates(commutator(basis_[a], basis_[b]));
      } catch (const Error&) {
        fail(ErrorKind::InvalidArgument, "basis of " + label_ + " is not closed under the bracket");
      }
      for (std::size_t k = 0; k < dim(); ++k) {
        structure_[(a * dim() + b) * dim() + k] = c[k];
        structure_[(b * dim() + a) * dim() + k] = -c[k];
      }
    }
  }

  if (rank(killing_form()) < dim()) fail(ErrorKind::NotSemisimple, "Killing form of " + label_ + " is degenerate");
}

RationalVector LieAlgebra::coordinates(const RationalMatrix& m) const {
  if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_)
    fail(ErrorKind::InvalidDimension, "matrix shape does not match " + label_);
  RationalVector restricted(dim());
  for (std::size_t r = 0; r < dim(); ++r) restricted[r] = m.entries()[pivot_entries_[r]];
  RationalVector coeffs = pivot_inverse_ * restricted;
  if (matrix_of(coeffs) != m) fail(ErrorKind::NotInSpan, "matrix is not in the span of " + label_);
  return coeffs;
}

RationalMatrix LieAlgebra::matrix_of(const RationalVector& coeffs) const {
  if (coeffs.size() != dim()) fail(ErrorKind::InvalidDimension, "coefficient vector length mismatch for " + label_);
  RationalMatrix m(ambient_dim_, ambient_dim_);
  for (std::size_t a = 0; a < dim(); ++a) {
    if (sgn(coeffs[a]) == 0) continue;
    const auto& entries = basis_[a].entries();
    for (std::size_t r = 0; r < ambient_dim_; ++r)
      for (std::size_t c = 0; c < ambient_dim_; ++c) {
        const Scalar& e = entries[r * ambient_dim_ + c];
        if (sgn(e) != 0) m(r, c) += coeffs[a] * e;
      }
  }
  return m;
}

RationalVector LieAlgebra::bracket_from_constants(const RationalVector& x, const RationalVector& y) const {
  if (x.size() != dim() || y.size() != dim()) fail(ErrorKind::InvalidDimension, "bracket operand length mismatch");
  RationalVector out(dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (sgn(y[b]) == 0 || a == b) continue;
      const Scalar xy = x[a] * y[b];
      for (std::size_t k = 0; k < dim(); ++k) {
        const Scalar& c = structure_constant(a, b, k);
        if (sgn(c) != 0) out[k] += xy * c;
      }
    }
  }
  return out;
}

RationalVector LieAlgebra::bracket(const RationalVector& x, const RationalVector& y) const {
  RationalVector out = coordinates(commutator(matrix_of(x), matrix_of(y)));
  if (out != bracket_from_constants(x, y))
    fail(ErrorKind::NotInSpan, "bracket disagrees with cached structure constants of " + label_);
  return out;
}

RationalMatrix LieAlgebra::ad_matrix(const RationalVector& x) const {
  if (x.size() != dim()) fail(ErrorKind::InvalidDimension, "ad operand length mismatch");
  RationalMatrix ad(dim(), dim());
  for (std::size_t a = 0; a < dim(); ++a) {
    if (sgn(x[a]) == 0) continue;
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t k = 0; k < dim(); ++k) {
        const Scalar& c = structure_constant(a, b, k);
        if (sgn(c) != 0) ad(k, b) += x[a] * c;
      }
  }
  return ad;
}

RationalMatrix LieAlgebra::killing_form() const {
  const std::size_t n = dim();
  RationalMatrix k(n, n);
  // K(a,b) = tr(ad B_a ad B_b) = sum_{c,d} c(a,c,d) c(b,d,c)
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Scalar acc = 0;
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const Scalar& x = structure_constant(a, c, d);
          if (sgn(x) == 0) continue;
          const Scalar& y = structure_constant(b, d, c);
          if (sgn(y) != 0) acc += x * y;
        }
      k(a, b) = acc;
      k(b, a) = acc;
    }
  }
  return k;
}

RationalVector LieAlgebra::basis_vector(std::size_t index) const {
  if (index >= dim()) fail(ErrorKind::OutOfRange, "basis index out of range");
  RationalVector v(dim());
  v[index] = 1;
  return v;
}

AlgebraElement make_element(const AlgebraPtr& g, RationalVector coeffs) {
  if (!g) fail(ErrorKind::InvalidArgument, "null algebra");
  if (coeffs.size() != g->dim()) fail(ErrorKind::InvalidDimension, "element has the wrong number of coefficients");
  return {g, std::move(coeffs)};
}

AlgebraElement element_from_matrix(const AlgebraPtr& g, const RationalMatrix& m) {
  return {g, g->coordinates(m)};
}

AlgebraElement basis_element(const AlgebraPtr& g, std::size_t index) { return {g, g->basis_vector(index)}; }

namespace {
void require_same(const AlgebraElement& x, const AlgebraElement& y) {
  if (!x.algebra || x.algebra != y.algebra) fail(ErrorKind::InvalidArgument, "elements belong to different algebras");
}
}  // namespace

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  return {x.algebra, x.algebra->bracket(x.coeffs, y.coeffs)};
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  RationalVector c = x.coeffs;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs[i];
  return {x.algebra, std::move(c)};
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  require_same(x, y);
  RationalVector c = x.coeffs;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs[i];
  return {x.algebra, std::move(c)};
}

AlgebraElement operator*(const Scalar& k, const AlgebraElement& x) {
  RationalVector c = x.coeffs;
  for (auto& v : c) v *= k;
  return {x.algebra, std::move(c)};
}

RationalMatrix ad_matrix(const AlgebraElement& x) { return x.algebra->ad_matrix(x.coeffs); }

std::vector<AlgebraElement> centralizer(const AlgebraPtr& g, std::span<const AlgebraElement> elements) {
  std::vector<AlgebraElement> out;
  if (elements.empty()) {
    for (std::size_t i = 0; i < g->dim(); ++i) out.push_back(basis_element(g, i));
    return out;
  }
  std::vector<RationalMatrix> blocks;
  for (const auto& e : elements) {
    if (e.algebra != g) fail(ErrorKind::InvalidArgument, "centralizer element from another algebra");
    blocks.push_back(ad_matrix(e));
  }
  for (auto& v : null_space(vstack(blocks))) out.push_back({g, std::move(v)});
  return out;
}

std::size_t sl_offdiag_index(int d, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= d || j >= d) fail(ErrorKind::OutOfRange, "not an off-diagonal position");
  return static_cast<std::size_t>(i * (d - 1) + (j < i ? j : j - 1));
}

AlgebraPtr build_sl(int d) {
  if (d < 2) fail(ErrorKind::InvalidDimension, "sl(d) needs d >= 2, got " + std::to_string(d));
  const auto n = static_cast<std::size_t>(d);
  std::vector<RationalMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) basis.push_back(RationalMatrix::unit(n, i, j));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    RationalMatrix h(n, n);
    h(i, i) = 1;
    h(i + 1, i + 1) = -1;
    basis.push_back(std::move(h));
  }
  return std::make_shared<const LieAlgebra>("sl(" + std::to_string(d) + ")", n, std::move(basis));
}

RationalMatrix realify(const RationalMatrix& re, const RationalMatrix& im) {
  const std::size_t n = re.rows();
  RationalMatrix out(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(2 * r, 2 * c) = re(r, c);
      out(2 * r, 2 * c + 1) = -im(r, c);
      out(2 * r + 1, 2 * c) = im(r, c);
      out(2 * r + 1, 2 * c + 1) = re(r, c);
    }
  return out;
}

AlgebraPtr build_su21() {
  constexpr std::size_t n = 3;
  auto e = [](std::size_t i, std::size_t j) { return RationalMatrix::unit(n, i - 1, j - 1); };
  const RationalMatrix zero(n, n);
  RationalMatrix h(n, n);
  h(0, 0) = 1;
  h(1, 1) = -1;
  RationalMatrix compact(n, n);
  compact(0, 0) = 1;
  compact(1, 1) = 1;
  compact(2, 2) = -2;

  std::vector<RationalMatrix> basis;
  basis.push_back(realify(h, zero));
  basis.push_back(realify(zero, e(1, 2)));
  basis.push_back(realify(zero, e(2, 1)));
  basis.push_back(realify(e(1, 3) - e(3, 2), zero));
  basis.push_back(realify(zero, e(1, 3) + e(3, 2)));
  basis.push_back(realify(e(2, 3) - e(3, 1), zero));
  basis.push_back(realify(zero, e(2, 3) + e(3, 1)));
  basis.push_back(realify(zero, compact));
  return std::make_shared<const LieAlgebra>("su(2,1)", 2 * n, std::move(basis));
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  const std::size_t na = a->ambient_dim();
  const std::size_t nb = b->ambient_dim();
  const std::size_t n = na + nb;
  std::vector<RationalMatrix> basis;
  for (const auto& m : a->basis()) {
    RationalMatrix big(n, n);
    for (std::size_t r = 0; r < na; ++r)
      for (std::size_t c = 0; c < na; ++c) big(r, c) = m(r, c);
    basis.push_back(std::move(big));
  }
  for (const auto& m : b->basis()) {
    RationalMatrix big(n, n);
    for (std::size_t r = 0; r < nb; ++r)
      for (std::size_t c = 0; c < nb; ++c) big(na + r, na + c) = m(r, c);
    basis.push_back(std::move(big));
  }
  return std::make_shared<const LieAlgebra>(a->label() + "+" + b->label(), n, std::move(basis));
}

AlgebraPtr power(const AlgebraPtr& a, int k) {
  if (k < 1) fail(ErrorKind::InvalidDimension, "power needs k >= 1");
  AlgebraPtr out = a;
  for (int i = 1; i < k; ++i) out = direct_sum(out, a);
  return out;
}

}  // namespace uniflow
