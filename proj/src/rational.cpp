#include "uniflow/rational.hpp"

#include <algorithm>
#include <utility>

#include "uniflow/error.hpp"

namespace uniflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::NotSemisimple: return "NotSemisimple";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::EigenAlignmentFailed: return "EigenAlignmentFailed";
    case ErrorKind::NonzeroSl2Part: return "NonzeroSl2Part";
    case ErrorKind::OutOfChartDomain: return "OutOfChartDomain";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::SampleBudgetExceeded: return "SampleBudgetExceeded";
    case ErrorKind::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorKind::NotInChart: return "NotInChart";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::WrapDetected: return "WrapDetected";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

Scalar parse_scalar(const std::string& text) {
  std::string trimmed;
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '+') trimmed.push_back(c);
  }
  if (trimmed.empty()) fail(ErrorKind::ConfigParse, "empty rational literal");
  Scalar value;
  if (value.set_str(trimmed, 10) != 0) fail(ErrorKind::ConfigParse, "bad rational literal '" + text + "'");
  if (value.get_den() == 0) fail(ErrorKind::ConfigParse, "zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::string to_string(const Scalar& x) { return x.get_str(); }

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  RationalMatrix m(n, n);
  m(i, j) = 1;
  return m;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

Scalar RationalMatrix::trace() const {
  Scalar t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) fail(ErrorKind::InvalidDimension, "matrix-vector size mismatch");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) acc += a * v[c];
    }
    out[r] = acc;
  }
  return out;
}

// Basis matrices and ad operators are mostly zeros; skipping them is the
// difference between milliseconds and seconds for sl(6).
RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorKind::InvalidDimension, "matrix product size mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Scalar& b = other(k, j);
        if (sgn(b) != 0) out(i, j) += a * b;
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  RationalMatrix out = *this;
  out += other;
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  RationalMatrix out = *this;
  out -= other;
  return out;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::InvalidDimension, "matrix sum size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorKind::InvalidDimension, "matrix difference size mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

RationalMatrix RationalMatrix::operator*(const Scalar& k) const {
  RationalMatrix out = *this;
  for (auto& x : out.data_) x *= k;
  return out;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

RationalMatrix vstack(const std::vector<RationalMatrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0;
  const std::size_t cols = blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) fail(ErrorKind::InvalidDimension, "vstack column mismatch");
    rows += b.rows();
  }
  RationalMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(offset + r, c) = b(r, c);
    offset += b.rows();
  }
  return out;
}

RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t length) {
  RationalMatrix out(length, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != length) fail(ErrorKind::InvalidDimension, "column length mismatch");
    for (std::size_t r = 0; r < length; ++r) out(r, c) = columns[c][r];
  }
  return out;
}

RowEchelon rref(RationalMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Scalar inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (sgn(m(row, c)) != 0) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Scalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivots.size(); }

std::vector<RationalVector> null_space(const RationalMatrix& m) {
  const RowEchelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& rhs) {
  if (rhs.size() != m.rows()) fail(ErrorKind::InvalidDimension, "rhs size mismatch");
  RationalMatrix augmented(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) augmented(r, c) = m(r, c);
    augmented(r, m.cols()) = rhs[r];
  }
  const RowEchelon e = rref(std::move(augmented));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidDimension, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = 1;
  }
  const RowEchelon e = rref(std::move(augmented));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

std::vector<std::size_t> independent_subset(const std::vector<RationalVector>& vectors) {
  std::vector<std::size_t> chosen;
  if (vectors.empty()) return chosen;
  const std::size_t len = vectors.front().size();
  std::vector<RationalVector> kept;
  std::size_t current_rank = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    kept.push_back(vectors[i]);
    const std::size_t r = rank(from_columns(kept, len));
    if (r > current_rank) {
      current_rank = r;
      chosen.push_back(i);
    } else {
      kept.pop_back();
    }
  }
  return chosen;
}

}  // namespace uniflow
