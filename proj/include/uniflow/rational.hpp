#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace uniflow {

/// Exact scalar. GMP keeps mpq values canonical (positive denominator, reduced)
/// after every arithmetic operation.
using Scalar = mpq_class;
using RationalVector = std::vector<Scalar>;

Scalar parse_scalar(const std::string& text);
std::string to_string(const Scalar& x);

bool is_zero(const RationalVector& v);

/// Dense row-major matrix over the rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);
  /// Elementary matrix with a single 1 at (i, j).
  static RationalMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Scalar>& entries() const noexcept { return data_; }

  bool is_zero() const;
  Scalar trace() const;
  RationalMatrix transpose() const;

  RationalVector operator*(const RationalVector& v) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator-=(const RationalMatrix& other);
  RationalMatrix operator*(const Scalar& k) const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline RationalMatrix operator*(const Scalar& k, const RationalMatrix& m) { return m * k; }

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Stacks matrices with equal column counts on top of each other.
RationalMatrix vstack(const std::vector<RationalMatrix>& blocks);

/// Matrix whose columns are the given vectors.
RationalMatrix from_columns(const std::vector<RationalVector>& columns, std::size_t length);

struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form; pivots are chosen left to right, top to bottom,
/// so the output is a deterministic function of the input.
RowEchelon rref(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Canonical null-space basis: one vector per free column, with that free
/// variable set to 1 and the other free variables set to 0.
std::vector<RationalVector> null_space(const RationalMatrix& m);

/// A particular solution of m x = rhs with all free variables zero, or nullopt
/// when the system is inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& m, const RationalVector& rhs);

std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset, scanning in order.
std::vector<std::size_t> independent_subset(const std::vector<RationalVector>& vectors);

}  // namespace uniflow
