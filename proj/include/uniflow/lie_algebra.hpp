#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "uniflow/rational.hpp"

namespace uniflow {

/// A real matrix Lie algebra given by an explicit basis of ambient_dim x
/// ambient_dim rational matrices. Construction validates linear independence,
/// bracket closure and nondegeneracy of the Killing form, then caches the
/// structure constants. Instances are immutable.
class LieAlgebra {
 public:
  LieAlgebra(std::string label, std::size_t ambient_dim, std::vector<RationalMatrix> basis);

  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<RationalMatrix>& basis() const noexcept { return basis_; }

  /// c such that [B_a, B_b] = sum_k c(a, b, k) B_k.
  const Scalar& structure_constant(std::size_t a, std::size_t b, std::size_t k) const {
    return structure_[(a * dim() + b) * dim() + k];
  }

  /// Coordinates of an ambient matrix in the basis; throws NotInSpan.
  RationalVector coordinates(const RationalMatrix& m) const;
  RationalMatrix matrix_of(const RationalVector& coeffs) const;

  /// Commutator of the matrix forms, solved back into coordinates and
  /// cross-checked against the cached structure constants.
  RationalVector bracket(const RationalVector& x, const RationalVector& y) const;
  /// Bracket computed from the structure constants only.
  RationalVector bracket_from_constants(const RationalVector& x, const RationalVector& y) const;

  /// Matrix of ad(x) in basis coordinates: column b holds coords([x, B_b]).
  RationalMatrix ad_matrix(const RationalVector& x) const;
  RationalMatrix killing_form() const;

  RationalVector basis_vector(std::size_t index) const;

 private:
  std::string label_;
  std::size_t ambient_dim_;
  std::vector<RationalMatrix> basis_;
  std::vector<Scalar> structure_;
  // Entries (flattened ambient positions) whose restriction determines the
  // coordinates, and the inverse of the basis restricted to them.
  std::vector<std::size_t> pivot_entries_;
  RationalMatrix pivot_inverse_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

struct AlgebraElement {
  AlgebraPtr algebra;
  RationalVector coeffs;

  RationalMatrix matrix() const { return algebra->matrix_of(coeffs); }
  bool is_zero() const { return uniflow::is_zero(coeffs); }
  bool operator==(const AlgebraElement& other) const {
    return algebra == other.algebra && coeffs == other.coeffs;
  }
};

AlgebraElement make_element(const AlgebraPtr& g, RationalVector coeffs);
AlgebraElement element_from_matrix(const AlgebraPtr& g, const RationalMatrix& m);
AlgebraElement basis_element(const AlgebraPtr& g, std::size_t index);

AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(const Scalar& k, const AlgebraElement& x);
RationalMatrix ad_matrix(const AlgebraElement& x);

/// Basis of the common centralizer: the exact null space of the stacked ad
/// operators. An empty list centralizes everything.
std::vector<AlgebraElement> centralizer(const AlgebraPtr& g, std::span<const AlgebraElement> elements);

/// sl(d, R) with basis {E_ij : i != j} (lexicographic) followed by
/// E_ii - E_{i+1,i+1}.
AlgebraPtr build_sl(int d);

/// su(2,1) realized on C^3 with the Hermitian form [[0,1,0],[1,0,0],[0,0,1]];
/// complex entries are realified as 2x2 blocks [[a,-b],[b,a]], so the ambient
/// matrices are 6x6. Basis order:
///   0 diag(1,-1,0)         1 iE12               2 iE21
///   3 E13 - E32            4 i(E13 + E32)       5 E23 - E31
///   6 i(E23 + E31)         7 diag(i,i,-2i)
AlgebraPtr build_su21();

/// Index of iE12 in build_su21()'s basis.
inline constexpr std::size_t kSu21UnipotentIndex = 1;

/// Block-diagonal embedding; A's basis first.
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

/// Direct sum of k copies.
AlgebraPtr power(const AlgebraPtr& a, int k);

/// Realification of a complex matrix given as (real part, imaginary part).
RationalMatrix realify(const RationalMatrix& re, const RationalMatrix& im);

/// Index of E_ij (i != j, zero-based) in build_sl(d)'s basis.
std::size_t sl_offdiag_index(int d, int i, int j);

}  // namespace uniflow
