#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "uniflow/lie_algebra.hpp"

namespace uniflow {

/// V, X, U with [X,U] = 2U, [X,V] = -2V, [U,V] = X.
struct Sl2Triple {
  AlgebraElement v;
  AlgebraElement x;
  AlgebraElement u;
};

/// One Jordan chain of ad_U, stored top first: vectors[0] = X_m, ...,
/// vectors[m] = X_0, with ad_U(X_i) = X_{i-1} and ad_U(X_0) = 0.
struct Chain {
  std::vector<AlgebraElement> vectors;

  int depth() const { return static_cast<int>(vectors.size()) - 1; }
  /// X_i in the usual indexing (i = 0 is the bottom of the chain).
  const AlgebraElement& level(int i) const { return vectors[vectors.size() - 1 - static_cast<std::size_t>(i)]; }
};

struct ChainBasis {
  AlgebraElement u;
  std::vector<Chain> chains;  // depths non-increasing
  /// Position of the chain V -> X -> -2U when the basis came from a triple.
  std::optional<std::size_t> sl2_chain;

  std::vector<int> depths() const;
  std::size_t size() const;
};

/// Sizes of the Jordan blocks of a nilpotent operator, from the rank
/// sequence of its powers. Sorted non-increasing. Throws NotNilpotent.
std::vector<int> jordan_block_sizes(const RationalMatrix& op);

/// Jordan chains of a nilpotent operator in coordinates, built from the
/// kernels of op^k with deterministic pivoting. Each chain is top first.
std::vector<std::vector<RationalVector>> jordan_chains(const RationalMatrix& op);

bool is_nilpotent(const AlgebraElement& u);

/// Exact Jacobson-Morozov completion: H in im(ad_U) with [H,U] = 2U, then V
/// with [U,V] = H and [H,V] = -2V. Throws NotNilpotent or ZeroElement.
Sl2Triple jacobson_morozov(const AlgebraPtr& g, const AlgebraElement& u);

bool satisfies_sl2_relations(const Sl2Triple& t);

/// Chain basis of ad_U adapted to the triple: every chain vector X_i is an
/// ad_X eigenvector of weight m - 2i. Chain tops are lowest-weight vectors
/// (ker ad_V intersected with the ad_X eigenspace of weight -m); V is the top
/// of the first depth-2 chain. Throws NotNilpotent, ZeroElement or
/// EigenAlignmentFailed.
ChainBasis chain_basis(const AlgebraPtr& g, const AlgebraElement& u);
ChainBasis chain_basis(const AlgebraPtr& g, const AlgebraElement& u, const Sl2Triple& triple);

/// Exact re-check of ad_U chain relations and of the basis property.
bool verify_chain_basis(const ChainBasis& cb);

/// GR(U) = 1/2 sum m_i (m_i + 1).
long long growth_rate(const std::vector<int>& depths);
long long growth_rate(const ChainBasis& cb);

struct RepRelationsReport {
  /// weights[j][i] = ad_X eigenvalue of X_i in chain j (expected m_j - 2i).
  std::vector<std::vector<long long>> weights;
  /// lowering[j][i] = c with ad_V X_i = c X_{i+1}; nonzero for i < m_j.
  std::vector<std::vector<Scalar>> lowering;
};

/// Checks the sl(2) representation relations on every chain vector.
/// Throws EigenAlignmentFailed if any check fails.
RepRelationsReport verify_rep_relations(const ChainBasis& cb, const Sl2Triple& triple);

struct GrowthReport {
  std::string algebra;
  std::vector<int> depths;
  long long gr = 0;
  long long invariant_cocompact = 0;
  long long invariant_lower = 0;
  long long invariant_upper = 0;
  bool standard = false;
  bool gap_witness = false;
  /// dim g - dim C(X).
  long long noncentralizing_dim = 0;
  /// (GR == 3) == (dim g - dim C(X) <= 3).
  bool centralizer_criterion_consistent = false;
};

GrowthReport classify(const AlgebraPtr& g, const AlgebraElement& u);

/// Closed form for a single Jordan block of size l in sl(d):
/// l(4l+1)(l-1)/6 + l(d-l)(l-1). Requires 2 <= l <= d.
long long sl_d_single_block_gr(int d, int l);

/// Nilpotent in sl(d) that is a sum of elementary Jordan blocks of the given
/// sizes along the diagonal (E_{k,k+1} inside each block).
AlgebraElement sl_partition_nilpotent(const AlgebraPtr& sl_d, int d, const std::vector<int>& partition);

/// All partitions of n, each non-increasing, in reverse lexicographic order.
std::vector<std::vector<int>> partitions(int n);

struct KakutaniClass {
  long long gr = 0;
  std::vector<std::size_t> members;
  /// "singleton" or "undetermined" (equal GR decides nothing).
  std::string status;
};

/// Groups elements by GR. Different classes are pairwise non-equivalent;
/// members of one class are reported undetermined, never equivalent.
std::vector<KakutaniClass> kakutani_table(const AlgebraPtr& g, const std::vector<AlgebraElement>& elements);

}  // namespace uniflow
