#include "uniflow/chain_structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "uniflow/error.hpp"

namespace uniflow {

std::vector<int> ChainBasis::depths() const {
  std::vector<int> d;
  for (const auto& c : chains) d.push_back(c.depth());
  return d;
}

std::size_t ChainBasis::size() const {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.vectors.size();
  return n;
}

std::vector<int> jordan_block_sizes(const RationalMatrix& op) {
  const std::size_t n = op.rows();
  std::vector<std::size_t> ranks{n};
  RationalMatrix power = RationalMatrix::identity(n);
  while (ranks.back() > 0) {
    if (ranks.size() > n) fail(ErrorKind::NotNilpotent, "operator is not nilpotent");
    power = power * op;
    const std::size_t r = rank(power);
    if (r == ranks.back()) fail(ErrorKind::NotNilpotent, "operator is not nilpotent");
    ranks.push_back(r);
  }
  // blocks of size >= k: ranks[k-1] - ranks[k]
  std::vector<int> sizes;
  for (std::size_t k = ranks.size() - 1; k >= 1; --k) {
    const std::size_t at_least_k = ranks[k - 1] - ranks[k];
    const std::size_t at_least_k1 = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = 0; c < at_least_k - at_least_k1; ++c) sizes.push_back(static_cast<int>(k));
  }
  return sizes;
}

std::vector<std::vector<RationalVector>> jordan_chains(const RationalMatrix& op) {
  const std::size_t n = op.rows();
  const std::vector<int> sizes = jordan_block_sizes(op);
  const int longest = sizes.empty() ? 0 : sizes.front();

  std::vector<RationalMatrix> powers{RationalMatrix::identity(n)};
  for (int k = 1; k <= longest; ++k) powers.push_back(powers.back() * op);

  std::vector<std::vector<RationalVector>> chains;
  for (int k = longest; k >= 1; --k) {
    std::vector<RationalVector> span = null_space(powers[static_cast<std::size_t>(k - 1)]);
    for (const auto& chain : chains)
      if (static_cast<int>(chain.size()) > k) span.push_back(chain[chain.size() - static_cast<std::size_t>(k)]);
    std::size_t current = span.empty() ? 0 : rank(from_columns(span, n));
    for (const auto& candidate : null_space(powers[static_cast<std::size_t>(k)])) {
      span.push_back(candidate);
      const std::size_t r = rank(from_columns(span, n));
      if (r == current) {
        span.pop_back();
        continue;
      }
      current = r;
      std::vector<RationalVector> chain{candidate};
      for (int i = 1; i < k; ++i) chain.push_back(op * chain.back());
      chains.push_back(std::move(chain));
    }
  }
  return chains;
}

bool is_nilpotent(const AlgebraElement& u) {
  const RationalMatrix ad = ad_matrix(u);
  RationalMatrix power = ad;
  for (std::size_t k = 1; k <= u.algebra->dim(); ++k) {
    if (power.is_zero()) return true;
    power = power * ad;
  }
  return power.is_zero();
}

namespace {

void require_nilpotent(const AlgebraPtr& g, const AlgebraElement& u) {
  if (u.algebra != g) fail(ErrorKind::InvalidArgument, "element does not belong to " + g->label());
  if (u.is_zero()) fail(ErrorKind::ZeroElement, "U is zero");
  if (!is_nilpotent(u)) fail(ErrorKind::NotNilpotent, "ad_U is not nilpotent");
}

RationalMatrix shifted(const RationalMatrix& m, long long k) {
  RationalMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) += static_cast<long>(k);
  return out;
}

}  // namespace

Sl2Triple jacobson_morozov(const AlgebraPtr& g, const AlgebraElement& u) {
  require_nilpotent(g, u);
  const std::size_t n = g->dim();
  const RationalMatrix ad_u = ad_matrix(u);

  // [U,[U,Z]] = -2U gives H = [U,Z] in im(ad_U) with [H,U] = 2U.
  RationalVector rhs = u.coeffs;
  for (auto& x : rhs) x *= -2;
  const auto z = solve(ad_u * ad_u, rhs);
  if (!z) fail(ErrorKind::EigenAlignmentFailed, "no neutral element in im(ad_U); algebra is not semisimple");
  const AlgebraElement h{g, ad_u * *z};

  // [U,V] = H and [H,V] + 2V = 0, solved together.
  const RationalMatrix system = vstack({ad_u, shifted(ad_matrix(h), 2)});
  RationalVector target(2 * n);
  std::copy(h.coeffs.begin(), h.coeffs.end(), target.begin());
  const auto v = solve(system, target);
  if (!v) fail(ErrorKind::EigenAlignmentFailed, "no nilnegative element completes the triple");
  return {AlgebraElement{g, *v}, h, u};
}

bool satisfies_sl2_relations(const Sl2Triple& t) {
  return bracket(t.x, t.u) == Scalar(2) * t.u && bracket(t.x, t.v) == Scalar(-2) * t.v && bracket(t.u, t.v) == t.x;
}

ChainBasis chain_basis(const AlgebraPtr& g, const AlgebraElement& u) {
  return chain_basis(g, u, jacobson_morozov(g, u));
}

ChainBasis chain_basis(const AlgebraPtr& g, const AlgebraElement& u, const Sl2Triple& triple) {
  require_nilpotent(g, u);
  if (!(triple.u == u) || !satisfies_sl2_relations(triple))
    fail(ErrorKind::EigenAlignmentFailed, "triple does not complete U");
  const std::size_t n = g->dim();
  const RationalMatrix ad_u = ad_matrix(u);
  const RationalMatrix ad_v = ad_matrix(triple.v);
  const RationalMatrix ad_x = ad_matrix(triple.x);

  std::vector<std::pair<int, Chain>> found;  // (construction order key, chain)
  std::size_t covered = 0;
  std::optional<std::size_t> sl2_pos;
  for (long long m = 0; covered < n && m < static_cast<long long>(n); ++m) {
    std::vector<RationalVector> tops = null_space(vstack({ad_v, shifted(ad_x, m)}));
    if (tops.empty()) continue;
    if (m == 2) {
      tops.insert(tops.begin(), triple.v.coeffs);
      std::vector<RationalVector> kept;
      for (auto i : independent_subset(tops)) kept.push_back(tops[i]);
      tops = std::move(kept);
    }
    for (auto& top : tops) {
      Chain chain;
      chain.vectors.push_back({g, top});
      for (long long i = 0; i < m; ++i) chain.vectors.push_back({g, ad_u * chain.vectors.back().coeffs});
      if (!is_zero(ad_u * chain.vectors.back().coeffs))
        fail(ErrorKind::EigenAlignmentFailed, "lowest-weight vector does not generate a chain of the expected depth");
      if (m == 2 && top == triple.v.coeffs) sl2_pos = found.size();
      covered += chain.vectors.size();
      found.emplace_back(static_cast<int>(found.size()), std::move(chain));
    }
  }
  if (covered != n) fail(ErrorKind::EigenAlignmentFailed, "weight chains do not span the algebra");

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.second.depth() > b.second.depth(); });
  ChainBasis cb{u, {}, std::nullopt};
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (sl2_pos && static_cast<std::size_t>(found[i].first) == *sl2_pos) cb.sl2_chain = i;
    cb.chains.push_back(std::move(found[i].second));
  }

  std::vector<int> expected = jordan_block_sizes(ad_u);
  std::vector<int> got;
  for (int d : cb.depths()) got.push_back(d + 1);
  if (got != expected) fail(ErrorKind::EigenAlignmentFailed, "chain depths disagree with the Jordan form of ad_U");
  if (!verify_chain_basis(cb)) fail(ErrorKind::EigenAlignmentFailed, "chain vectors are not a basis");
  return cb;
}

bool verify_chain_basis(const ChainBasis& cb) {
  const AlgebraPtr& g = cb.u.algebra;
  const RationalMatrix ad_u = ad_matrix(cb.u);
  std::vector<RationalVector> all;
  for (const auto& chain : cb.chains) {
    for (int i = chain.depth(); i >= 1; --i)
      if (ad_u * chain.level(i).coeffs != chain.level(i - 1).coeffs) return false;
    if (!is_zero(ad_u * chain.level(0).coeffs)) return false;
    for (const auto& v : chain.vectors) all.push_back(v.coeffs);
  }
  return all.size() == g->dim() && rank(from_columns(all, g->dim())) == g->dim();
}

long long growth_rate(const std::vector<int>& depths) {
  long long twice = 0;
  for (int m : depths) twice += static_cast<long long>(m) * (m + 1);
  return twice / 2;
}

long long growth_rate(const ChainBasis& cb) { return growth_rate(cb.depths()); }

RepRelationsReport verify_rep_relations(const ChainBasis& cb, const Sl2Triple& triple) {
  const RationalMatrix ad_u = ad_matrix(triple.u);
  const RationalMatrix ad_v = ad_matrix(triple.v);
  const RationalMatrix ad_x = ad_matrix(triple.x);
  RepRelationsReport report;
  for (const auto& chain : cb.chains) {
    const int m = chain.depth();
    std::vector<long long> weights;
    std::vector<Scalar> lowering;
    for (int i = 0; i <= m; ++i) {
      const RationalVector& xi = chain.level(i).coeffs;
      const long long w = m - 2 * i;
      RationalVector expected = xi;
      for (auto& c : expected) c *= static_cast<long>(w);
      if (ad_x * xi != expected)
        fail(ErrorKind::EigenAlignmentFailed, "chain vector is not an ad_X eigenvector of weight m - 2i");
      weights.push_back(w);

      if (i >= 1 && ad_u * xi != chain.level(i - 1).coeffs)
        fail(ErrorKind::EigenAlignmentFailed, "ad_U does not step down the chain");
      if (i == 0 && !is_zero(ad_u * xi)) fail(ErrorKind::EigenAlignmentFailed, "chain bottom is not killed by ad_U");

      const RationalVector image = ad_v * xi;
      if (i == m) {
        if (!is_zero(image)) fail(ErrorKind::EigenAlignmentFailed, "chain top is not killed by ad_V");
        continue;
      }
      const RationalVector& next = chain.level(i + 1).coeffs;
      std::size_t k = 0;
      while (k < next.size() && sgn(next[k]) == 0) ++k;
      const Scalar c = image[k] / next[k];
      RationalVector scaled = next;
      for (auto& x : scaled) x *= c;
      if (scaled != image || sgn(c) == 0)
        fail(ErrorKind::EigenAlignmentFailed, "ad_V does not map the chain vector to a nonzero multiple of the next one");
      lowering.push_back(c);
    }
    report.weights.push_back(std::move(weights));
    report.lowering.push_back(std::move(lowering));
  }
  return report;
}

GrowthReport classify(const AlgebraPtr& g, const AlgebraElement& u) {
  const Sl2Triple triple = jacobson_morozov(g, u);
  const ChainBasis cb = chain_basis(g, u, triple);
  GrowthReport r;
  r.algebra = g->label();
  r.depths = cb.depths();
  r.gr = growth_rate(cb);
  r.invariant_cocompact = r.gr - 3;
  r.invariant_lower = r.gr - 4;
  r.invariant_upper = r.gr - 3;
  r.standard = r.gr == 3;
  r.gap_witness = r.gr == 3 || r.gr >= 5;
  const std::vector<AlgebraElement> x_only{triple.x};
  r.noncentralizing_dim = static_cast<long long>(g->dim()) - static_cast<long long>(centralizer(g, x_only).size());
  r.centralizer_criterion_consistent = (r.gr == 3) == (r.noncentralizing_dim <= 3);
  return r;
}

long long sl_d_single_block_gr(int d, int l) {
  if (l < 2 || l > d) fail(ErrorKind::OutOfRange, "need 2 <= l <= d");
  const long long L = l;
  const long long D = d;
  return L * (4 * L + 1) * (L - 1) / 6 + L * (D - L) * (L - 1);
}

AlgebraElement sl_partition_nilpotent(const AlgebraPtr& sl_d, int d, const std::vector<int>& partition) {
  if (std::accumulate(partition.begin(), partition.end(), 0) != d)
    fail(ErrorKind::InvalidArgument, "partition does not sum to d");
  RationalVector coeffs(sl_d->dim());
  int start = 0;
  for (int block : partition) {
    if (block < 1) fail(ErrorKind::InvalidArgument, "partition parts must be positive");
    for (int k = start; k + 1 < start + block; ++k) coeffs[sl_offdiag_index(d, k, k + 1)] = 1;
    start += block;
  }
  return make_element(sl_d, std::move(coeffs));
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

std::vector<KakutaniClass> kakutani_table(const AlgebraPtr& g, const std::vector<AlgebraElement>& elements) {
  std::vector<KakutaniClass> classes;
  std::map<long long, std::size_t> by_gr;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const long long gr = growth_rate(chain_basis(g, elements[i]));
    auto [it, inserted] = by_gr.try_emplace(gr, classes.size());
    if (inserted) classes.push_back({gr, {}, ""});
    classes[it->second].members.push_back(i);
  }
  for (auto& c : classes) c.status = c.members.size() == 1 ? "singleton" : "undetermined";
  return classes;
}

}  // namespace uniflow
