// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "uniflow/chain_structure.hpp"
#include "uniflow/cli.hpp"
#include "uniflow/divergence.hpp"
#include "uniflow/flow_sim.hpp"
#include "uniflow/matrix_functions.hpp"
#include "uniflow/polynomial.hpp"
#include "uniflow/sl2.hpp"

using namespace uniflow;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.note << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    out.pass = false;
    out.note << " [runtime " << secs << " s over " << limit_s << " s]";
  }
  if (!out.pass) ++failures;
  std::printf("criterion %2d %s: %s (%.2f s)%s\n", id, out.pass ? "PASS" : "FAIL", title, secs, out.note.str().c_str());
  std::fflush(stdout);
}

AlgebraElement sl_unit(const AlgebraPtr& g, int d, int i, int j) {
  RationalVector c(g->dim());
  c[sl_offdiag_index(d, i, j)] = 1;
  return make_element(g, c);
}

std::vector<int> single_block(int d, int l) {
  std::vector<int> p{l};
  p.insert(p.end(), static_cast<std::size_t>(d - l), 1);
  return p;
}

double timed(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  criterion(1, "growth rate table for sl(2), sl(3), su(2,1)", 0, [](Outcome& o) {
    GrowthReport a, b, c;
    auto sl2 = build_sl(2);
    auto sl3 = build_sl(3);
    const double ta = timed([&] { a = classify(sl2, sl_unit(sl2, 2, 0, 1)); });
    const double tb = timed([&] { b = classify(sl3, sl_unit(sl3, 3, 0, 1)); });
    auto su = build_su21();
    const double tc = timed([&] { c = classify(su, basis_element(su, kSu21UnipotentIndex)); });
    o.expect(a.gr == 3 && a.standard, "sl(2): GR 3, standard");
    o.expect(b.gr == 5 && !b.standard && b.depths == std::vector<int>{2, 1, 1, 0}, "sl(3): GR 5, depths 2,1,1,0");
    // E23 -> E13 and E31 -> -E32 as the two depth-1 chains
    auto cb = chain_basis(sl3, sl_unit(sl3, 3, 0, 1));
    int found = 0;
    for (const auto& ch : cb.chains) {
      if (ch.depth() != 1) continue;
      const RationalMatrix top = ch.level(1).matrix(), bottom = ch.level(0).matrix();
      const bool first = top == RationalMatrix::unit(3, 1, 2) * top(1, 2) && bottom == RationalMatrix::unit(3, 0, 2) * bottom(0, 2);
      const bool second = top == RationalMatrix::unit(3, 2, 0) * top(2, 0) && bottom == RationalMatrix::unit(3, 2, 1) * bottom(2, 1);
      found += first || second;
    }
    o.expect(found == 2, "sl(3) depth-1 chains span E23 -> E13 and E31 -> E32");
    o.expect(c.gr == 5 && c.depths == std::vector<int>{2, 1, 1, 0}, "su(2,1): GR 5, two depth-1 chains, one trivial");
    o.expect(ta < 1 && tb < 1 && tc < 1, "each classification under 1 s");
    o.note << " times " << ta << "/" << tb << "/" << tc << " s";
  });

  criterion(2, "sl(d) single-block closed form, 2 <= l <= d <= 6", 10, [](Outcome& o) {
    int cases = 0;
    for (int d = 2; d <= 6; ++d) {
      auto g = build_sl(d);
      long long prev = 0;
      for (int l = 2; l <= d; ++l) {
        const long long gr = growth_rate(chain_basis(g, sl_partition_nilpotent(g, d, single_block(d, l))));
        o.expect(gr == sl_d_single_block_gr(d, l), "closed form at d=" + std::to_string(d) + " l=" + std::to_string(l));
        if (l > 2) o.expect(gr - prev == (l - 1) * (2 * d - l + 1), "increment l(2d-l)");
        prev = gr;
        ++cases;
      }
    }
    o.note << " " << cases << " cases";
  });

  criterion(3, "no growth rate 4 among partition nilpotents of sl(d), d <= 5", 60, [](Outcome& o) {
    int cases = 0;
    long long smallest_above_3 = 1000;
    for (int d = 2; d <= 5; ++d) {
      auto g = build_sl(d);
      for (const auto& p : partitions(d)) {
        if (p.front() == 1) continue;
        const long long gr = growth_rate(chain_basis(g, sl_partition_nilpotent(g, d, p)));
        o.expect(gr != 4, "GR 4 found");
        if (gr > 3) smallest_above_3 = std::min(smallest_above_3, gr);
        ++cases;
      }
    }
    o.note << " " << cases << " nilpotents, smallest GR above 3 is " << smallest_above_3;
  });

  criterion(4, "products of k horocycle flows, k <= 4", 0, [](Outcome& o) {
    for (int k = 1; k <= 4; ++k) {
      auto alg = resolve_algebra(Json{{"builtin", "sl2^" + std::to_string(k)}});
      auto r = classify(alg.algebra, alg.u);
      o.expect(r.gr == 3 * k, "GR 3k");
      o.expect(r.invariant_cocompact == 3 * k - 3, "cocompact invariant 3k-3");
      o.expect(r.invariant_lower == 3 * k - 4 && r.invariant_upper == 3 * k - 3, "bounds (3k-4, 3k-3)");
    }
  });

  criterion(5, "Jacobson-Morozov triples for 50 random nilpotents in sl(d <= 4)", 0, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      const int d = 2 + trial % 3;
      auto g = build_sl(d);
      auto parts = partitions(d);
      std::erase_if(parts, [](const std::vector<int>& p) { return p.front() == 1; });
      const auto& part = parts[rng() % parts.size()];
      // random unimodular conjugation of the partition nilpotent
      RationalMatrix p = RationalMatrix::identity(static_cast<std::size_t>(d)), pinv = p;
      for (int k = 0; k < 8; ++k) {
        const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
        auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d - 1));
        if (j >= i) ++j;
        const Scalar c(static_cast<long>(rng() % 7) - 3);
        const auto e = RationalMatrix::unit(static_cast<std::size_t>(d), i, j);
        p = p * (RationalMatrix::identity(static_cast<std::size_t>(d)) + c * e);
        pinv = (RationalMatrix::identity(static_cast<std::size_t>(d)) - c * e) * pinv;
      }
      auto u = element_from_matrix(g, p * sl_partition_nilpotent(g, d, part).matrix() * pinv);
      auto t = jacobson_morozov(g, u);
      o.expect(bracket(t.x, t.u) == Scalar(2) * t.u, "[X,U] = 2U");
      o.expect(bracket(t.x, t.v) == Scalar(-2) * t.v, "[X,V] = -2V");
      o.expect(bracket(t.u, t.v) == t.x, "[U,V] = X");
      auto cb = chain_basis(g, u, t);
      auto rr = verify_rep_relations(cb, t);
      for (std::size_t j = 0; j < cb.chains.size(); ++j) {
        const int m = cb.chains[j].depth();
        for (int i = 0; i <= m; ++i)
          o.expect(rr.weights[j][static_cast<std::size_t>(i)] == m - 2 * i, "ad_X weight m - 2i");
      }
    }
  });

  criterion(6, "conjugation polynomials vs direct conjugation, 10^3 samples per builtin", 30, [](Outcome& o) {
    std::vector<std::pair<std::string, CoordinateChart>> charts;
    for (const char* name : {"sl2", "sl3", "su21", "sl4"}) {
      auto alg = resolve_algebra(Json{{"builtin", name}});
      charts.emplace_back(name, make_chart(alg.algebra, alg.u));
    }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> coef(-0.005, 0.005), ts(0, 2), ss(-1, 1);
    double worst = 0;
    for (const auto& [name, chart] : charts) {
      for (int k = 0; k < 1000; ++k) {
        Vec a = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
        for (Eigen::Index i = 2; i < a.size(); ++i) a(i) = coef(rng);
        const double t = ts(rng), s = ss(rng);
        const auto order = k % 2 ? ConjugationOrder::FlowOutside : ConjugationOrder::ScaleOutside;
        const Vec poly = conj_poly(chart, a, s, order).evaluate(chart, t);
        const Vec oracle =
            lie_coordinates(chart, logm(conjugate_directly(chart, expm(standard_part(chart, a)), t, s, order)));
        worst = std::max(worst, (poly - oracle).norm() / oracle.norm());
      }
    }
    o.expect(worst < 1e-9, "relative error below 1e-9");
    o.note << " max relative error " << worst;
  });

  criterion(7, "Kakutani-Bowen volume exponent GR - 2, exact and Monte Carlo", 60, [](Outcome& o) {
    int exact = 0;
    for (int d = 2; d <= 5; ++d) {
      auto g = build_sl(d);
      for (const auto& p : partitions(d)) {
        if (p.front() == 1) continue;
        auto cb = chain_basis(g, sl_partition_nilpotent(g, d, p));
        o.expect(kak_volume_exponent(cb) == growth_rate(cb) - 2, "exact exponent");
        ++exact;
      }
    }
    std::vector<double> horizons;
    for (int k = 8; k <= 16; ++k) horizons.push_back(std::ldexp(1.0, k));
    for (const char* name : {"sl2", "sl3", "su21", "sl2^2"}) {
      auto alg = resolve_algebra(Json{{"builtin", name}});
      auto cb = chain_basis(alg.algebra, alg.u);
      o.expect(kak_volume_exponent(cb) == growth_rate(cb) - 2, "exact exponent");
      ++exact;
      auto fit = kak_volume_fit(make_chart(alg.algebra, alg.u), 0.01, horizons, 100000, 77);
      o.expect(std::abs(fit.slope - static_cast<double>(fit.expected)) <= 0.05, std::string("MC slope ") + name);
      o.note << " " << name << " slope " << fit.slope << " (expected " << fit.expected << ")";
    }
    o.note << "; " << exact << " chain bases exact";
  });

  criterion(8, "psi matching identity, bounds and derivative window", 10, [](Outcome& o) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(-1, 1);
    double worst = 0;
    int bound_fail = 0, window_fail = 0;
    for (int k = 0; k < 10000; ++k) {
      const double av = 0.01 * unit(rng), ax = 0.0999 * unit(rng);
      const double t = 0.1 / std::max(std::abs(av), 1e-12) * unit(rng);
      auto r = psi_match(av, ax, t);
      worst = std::max(worst, r.residual / std::max(1.0, std::abs(r.psi)));
      bound_fail += !(r.alpha_bound && r.beta_bound);
      // hypotheses: |a_X| < eps^2, t <= eps^2 / |a_V|, eps small
      const double eps = 0.01 + 0.19 * std::abs(unit(rng));
      window_fail += !psi_prime_window(av, 0.99 * eps * eps * unit(rng), eps).holds;
    }
    o.expect(worst < 1e-10, "display residual below 1e-10");
    o.expect(bound_fail == 0, "alpha and beta bounds");
    o.expect(window_fail == 0, "psi' in (1 - eps, 1 + eps)");
    o.note << " max scaled residual " << worst;
  });

  criterion(9, "return-matrix trace and conjugator window", 30, [](Outcome& o) {
    double worst_trace = 0, worst_res = 0;
    int window_fail = 0, conj_fail = 0;
    for (double jd : {0.5, 1.0}) {
      for (std::uint64_t k = 0; k < 5000; ++k) {
        auto prm = sample_appendix(jd, 1.0, 0.01, 909, k);
        auto t = appendix_m(prm);
        worst_trace = std::max(worst_trace, t.relative_error);
        window_fail += !t.window_ok;
        auto c = conjugator_decomposition(prm);
        worst_res = std::max(worst_res, c.dec.residual);
        conj_fail += !c.window_ok;
      }
    }
    o.expect(worst_trace < 1e-9, "closed-form trace relative error below 1e-9");
    o.expect(window_fail == 0, "trace window");
    o.expect(worst_res < 1e-8, "m^2 = h exp(sX) h^-1 residual below 1e-8");
    o.expect(conj_fail == 0, "s inside the window (base-2 reading)");
    o.note << " trace error " << worst_trace << ", conjugator residual " << worst_res;
  });

  criterion(10, "Brudnyi-Ganzburg on 10^5 polynomials and the long-range sublevel bound", 60, [](Outcome& o) {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unit(0, 1);
    int checked = 0, bad = 0;
    while (checked < 100000) {
      std::vector<double> a(1 + checked % 6);
      for (auto& x : a) x = gauss(rng);
      const double v0 = -unit(rng), v1 = 1 + unit(rng);
      double w0 = v0 + (v1 - v0) * unit(rng), w1 = v0 + (v1 - v0) * unit(rng);
      if (w0 > w1) std::swap(w0, w1);
      if (w1 - w0 < 1e-3) continue;
      ++checked;
      bad += !brudnyi_ganzburg_holds(Polynomial(a), v0, v1, w0, w1);
    }
    o.expect(bad == 0, "no Brudnyi-Ganzburg counterexample");
    int family = 0, family_bad = 0;
    for (int d = 1; d <= 5; ++d) {
      for (int k = 0; k < 200; ++k) {
        const double n = std::pow(10.0, 2 + 2 * unit(rng)), eps = 0.01, eta = 0.05 + 0.9 * unit(rng);
        // |p(N)| = eps (1 + u), |p(0)| < eps / C(d)
        std::vector<double> q(static_cast<std::size_t>(d + 1));
        for (auto& x : q) x = 2 * unit(rng) - 1;
        q[0] = 0.99 * (2 * unit(rng) - 1) / coefficient_bounds_constant(d);
        double tail = 0;
        for (std::size_t i = 1; i < q.size(); ++i) tail += q[i];
        const double target = (1 + unit(rng)) * (unit(rng) < 0.5 ? -1 : 1);
        if (std::abs(tail) < 1e-3) continue;
        const double scale = (target - q[0]) / tail;
        std::vector<double> c(q.size());
        c[0] = eps * q[0];
        for (std::size_t i = 1; i < q.size(); ++i) c[i] = eps * scale * q[i] / std::pow(n, static_cast<double>(i));
        auto r = long_range_sublevel(Polynomial(c), d, eps, n, eta);
        if (!r.hypotheses) continue;
        ++family;
        family_bad += !r.holds;
      }
    }
    o.expect(family > 500 && family_bad == 0, "long-range sublevel bound on the test family");
    o.note << " " << checked << " polynomials, " << family << " family members";
  });

  criterion(11, "horocycle flow simulation", 300, [](Outcome& o) {
    const double r = 4096, eps = 0.2;
    auto ex = matching_experiment(r, eps, 0.99 * std::pow(eps, 5) / r, 0, 0, haar_fundamental_point(1111, 0));
    o.expect(ex.matched_ok, "sup <= eps^3 with psi");
    o.expect(ex.control_fails, "control without psi exceeds eps^3");
    auto tail = cusp_tail(100000, 1111);
    o.expect(tail.kappa >= 0.85 && tail.kappa <= 1.15, "kappa in [0.85, 1.15]");
    auto lc = lattice_count(std::vector<double>{50, 100, 200, 400, 800});
    o.expect(lc.exponent >= 1.9 && lc.exponent <= 2.1, "lattice exponent in [1.9, 2.1]");
    const Mat2 x = haar_fundamental_point(1111, 1);
    const double v = divergence_degree(x, Sl2Direction::V, 1e6).slope;
    const double h = divergence_degree(x, Sl2Direction::X, 1e6).slope;
    const double u = divergence_degree(x, Sl2Direction::U, 1e6).slope;
    o.expect(std::abs(v - 2) <= 0.05 && std::abs(h - 1) <= 0.05 && std::abs(u) <= 0.05, "slopes 2/1/0");
    o.note << " matched " << ex.sup_matched << " vs identity " << ex.sup_identity << ", kappa " << tail.kappa
           << ", lattice exponent " << lc.exponent << ", slopes " << v << "/" << h << "/" << u;
  });

  const bool replacements_ok = failures == 0;
  criterion(12, "covering asymptotics, long-block matchings and measure estimates are out of desk scale", 0,
            [&](Outcome& o) {
              // nothing to reproduce; the property criteria above stand in for them
              o.expect(replacements_ok, "replacement property criteria 6-11 pass");
              o.note << " not reproduced; replaced by criteria 6-11";
            });

  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
