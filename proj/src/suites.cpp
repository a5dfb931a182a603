#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "uniflow/chain_structure.hpp"
#include "uniflow/cli.hpp"
#include "uniflow/divergence.hpp"
#include "uniflow/flow_sim.hpp"
#include "uniflow/matrix_functions.hpp"
#include "uniflow/polynomial.hpp"
#include "uniflow/rng.hpp"
#include "uniflow/sl2.hpp"

namespace uniflow {

namespace {

// Stream ids so the suites never share random draws.
enum Stream : std::uint64_t {
  kJm = 1,
  kConj = 2,
  kVolume = 3,
  kPoly = 4,
  kPsi = 5,
  kAppendix = 6,
  kCovering = 7,
  kFlow = 8,
  kLongRange = 9,
};

std::uint64_t sub_seed(std::uint64_t seed, Stream s) { return stream(seed, s)(); }

Json growth_json(const GrowthReport& r) {
  return {{"depths", r.depths},
          {"gr", r.gr},
          {"invariant_cocompact", r.invariant_cocompact},
          {"invariant_bounds", {r.invariant_lower, r.invariant_upper}},
          {"standard", r.standard},
          {"noncentralizing_dim", r.noncentralizing_dim}};
}

ResolvedAlgebra builtin_algebra(const std::string& name) { return resolve_algebra(Json{{"builtin", name}}); }

// P N P^-1 for a random unimodular integer P built from elementary moves.
AlgebraElement random_conjugate(const AlgebraPtr& g, int d, const AlgebraElement& n, SplitMix64& rng) {
  RationalMatrix p = RationalMatrix::identity(static_cast<std::size_t>(d));
  RationalMatrix pinv = p;
  for (int k = 0; k < 6; ++k) {
    const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
    auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d - 1));
    if (j >= i) ++j;
    const long c = static_cast<long>(rng() % 5) - 2;
    const RationalMatrix e = RationalMatrix::unit(static_cast<std::size_t>(d), i, j);
    p = p * (RationalMatrix::identity(static_cast<std::size_t>(d)) + Scalar(c) * e);
    pinv = (RationalMatrix::identity(static_cast<std::size_t>(d)) - Scalar(c) * e) * pinv;
  }
  return element_from_matrix(g, p * n.matrix() * pinv);
}

// Coefficients in the standard directions only, uniform in [-scale, scale].
Vec random_standard(const CoordinateChart& chart, SplitMix64& rng, double scale) {
  Vec a = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
  for (Eigen::Index k = 2; k < a.size(); ++k) a(k) = scale * (2 * rng.uniform() - 1);
  return a;
}

SuiteReport chain_suite(const RunConfig& cfg) {
  SuiteReport rep{"chain", {}, {}};

  struct Expect {
    const char* builtin;
    long long gr;
    bool standard;
    std::vector<int> depths;
  };
  for (const Expect& e : {Expect{"sl2", 3, true, {2}}, Expect{"sl3", 5, false, {2, 1, 1, 0}},
                          Expect{"su21", 5, false, {2, 1, 1, 0}}}) {
    auto alg = builtin_algebra(e.builtin);
    auto r = classify(alg.algebra, alg.u);
    rep.add(std::string("classify.") + e.builtin, "growth rate table for the basic unipotents", {{"algebra", e.builtin}},
            growth_json(r), {{"gr", e.gr}, {"standard", e.standard}, {"depths", e.depths}},
            r.gr == e.gr && r.standard == e.standard && r.depths == e.depths);
  }

  const int dmax = std::clamp(cfg.d, 2, 6);
  Table closed{"sl_d_single_block", {"d", "l", "gr_chain_basis", "gr_closed_form"}, {}};
  bool closed_ok = true, steps_ok = true;
  for (int d = 2; d <= dmax; ++d) {
    auto g = build_sl(d);
    long long prev = 0;
    for (int l = 2; l <= d; ++l) {
      std::vector<int> part{l};
      part.insert(part.end(), static_cast<std::size_t>(d - l), 1);
      const long long gr = growth_rate(chain_basis(g, sl_partition_nilpotent(g, d, part)));
      const long long cf = sl_d_single_block_gr(d, l);
      closed.rows.push_back({d, l, gr, cf});
      closed_ok = closed_ok && gr == cf;
      if (l > 2) steps_ok = steps_ok && gr - prev == static_cast<long long>(l - 1) * (2 * d - (l - 1));
      prev = gr;
    }
  }
  rep.tables.push_back(closed);
  rep.add("sl_d.closed_form", "single Jordan block growth rate in sl(d)", {{"d_max", dmax}},
          {{"rows", closed.rows.size()}}, {{"equal", true}}, closed_ok);
  rep.add("sl_d.increments", "GR(U_{l+1}) - GR(U_l) = l(2d - l)", {{"d_max", dmax}}, {{"all_match", steps_ok}},
          {{"all_match", true}}, steps_ok);

  std::set<long long> seen;
  const int gap_d = std::min(dmax, 5);
  for (int d = 2; d <= gap_d; ++d) {
    auto g = build_sl(d);
    for (const auto& part : partitions(d)) {
      if (part.front() == 1) continue;
      seen.insert(growth_rate(chain_basis(g, sl_partition_nilpotent(g, d, part))));
    }
  }
  rep.add("gap.no_gr_4", "no unipotent flow has growth rate 4", {{"d_max", gap_d}},
          {{"gr_values", std::vector<long long>(seen.begin(), seen.end())}}, {{"excluded", 4}}, !seen.count(4));

  for (int k = 1; k <= 3; ++k) {
    auto alg = builtin_algebra("sl2^" + std::to_string(k));
    auto r = classify(alg.algebra, alg.u);
    const bool ok = r.gr == 3 * k && r.invariant_cocompact == 3 * k - 3 && r.invariant_lower == 3 * k - 4 &&
                    r.invariant_upper == 3 * k - 3;
    rep.add("product.k" + std::to_string(k), "products of horocycle flows", {{"k", k}}, growth_json(r),
            {{"gr", 3 * k}, {"invariant_bounds", {3 * k - 4, 3 * k - 3}}}, ok);
  }

  SplitMix64 rng = stream(cfg.seed, kJm);
  int jm_ok = 0, jm_total = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 3 + trial % 2;
    auto g = build_sl(d);
    auto parts = partitions(d);
    std::erase_if(parts, [](const std::vector<int>& p) { return p.front() == 1; });
    const auto& part = parts[rng() % parts.size()];
    auto u = random_conjugate(g, d, sl_partition_nilpotent(g, d, part), rng);
    ++jm_total;
    auto t = jacobson_morozov(g, u);
    auto cb = chain_basis(g, u, t);
    bool ok = satisfies_sl2_relations(t) && verify_chain_basis(cb);
    try {
      verify_rep_relations(cb, t);
    } catch (const Error&) {
      ok = false;
    }
    jm_ok += ok;
  }
  rep.add("jacobson_morozov.random", "sl(2) triple and weight relations for conjugated nilpotents",
          {{"samples", jm_total}, {"d", {3, 4}}}, {{"passed", jm_ok}}, {{"passed", jm_total}}, jm_ok == jm_total);
  return rep;
}

SuiteReport divergence_suite(const RunConfig& cfg) {
  SuiteReport rep{"divergence", {}, {}};

  // conjugation polynomials against matrix conjugation
  {
    auto sl3 = builtin_algebra("sl3");
    auto su = builtin_algebra("su21");
    auto g4 = build_sl(4);
    std::vector<std::pair<std::string, CoordinateChart>> charts;
    charts.emplace_back("sl3", make_chart(sl3.algebra, sl3.u));
    charts.emplace_back("su21", make_chart(su.algebra, su.u));
    charts.emplace_back("sl4[3,1]", make_chart(g4, sl_partition_nilpotent(g4, 4, {3, 1})));
    SplitMix64 rng = stream(cfg.seed, kConj);
    const std::size_t n = std::max<std::size_t>(20, cfg.samples / 100);
    for (const auto& [name, chart] : charts) {
      double worst = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const Vec a = random_standard(chart, rng, 0.005);
        const double t = 2 * rng.uniform(), s = 2 * rng.uniform() - 1;
        const Vec poly = conj_poly(chart, a, s).evaluate(chart, t);
        const Vec oracle = lie_coordinates(chart, logm(conjugate_directly(chart, expm(standard_part(chart, a)), t, s)));
        worst = std::max(worst, (poly - oracle).norm() / std::max(1e-300, oracle.norm()));
      }
      rep.add("conj_poly." + name, "conjugation polynomials equal direct conjugation",
              {{"algebra", name}, {"samples", n}}, {{"max_relative_error", number(worst)}}, {{"max_relative_error", 1e-9}},
              worst < 1e-9);
    }
  }

  // volume exponent, exactly and by Monte Carlo
  {
    bool exact_ok = true;
    Json rows = Json::array();
    for (int d = 2; d <= 4; ++d) {
      auto g = build_sl(d);
      for (const auto& part : partitions(d)) {
        if (part.front() == 1) continue;
        auto cb = chain_basis(g, sl_partition_nilpotent(g, d, part));
        const long long e = kak_volume_exponent(cb);
        rows.push_back({{"d", d}, {"partition", part}, {"exponent", e}, {"gr", growth_rate(cb)}});
        exact_ok = exact_ok && e == growth_rate(cb) - 2;
      }
    }
    rep.add("kak_volume.exact", "Kakutani-Bowen ball volume exponent is GR - 2", {{"d_max", 4}}, {{"rows", rows}},
            {{"relation", "exponent == gr - 2"}}, exact_ok);

    for (const char* name : {"sl3", "su21"}) {
      auto alg = builtin_algebra(name);
      auto fit = kak_volume_fit(make_chart(alg.algebra, alg.u), cfg.eps.front(), cfg.horizons, cfg.samples,
                                sub_seed(cfg.seed, kVolume));
      rep.add(std::string("kak_volume.monte_carlo.") + name, "Monte-Carlo volume slope of Kakutani-Bowen balls",
              {{"algebra", name}, {"eps", cfg.eps.front()}, {"horizons", cfg.horizons}, {"samples", cfg.samples}},
              {{"slope", number(fit.slope)}, {"fractions", fit.fractions}},
              {{"expected", fit.expected}, {"tolerance", 0.05}}, std::abs(fit.slope - static_cast<double>(fit.expected)) <= 0.05);
    }
  }

  // coefficient constant and Brudnyi-Ganzburg
  {
    Table t{"coefficient_constant", {"d", "C_exact", "C"}, {}};
    for (int d = 0; d <= 5; ++d)
      t.rows.push_back({d, to_string(coefficient_bounds_constant_exact(d)), coefficient_bounds_constant(d)});
    rep.tables.push_back(t);

    SplitMix64 rng = stream(cfg.seed, kPoly);
    const std::size_t n = std::max<std::size_t>(100, cfg.samples / 10);
    std::size_t violations = 0, coeff_violations = 0;
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> a(1 + k % 6);
      for (auto& x : a) x = 2 * rng.uniform() - 1;
      const Polynomial p(a);
      double w0 = rng.uniform(), w1 = rng.uniform();
      if (w0 > w1) std::swap(w0, w1);
      if (w1 - w0 < 1e-3) continue;
      double ratio = 0;
      if (!brudnyi_ganzburg_holds(p, 0, 1, w0, w1, &ratio)) ++violations;
      worst = std::max(worst, ratio);
      // sup_[0,1] |p| < eps forces |a_k| < C(d) eps
      const double sup = sup_abs(p, 0, 1);
      const double cd = coefficient_bounds_constant(p.degree());
      for (double c : p.coeffs())
        if (std::abs(c) > cd * sup * (1 + 1e-12)) ++coeff_violations;
    }
    rep.add("brudnyi_ganzburg.random", "polynomial remez-type inequality", {{"samples", n}, {"degree_max", 5}},
            {{"violations", violations}, {"max_ratio", number(worst)}}, {{"violations", 0}}, violations == 0);
    rep.add("coefficient_bound.random", "sup on [0,T] controls coefficients", {{"samples", n}},
            {{"violations", coeff_violations}}, {{"violations", 0}}, coeff_violations == 0);

    SplitMix64 lr = stream(cfg.seed, kLongRange);
    std::size_t lr_total = 0, lr_fail = 0;
    for (int d = 1; d <= 5; ++d)
      for (int k = 0; k < 20; ++k) {
        const double nn = 100 * std::pow(10.0, 2 * lr.uniform()), eps = 0.01, eta = 0.1 + 0.3 * lr.uniform();
        std::vector<double> q(static_cast<std::size_t>(d + 1));
        for (auto& x : q) x = 2 * lr.uniform() - 1;
        q[0] *= 0.9 / coefficient_bounds_constant(d);
        double at1 = 0;
        for (double x : q) at1 += x;
        if (std::abs(at1) < 0.1) continue;
        // p(t) = eps q(t/N) / |q(1)|, so |p(N)| = eps and |p(0)| < eps / C(d)
        const double scale = (1 + lr.uniform()) / std::abs(at1);
        std::vector<double> c(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) c[i] = eps * scale * q[i] / std::pow(nn, static_cast<double>(i));
        auto r = long_range_sublevel(Polynomial(c), d, eps, nn, eta);
        if (!r.hypotheses) continue;
        ++lr_total;
        lr_fail += !r.holds;
      }
    rep.add("sublevel.long_range", "sublevel measure of slowly escaping polynomials",
            {{"degrees", {1, 5}}, {"cases", lr_total}}, {{"violations", lr_fail}}, {{"violations", 0}},
            lr_fail == 0 && lr_total > 0);
  }

  // renormalization example
  {
    auto alg = builtin_algebra("sl3");
    auto chart = make_chart(alg.algebra, alg.u);
    const double eps = 0.01, r = 1e6;
    Vec a = Vec::Zero(static_cast<Eigen::Index>(chart.dim()));
    std::size_t top = 0;
    for (std::size_t k = 3; k < chart.dim(); ++k)
      if (chart.labels[k].level == 1) top = k;
    const double norm = chart.directions[top].norm();
    a(static_cast<Eigen::Index>(top)) = eps / r / norm;
    auto res = renormalize_bowen(chart, a, 0.5 * std::log(r), r, 0.1, eps);
    rep.add("renormalization.example", "rescaling a Bowen ball element by exp(sX)",
            {{"eps", eps}, {"R", r}, {"s", 0.5 * std::log(r)}},
            {{"residual", number(res.residual)}, {"measured_c2", number(res.measured_c2)}, {"member", res.member}},
            {{"residual_scale", number(res.residual_scale)}}, res.residual_ok && res.member);
  }
  return rep;
}

SuiteReport sl2_suite(const RunConfig& cfg) {
  SuiteReport rep{"sl2", {}, {}};

  auto ud = unipotent_distance_check({2, 10, 100, 1e4, 1e6});
  {
    Json rows = Json::array();
    for (const auto& r : ud.rows) rows.push_back({{"t", r.t}, {"s", number(r.s)}, {"bound", number(r.bound)}});
    rep.add("unipotent_distance", "d(exp(tU), e) grows like log t", {{"t0", 2}}, {{"rows", rows}},
            {{"relation", "s <= 2 log t"}}, ud.all_hold);
  }

  {
    SplitMix64 rng = stream(cfg.seed, kPsi);
    const std::size_t n = std::max<std::size_t>(1000, cfg.samples / 2);
    double worst = 0;
    std::size_t bound_fail = 0, window_fail = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double av = 0.01 * (2 * rng.uniform() - 1), ax = 0.0999 * (2 * rng.uniform() - 1);
      const double t = av == 0 ? 1 : 0.1 / std::abs(av) * (2 * rng.uniform() - 1);
      auto r = psi_match(av, ax, t);
      worst = std::max(worst, r.residual / std::max(1.0, std::abs(r.psi)));
      bound_fail += !(r.alpha_bound && r.beta_bound);
      const double e = 0.05 + 0.15 * rng.uniform();
      auto w = psi_prime_window(av, 0.99 * e * e * (2 * rng.uniform() - 1), e);
      window_fail += !w.holds;
    }
    rep.add("psi.display", "time change psi matches the orbit up to exp(alpha V) exp(beta X)", {{"samples", n}},
            {{"max_residual", number(worst)}, {"bound_violations", bound_fail}},
            {{"max_residual", 1e-10}, {"bound_violations", 0}}, worst < 1e-10 && bound_fail == 0);
    rep.add("psi.derivative_window", "psi' stays within eps of 1", {{"samples", n}, {"eps", {0.05, 0.2}}},
            {{"violations", window_fail}}, {{"violations", 0}}, window_fail == 0);
  }

  {
    const std::size_t n = std::max<std::size_t>(200, cfg.samples / 10);
    double worst = 0, worst_res = 0;
    std::size_t window_fail = 0, conj_window_fail = 0;
    Json ks = Json::array();
    for (double jd : {0.5, 1.0}) {
      double ku = 0;
      for (std::size_t k = 0; k < n; ++k) {
        auto prm = sample_appendix(jd, 1.0, 0.01, sub_seed(cfg.seed, kAppendix), k);
        auto t = appendix_m(prm);
        worst = std::max(worst, t.relative_error);
        window_fail += !t.window_ok;
        auto c = conjugator_decomposition(prm);
        worst_res = std::max(worst_res, c.dec.residual);
        conj_window_fail += !c.window_ok;
        ku = std::max(ku, c.k_prime_u);
      }
      ks.push_back({{"j_delta", jd}, {"k_prime_u", number(ku)}});
    }
    rep.add("appendix.trace", "closed-form trace of the return matrix", {{"samples", 2 * n}, {"j_delta", {0.5, 1.0}}},
            {{"max_relative_error", number(worst)}, {"window_violations", window_fail}},
            {{"max_relative_error", 1e-9}, {"window_violations", 0}}, worst < 1e-9 && window_fail == 0);
    rep.add("appendix.conjugator", "m^2 = h exp(sX) h^-1 with s in the dyadic window",
            {{"samples", 2 * n}, {"j_delta", {0.5, 1.0}}},
            {{"max_residual", number(worst_res)}, {"window_violations", conj_window_fail}, {"k_prime", ks}},
            {{"max_residual", 1e-8}, {"window_violations", 0}}, worst_res < 1e-8 && conj_window_fail == 0);
  }

  {
    const std::size_t n = std::max<std::size_t>(100000, cfg.samples * 10);
    auto cov = covering_growth({0.2, 0.1}, {1.0, 2.0}, n, sub_seed(cfg.seed, kCovering));
    Table t{"covering", {"eps", "R", "net"}, {}};
    for (const auto& c : cov.cells) t.rows.push_back({c.eps, c.radius, c.net});
    rep.tables.push_back(t);
    rep.add("covering.growth", "covering numbers of balls in PSL(2,R)", {{"eps", {0.2, 0.1}}, {"R", {1, 2}}, {"samples", n}},
            {{"eps_exponent", number(cov.eps_exponent)}, {"radius_rate", number(cov.radius_rate)}, {"C", number(cov.c_fit)}},
            {{"eps_exponent_max", 3.3}}, std::isfinite(cov.c_fit) && cov.eps_exponent <= 3.3);
  }
  return rep;
}

SuiteReport flow_suite(const RunConfig& cfg) {
  SuiteReport rep{"flow", {}, {}};
  const auto& sim = cfg.simulate;
  const std::uint64_t seed = sub_seed(cfg.seed, kFlow);

  {
    const double a = 0.99 * std::pow(sim.eps, 5) / sim.horizon;
    auto ex = matching_experiment(sim.horizon, sim.eps, a, 0, 0, haar_fundamental_point(seed, 0), sim.grid);
    rep.add("matching.psi", "psi time change keeps perturbed orbits eps^3 close",
            {{"R", sim.horizon}, {"eps", sim.eps}, {"a", a}, {"grid", sim.grid}},
            {{"sup_matched", number(ex.sup_matched)}, {"sup_identity", number(ex.sup_identity)},
             {"max_h_prime_dev", number(ex.max_h_prime_dev)}},
            {{"sup_matched", std::pow(sim.eps, 3)}, {"control_exceeds", std::pow(sim.eps, 3)}},
            ex.matched_ok && ex.control_fails && ex.h_prime_ok);
  }
  {
    auto x = haar_fundamental_point(seed, 1);
    auto rec = splitting_time(Mat2(sl2_exp_v(1e-6) * x), x, 0.1);
    rep.add("splitting.v_perturbation", "splitting time of a V perturbation is about eps / a_V",
            {{"a_V", 1e-6}, {"eps", 0.1}}, {{"exponent", rec.exponent}, {"capped", rec.capped}},
            {{"exponent_range", {15, 17}}}, !rec.capped && rec.exponent >= 15 && rec.exponent <= 17);
  }
  {
    auto t = cusp_tail(sim.samples, seed);
    rep.add("cusp.tail", "cusp excursions have exponentially small measure", {{"samples", sim.samples}, {"t0", t.t0}},
            {{"kappa", number(t.kappa)}, {"kappa_ci", {number(t.kappa_lo), number(t.kappa_hi)}}, {"c", number(t.c)}},
            {{"kappa_range", {0.85, 1.15}}}, t.dominated && t.kappa >= 0.85 && t.kappa <= 1.15);
  }
  {
    auto lc = lattice_count(sim.t_values);
    rep.add("lattice.count", "SL(2,Z) points in Frobenius balls grow like T^2", {{"T", sim.t_values}},
            {{"counts", lc.counts}, {"exponent", number(lc.exponent)}}, {{"exponent_range", {1.9, 2.1}}},
            lc.exponent >= 1.9 && lc.exponent <= 2.1);
  }
  {
    auto x = haar_fundamental_point(seed, 2);
    Json slopes = Json::object();
    bool ok = true;
    for (auto [dir, name, expect] : {std::tuple{Sl2Direction::V, "V", 2.0}, std::tuple{Sl2Direction::X, "X", 1.0},
                                     std::tuple{Sl2Direction::U, "U", 0.0}}) {
      auto fit = divergence_degree(x, dir, 1e6, sim.delta0);
      slopes[name] = number(fit.slope);
      ok = ok && std::abs(fit.slope - expect) <= 0.05;
    }
    rep.add("divergence.degree", "polynomial divergence of nearby orbits", {{"delta0", sim.delta0}, {"horizon", 1e6}},
            {{"slopes", slopes}}, {{"expected", {{"V", 2}, {"X", 1}, {"U", 0}}}, {"tolerance", 0.05}}, ok);
  }
  return rep;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"chain", "divergence", "flow", "sl2"};
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "chain") return chain_suite(cfg);
  if (name == "divergence") return divergence_suite(cfg);
  if (name == "sl2") return sl2_suite(cfg);
  if (name == "flow") return flow_suite(cfg);
  fail(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
}

SuiteReport analyze(const ResolvedAlgebra& alg) {
  SuiteReport rep{"analyze", {}, {}};
  const Json in{{"algebra", alg.name}, {"dim", alg.algebra->dim()}};
  auto r = classify(alg.algebra, alg.u);
  auto t = jacobson_morozov(alg.algebra, alg.u);
  auto cb = chain_basis(alg.algebra, alg.u, t);

  Json measured = growth_json(r);
  measured["gap_witness"] = r.gap_witness;
  rep.add("classify", "growth rate and Kakutani invariant", in, measured,
          {{"gr_not", 4}, {"relation", "gr = 1/2 sum m(m+1)"}}, r.gr != 4 && r.gr == growth_rate(r.depths));
  rep.add("triple", "Jacobson-Morozov completion", in, {{"relations", satisfies_sl2_relations(t)}},
          {{"relations", true}}, satisfies_sl2_relations(t));
  bool weights_ok = true;
  RepRelationsReport rr;
  try {
    rr = verify_rep_relations(cb, t);
  } catch (const Error&) {
    weights_ok = false;
  }
  rep.add("chain_basis", "chain basis with ad_X weights m - 2i", in,
          {{"basis", verify_chain_basis(cb)}, {"weights", rr.weights}}, {{"basis", true}},
          weights_ok && verify_chain_basis(cb));
  rep.add("centralizer", "GR = 3 exactly when dim g - dim C(X) <= 3", in,
          {{"noncentralizing_dim", r.noncentralizing_dim}, {"consistent", r.centralizer_criterion_consistent}},
          {{"consistent", true}}, r.centralizer_criterion_consistent);
  if (cb.sl2_chain) {
    const long long e = kak_volume_exponent(cb);
    rep.add("kak_volume", "Kakutani-Bowen ball volume exponent", in, {{"exponent", e}}, {{"exponent", r.gr - 2}},
            e == r.gr - 2);
  }

  Table chains{"chains", {"chain", "depth", "weights"}, {}};
  for (std::size_t j = 0; j < cb.chains.size(); ++j) {
    std::string w;
    for (std::size_t i = 0; i < rr.weights.size() && j < rr.weights.size() && i < rr.weights[j].size(); ++i)
      w += (i ? " " : "") + std::to_string(rr.weights[j][i]);
    chains.rows.push_back({j, cb.chains[j].depth(), w});
  }
  rep.tables.push_back(chains);
  return rep;
}

SuiteReport enumerate_sld(int d) {
  if (d < 2 || d > 8) fail(ErrorKind::InvalidArgument, "enumerate-sld needs 2 <= d <= 8");
  SuiteReport rep{"enumerate-sld", {}, {}};
  auto g = build_sl(d);
  Table t{"sl" + std::to_string(d), {"l", "GR"}, {}};
  long long prev = 0;
  for (int l = 2; l <= d; ++l) {
    std::vector<int> part{l};
    part.insert(part.end(), static_cast<std::size_t>(d - l), 1);
    const long long gr = growth_rate(chain_basis(g, sl_partition_nilpotent(g, d, part)));
    t.rows.push_back({l, gr});
    const long long cf = sl_d_single_block_gr(d, l);
    rep.add("closed_form.l" + std::to_string(l), "single Jordan block growth rate in sl(d)", {{"d", d}, {"l", l}},
            {{"gr", gr}}, {{"closed_form", cf}}, gr == cf);
    if (l > 2)
      rep.add("increment.l" + std::to_string(l - 1), "GR(U_{l+1}) - GR(U_l) = l(2d - l)", {{"d", d}, {"l", l - 1}},
              {{"increment", gr - prev}}, {{"increment", (l - 1) * (2 * d - l + 1)}}, gr - prev == (l - 1) * (2 * d - l + 1));
    prev = gr;
  }
  rep.tables.push_back(t);
  return rep;
}

SuiteReport simulate(const RunConfig& cfg) {
  const auto& sim = cfg.simulate;
  const std::uint64_t seed = sub_seed(cfg.seed, kFlow);
  SuiteReport rep{"simulate." + sim.kind, {}, {}};
  if (sim.kind == "matching") {
    const double a = 0.99 * std::pow(sim.eps, 5) / sim.horizon;
    auto ex = matching_experiment(sim.horizon, sim.eps, a, 0, 0, haar_fundamental_point(seed, 0), sim.grid);
    rep.add("matching", "psi time change keeps perturbed orbits eps^3 close",
            {{"R", sim.horizon}, {"eps", sim.eps}, {"a", a}, {"grid", sim.grid}},
            {{"sup_matched", number(ex.sup_matched)}, {"sup_identity", number(ex.sup_identity)},
             {"max_h_prime_dev", number(ex.max_h_prime_dev)}, {"window", ex.window}},
            {{"sup_matched", std::pow(sim.eps, 3)}}, ex.matched_ok && ex.h_prime_ok);
    rep.add("matching.control", "without the time change the orbits separate", {{"R", sim.horizon}},
            {{"sup_identity", number(ex.sup_identity)}}, {{"exceeds", std::pow(sim.eps, 3)}}, ex.control_fails);
    Table t{"matching", {"t", "psi", "d_matched", "d_identity"}, {}};
    for (std::size_t k = 0; k < ex.times.size(); ++k)
      t.rows.push_back({ex.times[k], ex.psi[k], number(ex.d_matched[k]), number(ex.d_identity[k])});
    rep.tables.push_back(t);
  } else if (sim.kind == "tail") {
    auto tr = cusp_tail(sim.samples, seed);
    rep.add("tail", "cusp excursions have exponentially small measure", {{"samples", sim.samples}},
            {{"kappa", number(tr.kappa)}, {"kappa_ci", {number(tr.kappa_lo), number(tr.kappa_hi)}}, {"c", number(tr.c)}},
            {{"kappa_range", {0.85, 1.15}}}, tr.dominated && tr.kappa >= 0.85 && tr.kappa <= 1.15);
    Table t{"tail", {"t", "tail", "envelope"}, {}};
    for (std::size_t k = 0; k < tr.t_grid.size(); ++k)
      t.rows.push_back({tr.t_grid[k], tr.tail[k], tr.c * std::exp(-tr.kappa * tr.t_grid[k])});
    rep.tables.push_back(t);
  } else if (sim.kind == "count") {
    auto lc = lattice_count(sim.t_values);
    rep.add("count", "SL(2,Z) points in Frobenius balls grow like T^2", {{"T", sim.t_values}},
            {{"exponent", number(lc.exponent)}}, {{"exponent_range", {1.9, 2.1}}},
            lc.exponent >= 1.9 && lc.exponent <= 2.1);
    Table t{"count", {"T", "count"}, {}};
    for (std::size_t k = 0; k < lc.counts.size(); ++k) t.rows.push_back({lc.t_values[k], lc.counts[k]});
    rep.tables.push_back(t);
  } else if (sim.kind == "degree") {
    auto x = haar_fundamental_point(seed, 2);
    Table t{"degree", {"direction", "t", "distance"}, {}};
    for (auto [dir, name, expect] : {std::tuple{Sl2Direction::V, "V", 2.0}, std::tuple{Sl2Direction::X, "X", 1.0},
                                     std::tuple{Sl2Direction::U, "U", 0.0}}) {
      auto fit = divergence_degree(x, dir, sim.horizon, sim.delta0);
      rep.add(std::string("degree.") + name, "polynomial divergence of nearby orbits",
              {{"direction", name}, {"horizon", sim.horizon}, {"delta0", sim.delta0}},
              {{"slope", number(fit.slope)}, {"horizon_used", number(fit.horizon_used)}, {"shortened", fit.shortened}},
              {{"expected", expect}, {"tolerance", 0.05}}, std::abs(fit.slope - expect) <= 0.05);
      for (std::size_t k = 0; k < fit.times.size(); ++k) t.rows.push_back({name, fit.times[k], fit.distances[k]});
    }
    rep.tables.push_back(t);
  } else {
    fail(ErrorKind::ConfigParse, "simulate needs one of matching, tail, count, degree");
  }
  return rep;
}

}  // namespace uniflow
