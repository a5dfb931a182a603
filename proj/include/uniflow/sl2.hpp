#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "uniflow/divergence.hpp"

namespace uniflow {

using Mat2 = Eigen::Matrix2d;

// SL(2,R) conventions: U = E12, V = E21, X = diag(1,-1).
Mat2 sl2_exp_u(double t);
Mat2 sl2_exp_v(double a);
Mat2 sl2_exp_x(double s);
Mat2 sl2_rotation(double theta);

/// Throws InvalidArgument unless |det g - 1| <= 1e-12 max(1, |g|^2).
void require_sl2(const Mat2& g);

struct KAKDecomposition {
  double theta1 = 0;  // k1 = rotation(theta1), theta1 in [0, pi) or 0 when s = 0
  double s = 0;       // a = exp(sX), s >= 0
  double theta2 = 0;  // in [0, 2 pi)
  Mat2 recompose() const;
};

/// g = k1 exp(sX) k2 with s = (1/2) log lambda_max(g g^T).
KAKDecomposition kak(const Mat2& g);

struct UnipotentDistanceRow {
  double t = 0;
  double s = 0;       // kak(exp(tU)).s
  double bound = 0;   // 2 log t
  double ratio = 0;   // s / log t
  bool holds = false;
};

struct UnipotentDistanceReport {
  std::vector<UnipotentDistanceRow> rows;
  double max_ratio = 0;
  bool all_hold = true;
};

/// Throws OutOfRange if some t < t0.
UnipotentDistanceReport unipotent_distance_check(const std::vector<double>& times, double t0 = 2.0);

struct PsiMatch {
  double psi = 0;
  double alpha = 0;
  double beta = 0;
  double psi_prime = 0;
  double residual = 0;  // |exp(psi U) h exp(-tU) - exp(alpha V) exp(beta X)|_F
  bool alpha_bound = false;  // |alpha| <= 2|a_V|
  bool beta_bound = false;   // |beta| <= 2(|a_X| + |a_V||t|)
};

/// Throws DomainExceeded unless |a_X| < eps1 and |t| a_V <= eps1.
PsiMatch psi_match(double a_v, double a_x, double t, double eps1 = 0.1);

/// psi'(t) = (e^{-a_X} - a_V e^{a_X} t)^{-2}.
double psi_derivative(double a_v, double a_x, double t);

struct PsiWindow {
  double t_max = 0;  // eps^2 / |a_V| (infinite when a_V = 0)
  double min_prime = 0;
  double max_prime = 0;
  bool hypotheses = false;  // |a_X| < eps^2
  bool holds = false;       // psi' in (1-eps, 1+eps) on [0, t_max]
};

/// psi' is monotone in t, so the window is read off the endpoints.
PsiWindow psi_prime_window(double a_v, double a_x, double eps);

struct SlideResult {
  double ell = 0;
  double b_l = 0;          // V coefficient after the slide
  double c_l = 0;          // X coefficient after the slide
  Vec coeffs;              // chart coordinates of exp(ell U) g exp(-L U)
  bool ell_below_r = false;
  bool member = false;     // in Kak(R/2, eps)
  double sl2_residual = 0; // psi display residual inside the chart algebra
};

/// Slide of a Kak(R, eps^3) perturbation along the orbit. Throws
/// PreconditionViolated when the coefficients are outside Kak(R, eps^3),
/// |L| > R/3 or eps > eps1.
SlideResult slide_check(const CoordinateChart& chart, const Vec& coeffs, double horizon, double shift, double eps,
                        double eps1 = 0.1);

struct AppendixParams {
  double p = 0, q = 0, a = 0, b = 0, c = 0, d = 0;
  double j = 1, delta = 0.5;
  double eps_prime = 0.01;
  double jd() const { return j * delta; }
};

/// p, q in [2^{20 j delta}, 2^{40 j delta}], |a|, |c| in [2^{-10 j delta}, 1], |b|, |d| <= eps'.
bool admissible(const AppendixParams& prm);

/// Log-uniform draw from the admissible box with random signs on a, b, c, d.
AppendixParams sample_appendix(double j, double delta, double eps_prime, std::uint64_t seed, std::uint64_t index);

struct AppendixTrace {
  Mat2 m;
  double trace_closed = 0;
  double trace_direct = 0;
  double relative_error = 0;
  double lower = 0;  // 2^{20 j delta - 1}
  double upper = 0;  // 2^{80 j delta + 1}
  bool window_ok = false;
};

/// m = exp(-dX) exp(-cV) exp(pU) exp(aV) exp(bX) exp(-qU). Throws OutOfRange
/// on inadmissible parameters unless diagnostic is set.
AppendixTrace appendix_m(const AppendixParams& prm, bool diagnostic = false);

struct ConjugatorDecomposition {
  double lambda = 0;      // eigenvalue of m with |lambda| > 1
  double s = 0;           // 2 log|lambda|
  double s_base2 = 0;     // 2 log2|lambda|
  Mat2 h;                 // k exp(alpha U)
  double k_angle = 0;
  double alpha = 0;
  double log_abs_alpha = 0;  // -inf when alpha = 0
  double residual = 0;    // |m^2 - h exp(sX) h^-1|_F / |m^2|_F
  double p1_distance = 0; // kak(m^2).s
};

/// Throws NotHyperbolic when |Tr m| <= 2.
ConjugatorDecomposition conjugator_decomposition(const Mat2& m);

struct AppendixConjugator {
  ConjugatorDecomposition dec;
  double window_lo = 0;  // 40 j delta - 5
  double window_hi = 0;  // 160 j delta + 6
  bool window_ok = false;
  double k_prime_u = 0;          // p1_distance / (j delta)
  double k_prime_alpha = 0;      // log2|alpha| / (j delta)
  double k_prime_log_alpha = 0;  // log2(log|alpha|) / (j delta), 0 if log|alpha| <= 1
};

AppendixConjugator conjugator_decomposition(const AppendixParams& prm, bool diagnostic = false);

/// Distance on PSL(2,R) through the identification with the unit tangent
/// bundle of the hyperbolic plane: d_H(g.i, h.i) plus the circle distance of
/// the tangent angles at those points.
double t1h2_distance(const Mat2& g, const Mat2& h);

struct CoveringCell {
  double eps = 0;
  double radius = 0;
  std::size_t net = 0;
};

struct CoveringReport {
  std::vector<CoveringCell> cells;
  double eps_exponent = 0;  // slope of log net vs log(1/eps) at the smallest radius
  double radius_rate = 0;   // slope of log net vs R at the smallest eps
  double c_fit = 0;         // smallest C with net <= C eps^-3 e^{2CR} on every cell
};

/// Greedy eps-nets of a sample cloud in the ball of radius R around e.
/// Throws SampleBudgetExceeded when the cloud is too sparse for the smallest
/// eps or the sample count exceeds the budget.
CoveringReport covering_growth(const std::vector<double>& eps_list, const std::vector<double>& radius_list,
                               std::size_t samples, std::uint64_t seed);

}  // namespace uniflow
