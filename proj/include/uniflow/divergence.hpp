#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniflow/chain_structure.hpp"
#include "uniflow/matrix_functions.hpp"
#include "uniflow/polynomial.hpp"

namespace uniflow {

enum class CoordKind { V, X, U, Chain };

struct CoordLabel {
  CoordKind kind = CoordKind::Chain;
  int chain = -1;  // position among the standard (non-sl2) chains
  int level = -1;  // i in X_i^j
  int depth = -1;  // m_j
  std::string name() const;
};

/// Coordinates near the identity, g = exp(a_V V) exp(a_X X) exp(a_U U + sum a_ij X_i^j).
/// Coordinate order: V, X, U, then each standard chain bottom-up (X_0^j .. X_m^j).
struct CoordinateChart {
  AlgebraPtr algebra;
  Sl2Triple triple;
  ChainBasis basis;
  std::vector<std::size_t> standard_chains;  // indices into basis.chains
  std::vector<CoordLabel> labels;
  std::vector<Mat> directions;  // ambient real matrices, one per coordinate
  std::vector<std::size_t> chain_offset;  // coordinate index of X_0^j
  Mat coord_map;                // vec(ambient) -> coordinates
  std::vector<std::vector<Mat>> ad_powers;  // ad_U^k(direction)/k!, per coordinate
  double radius = 0.1;

  std::size_t dim() const { return labels.size(); }
  std::size_t index(std::size_t standard_chain, int level) const;
  int depth(std::size_t standard_chain) const;
  std::size_t chain_count() const { return standard_chains.size(); }
  /// L_U: depth of the longest standard chain (0 if there is none).
  int longest_depth() const;
};

CoordinateChart make_chart(const AlgebraPtr& g, const AlgebraElement& u, double radius = 0.1);

/// Coordinates of an ambient Lie algebra matrix in the chart directions.
Vec lie_coordinates(const CoordinateChart& chart, const Mat& y);
/// sum_k c_k direction_k.
Mat lie_element(const CoordinateChart& chart, const Vec& coeffs);
/// a_U U + sum a_ij X_i^j (V and X entries ignored).
Mat standard_part(const CoordinateChart& chart, const Vec& coeffs);
/// exp(a_V V) exp(a_X X) exp(standard part).
Mat recompose(const CoordinateChart& chart, const Vec& coeffs);

/// Damped Newton inversion of recompose. Throws OutOfChartDomain when g is
/// farther than chart.radius from e or the iteration does not converge.
Vec decompose(const CoordinateChart& chart, const Mat& g);

enum class ConjugationOrder {
  ScaleOutside,  // exp(sX) exp(tU) g exp(-tU) exp(-sX)
  FlowOutside,   // exp(tU) exp(sX) g exp(-sX) exp(-tU)
};

struct DivergenceEntry {
  std::size_t coordinate = 0;
  int chain = 0;
  int level = 0;
  int weight = 0;          // m_j - 2i; the entry is scaled by e^{weight s}
  Polynomial in_t;         // before the e^{weight s} factor
};

struct DivergencePolynomial {
  double s = 0;
  ConjugationOrder order = ConjugationOrder::ScaleOutside;
  double a_u = 0;                       // coefficient of U before e^{2s}
  std::vector<DivergenceEntry> entries;  // one per chain coordinate

  /// Chart coordinates of log of the conjugated element at time t.
  Vec evaluate(const CoordinateChart& chart, double t) const;
};

/// Conjugation polynomials of g = exp(a_U U + sum a_ij X_i^j). Throws
/// NonzeroSl2Part if a_V or a_X is nonzero.
DivergencePolynomial conj_poly(const CoordinateChart& chart, const Vec& coeffs, double s,
                               ConjugationOrder order = ConjugationOrder::ScaleOutside);

/// Direct route: the same conjugation done with matrix products.
Mat conjugate_directly(const CoordinateChart& chart, const Mat& g, double t, double s,
                       ConjugationOrder order = ConjugationOrder::ScaleOutside);

/// sup_{r in [0,R]} |Ad(exp(rU)) Y|_F, which is sup d_G(exp(rU) exp(Y) exp(-rU), e)
/// while the conjugates stay in the principal-log region.
double bowen_sup(const CoordinateChart& chart, const Mat& y, double horizon);

bool in_bowen_ball(const CoordinateChart& chart, const Mat& y, double horizon, double eps);

/// Kak(R, eps) membership in chart coordinates: |a_V| < eps/R, |a_X| < eps and
/// the standard part in Bow(R, eps, e).
bool in_kak_ball(const CoordinateChart& chart, const Vec& coeffs, double horizon, double eps);

/// 1 + sum over standard chains of m_j(m_j+1)/2. Throws PreconditionViolated
/// if the chain basis has no sl2 chain.
long long kak_volume_exponent(const ChainBasis& cb);

struct KakBallSpec {
  double horizon = 0;
  double eps = 0;
  std::vector<double> half_widths;  // per chart coordinate
  std::vector<int> r_powers;        // half width ~ R^{-r_power}
  int exponent_sum() const;
  double volume() const;
};

/// Model box: V: eps/R, X: eps, U: eps, X_i^j: eps R^-i.
KakBallSpec kak_ball_spec(const CoordinateChart& chart, double horizon, double eps);

struct VolumeFit {
  std::vector<double> horizons;
  std::vector<double> volumes;   // Monte-Carlo volume of the true Kak set
  std::vector<double> fractions; // hit fraction inside the outer box
  double slope = 0;
  long long expected = 0;        // -(GR - 2)
  double outer_width = 0;        // chain and U widths of the sampling box, in units of the model box
};

/// Monte-Carlo volume of Kak(R, eps) in chart coordinates for each R, using
/// the same uniform draws at every R, and the log-log slope.
VolumeFit kak_volume_fit(const CoordinateChart& chart, double eps, const std::vector<double>& horizons,
                         std::size_t samples, std::uint64_t seed);

/// Sup norm of the coordinate map (|coords(Y)|_inf <= kappa |Y|_F).
double coordinate_norm(const CoordinateChart& chart);

/// Coefficient bound implied by Bow(R, eps, e) for level i of a depth-m chain:
/// C(m) i! kappa eps R^-i.
double bowen_coefficient_bound(const CoordinateChart& chart, int depth, int level, double horizon, double eps);

struct RenormalizationResult {
  Vec scaled;                 // coefficients of exp(-sX) g exp(sX)
  double short_horizon = 0;   // R^{1/2 - C delta'}
  double short_radius = 0;    // eps^{1/3}
  double short_sup = 0;       // Bowen sup of the scaled element on the short horizon
  bool member = false;        // in Bow(short_horizon, short_radius, e)
  Vec y_c;                    // X_0^j and U parts of the scaled element
  double residual = 0;        // d_G(exp(-Y_C) exp(-sX) g exp(sX), e)
  double residual_scale = 0;  // eps R^{-1/2}
  double measured_c2 = 0;     // residual / residual_scale
  double derived_c2 = 0;      // bound from the chain coefficients
  bool residual_ok = false;
};

/// Throws PreconditionViolated on nonzero V/X parts, s outside
/// [0, (1+delta')/2 log R], or coefficients beyond the Bowen bounds.
RenormalizationResult renormalize_bowen(const CoordinateChart& chart, const Vec& coeffs, double s, double horizon,
                                        double delta_prime, double eps, double c = 1.0);

struct ThresholdScan {
  std::vector<double> horizons;
  std::vector<bool> member;
  double r0 = 0;  // smallest grid R from which every larger grid R passes; 0 if none
};

/// Membership of the renormalized element at s = (1/2) log R for
/// a_ij = b_ij eps R^-i, a_U = b_U eps, over the dyadic grid 2^lo..2^hi.
ThresholdScan renormalization_threshold(const CoordinateChart& chart, const Vec& normalized, double eps,
                                        double delta_prime, int lo = 10, int hi = 30, double c = 1.0);

struct EscapeResult {
  double s = 0;
  double zeta_norm = 0;           // |zeta(s)|, equal to 2 eps at the crossing
  Vec c_t;                        // chart coordinates of C_t
  double max_c = 0;               // max_j |c_j|
  bool max_c_ok = false;          // max_j |c_j| >= eps / n
  double residual = 0;            // d_G(exp(-sX) exp(tU) g exp(-tU) exp(sX), exp(C_t))
  double residual_bound = 0;      // R^{-eta'}
  bool residual_ok = false;
  double conjugated_distance = 0; // d_G(exp(tU) g exp(-tU), e)
  bool distance_precondition = false;  // conjugated distance > 10 eps
  bool bowen_precondition = false;     // g in Bow(R, eps, e)
  int iterations = 0;
};

/// Bisection for |zeta(s)| = 2 eps on [0, 2(L_U+1) eta' log R]. Throws
/// NoCrossing when |zeta| does not cross 2 eps on that interval, and
/// PreconditionViolated on nonzero V/X parts, t outside [0, R^{1+eta'}] or
/// eta' outside (0, 1/(2L^2+2L+1)).
EscapeResult escape_direction(const CoordinateChart& chart, const Vec& coeffs, double t, double horizon,
                              double eta_prime, double eps);

}  // namespace uniflow
