#pragma once

#include <cstdint>
#include <vector>

#include "uniflow/divergence.hpp"
#include "uniflow/sl2.hpp"

namespace uniflow {

using IntMat2 = Eigen::Matrix<long long, 2, 2>;

/// A point of SL(2,R)/SL(2,Z): rep = g * word with the column lattice of rep
/// Lagrange-reduced and its first column in the half plane x > 0 (or x = 0,
/// y > 0).
struct ModularPoint {
  Mat2 rep = Mat2::Identity();
  IntMat2 word = IntMat2::Identity();
};

ModularPoint reduce(const Mat2& g);
ModularPoint flow(const ModularPoint& x, double t);

/// |log A|_F for A in SL(2,R) from the closed-form principal logarithm;
/// infinity when Tr A <= -2 (no real principal log).
double sl2_log_norm(const Mat2& a);

struct QuotientDistance {
  double distance = 0;
  int window = 0;  // entries of the best gamma are bounded by this
};

/// min over gamma in SL(2,Z) with |entries| <= window of d_G(x gamma, y),
/// widening the window from 1 up to max_window while the minimum exceeds 0.5.
QuotientDistance quotient_distance(const Mat2& x, const Mat2& y, int max_window = 3);

/// Haar-random point of the standard fundamental domain {|Re z| <= 1/2, |z| >= 1}
/// times a uniform rotation, as the matrix n_x a_y k_theta.
Mat2 haar_fundamental_point(std::uint64_t seed, std::uint64_t index);

struct OrbitSegment {
  Mat2 base;
  std::vector<double> times;
  std::vector<ModularPoint> points;
  std::vector<double> height;    // |b2| / |b1| of the reduced column basis
  std::vector<double> distance;  // 2 kak(rep).s = d_H(i, rep.i)
};

/// Throws InvalidArgument unless the times are strictly increasing.
OrbitSegment orbit_segment(const Mat2& base, const std::vector<double>& times);

struct MatchingExperiment {
  Mat2 y;
  double a = 0, b = 0, c = 0;  // x = exp(aV) exp(bX) exp(cU) y
  double horizon = 0;
  double eps = 0;
  std::size_t grid = 0;
  double sup_matched = 0;    // sup_t d(phi_t y, phi_{psi(t)} x)
  double sup_identity = 0;   // same with h(t) = t
  double max_h_prime_dev = 0;  // max |psi' - 1| on the grid
  int window = 0;            // largest gamma window used
  bool matched_ok = false;   // sup_matched <= eps^3
  bool control_fails = false;  // sup_identity > eps^3
  bool h_prime_ok = false;   // max |psi' - 1| < eps
  std::vector<double> times, psi, d_matched, d_identity;
};

/// Throws PerturbationTooLarge unless |a| < eps^5/R, |b| < eps^5, |c| < eps^5.
MatchingExperiment matching_experiment(double horizon, double eps, double a, double b, double c, const Mat2& y,
                                       std::size_t grid = 2048);

struct SplittingRecord {
  double eps = 0;
  double s = 0;         // largest dyadic R with membership; 0 if none
  bool capped = false;  // member at R_max
  int exponent = -1;    // log2 of s
  Vec coeffs;
};

/// Bisection over R = 2^0 .. 2^max_exponent of Kak membership for x = g y.
/// Throws NotInChart when g lies outside the chart.
SplittingRecord splitting_time(const CoordinateChart& chart, const Mat& g, double eps, int max_exponent = 40);
/// SL(2,R) points: g = x y^-1.
SplittingRecord splitting_time(const Mat2& x, const Mat2& y, double eps, int max_exponent = 40);

struct TailReport {
  std::size_t samples = 0;
  std::vector<double> t_grid;
  std::vector<double> tail;    // fraction with distance >= t
  double t0 = 2.0;             // excess threshold for the rate estimate
  std::size_t excess_count = 0;
  double kappa = 0;            // 1 / mean(d - t0) over d >= t0
  double kappa_lo = 0, kappa_hi = 0;  // 95% interval
  double c = 0;                // envelope: max_t tail(t) e^{kappa t}
  bool dominated = false;      // tail(t) <= c e^{-kappa t} with kappa > 0
};

TailReport cusp_tail(std::size_t samples, std::uint64_t seed, double t0 = 2.0);

struct LatticeCount {
  std::vector<double> t_values;
  std::vector<unsigned long long> counts;
  double exponent = 0;  // log-log slope over T >= 2
};

/// Exact count of gamma in SL(2,Z) with Frobenius norm <= T. Throws
/// BudgetExceeded above T = 10^4.
unsigned long long lattice_count(double t);
LatticeCount lattice_count(const std::vector<double>& t_values);

enum class Sl2Direction { V, X, U };

struct DivergenceFit {
  double slope = 0;
  double horizon_used = 0;
  bool shortened = false;
  std::vector<double> times;
  std::vector<double> distances;
};

/// log-log slope of d_G(phi_t exp(delta0 Y) x, phi_t x) on log-spaced times in
/// [t_min, horizon], cut where the distance first exceeds 0.1. Throws
/// WrapDetected if fewer than a decade survives, PreconditionViolated if
/// delta0 > 1e-6.
DivergenceFit divergence_degree(const CoordinateChart& chart, std::size_t coordinate, double horizon,
                                double delta0 = 1e-6, double t_min = 10);
DivergenceFit divergence_degree(const Mat2& x, Sl2Direction direction, double horizon, double delta0 = 1e-6,
                                double t_min = 10);

}  // namespace uniflow
