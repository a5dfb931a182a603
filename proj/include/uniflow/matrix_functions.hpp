#pragma once

#include <Eigen/Dense>

#include "uniflow/rational.hpp"

namespace uniflow {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

Mat to_real(const RationalMatrix& m);

/// Matrix exponential. Nilpotent arguments use the finite series, which is
/// exact up to rounding; anything else goes through Pade scaling-and-squaring.
Mat expm(const Mat& a);

/// Principal matrix logarithm.
Mat logm(const Mat& g);

/// d_G(g, e) = |log g|_F.
double distance_to_identity(const Mat& g);

/// Right-invariant distance d_G(g, h) = |log(g h^-1)|_F.
double group_distance(const Mat& g, const Mat& h);

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace uniflow
