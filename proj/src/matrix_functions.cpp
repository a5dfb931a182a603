#include "uniflow/matrix_functions.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace uniflow {

Mat to_real(const RationalMatrix& m) {
  Mat out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).get_d();
  return out;
}

Mat expm(const Mat& a) {
  const Eigen::Index n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Mat::Identity(n, n);
  // A^n = 0 for nilpotent A; test the powers relative to |A|^k.
  Mat term = Mat::Identity(n, n);
  Mat sum = term;
  Mat power = Mat::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    power = power * a;
    term = term * a / static_cast<double>(k);
    if (power.cwiseAbs().maxCoeff() <= 1e-14 * std::pow(scale, static_cast<double>(k)) * std::pow(n, k)) return sum;
    sum += term;
  }
  return a.exp();
}

Mat logm(const Mat& g) { return g.log(); }

double distance_to_identity(const Mat& g) { return logm(g).norm(); }

double group_distance(const Mat& g, const Mat& h) { return distance_to_identity(g * h.inverse()); }

}  // namespace uniflow
