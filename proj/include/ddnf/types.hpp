#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ddnf {

using Complex = std::complex<double>;

using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatD = Eigen::MatrixXd;
using Index = Eigen::Index;

// Two complex numbers agree up to absolute tolerance.
inline bool approxEq(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace ddnf
