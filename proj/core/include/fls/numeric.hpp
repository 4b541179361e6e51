#pragma once

#include <complex>

#include <Eigen/Dense>

namespace fls {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
/// A point z of C^n.
using Point = Eigen::VectorXcd;

/// max_i |z_i|
inline double sup_norm(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double sup_norm(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace fls
