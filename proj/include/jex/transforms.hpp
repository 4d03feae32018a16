#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "jex/errors.hpp"

namespace jex {

/// Tolerance for membership of user-supplied points in the two support
/// sets; internally generated batches satisfy the conditions exactly.
inline constexpr double kMembershipTol = 1e-9;

/// Center a point of the JE support (min coordinate zero) onto the
/// zero-sum hyperplane: y_i = x_i - mean(x).
inline Eigen::VectorXd je_to_jm(const Eigen::VectorXd& x) {
  if (x.size() == 0) throw ShapeError("empty point");
  if (std::abs(x.minCoeff()) > kMembershipTol) {
    throw DomainError("point is not in the JE support: min coordinate " +
                      std::to_string(x.minCoeff()) + " is not zero");
  }
  return x.array() - x.mean();
}

/// Inverse map: shift a zero-sum point so its minimum lands at zero.
inline Eigen::VectorXd jm_to_je(const Eigen::VectorXd& y) {
  if (y.size() == 0) throw ShapeError("empty point");
  if (std::abs(y.sum()) > kMembershipTol) {
    throw DomainError("point is not in the zero-sum support: coordinates sum to " +
                      std::to_string(y.sum()));
  }
  return y.array() - y.minCoeff();
}

/// Coordinate-wise negation; maps below-type samples to above-type ones.
inline Eigen::VectorXd reflect(const Eigen::VectorXd& x) { return -x; }

inline Eigen::VectorXd translate(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& shift) {
  if (x.size() != shift.size()) {
    throw ShapeError("translation shift dimension mismatch");
  }
  return x + shift;
}

/// Row-wise application to a batch.
template <typename Fn>
Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& rows, Fn&& fn) {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    out.row(r) = fn(Eigen::VectorXd(rows.row(r))).transpose();
  }
  return out;
}

}  // namespace jex
