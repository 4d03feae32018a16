#pragma once

// Shared model fixtures: the trivariate benchmark with scaled-uniform
// marginals (q0 = 1/2), one copula family per face, and its distorted
// variant with linear band truncation at a = 1/8. Closed-form CDFs for both
// are spelled out directly so the library's inclusion-exclusion evaluator
// can be checked against an independent arithmetic path.

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <vector>

#include "jex/allocation.hpp"
#include "jex/copula.hpp"
#include "jex/distortion.hpp"
#include "jex/marginal.hpp"
#include "jex/model.hpp"

namespace fixtures {

inline std::vector<jex::Marginal> uniform_half_marginals() {
  return {jex::Marginal::scaled_uniform(0.5, 1.0),
          jex::Marginal::scaled_uniform(0.5, 1.0),
          jex::Marginal::scaled_uniform(0.5, 1.0)};
}

inline std::map<jex::FaceSet, jex::Copula> benchmark_copulas() {
  std::map<jex::FaceSet, jex::Copula> copulas;
  copulas.emplace(jex::FaceSet{1, 2}, jex::Copula::independence(2));
  copulas.emplace(jex::FaceSet{1, 3}, jex::Copula::comonotone(2));
  copulas.emplace(jex::FaceSet{2, 3}, jex::Copula::countermonotone());
  return copulas;
}

/// Canonical benchmark model; feasible for lambda in [1/3, 1/2].
inline jex::JEModel canonical_model(double lambda) {
  Eigen::VectorXd q0 = Eigen::VectorXd::Constant(3, 0.5);
  return jex::build_model(uniform_half_marginals(),
                          jex::trivariate_allocation(q0, q0, lambda),
                          benchmark_copulas());
}

/// Closed-form CDF of the canonical benchmark on [0,1]^3.
inline double canonical_cdf_oracle(double lambda, const Eigen::Vector3d& x) {
  for (int i = 0; i < 3; ++i) {
    if (x[i] < 0.0) return 0.0;
  }
  const Eigen::Vector3d z = (1.0 - x.array()).max(0.0);
  return 1.0 - 0.5 * (z[0] + z[1] + z[2]) +
         lambda / 2.0 *
             (z[0] * z[1] + std::min(z[0], z[2]) +
              std::max(z[1] + z[2] - 1.0, 0.0));
}

/// Distorted benchmark: linear band truncation on [1/8, 1/2] for every
/// coordinate, so each modulus is 3/8; feasible for lambda in [1/6, 1/4].
inline jex::JEModel distorted_model(double lambda) {
  Eigen::VectorXd q0 = Eigen::VectorXd::Constant(3, 0.5);
  Eigen::VectorXd caps = Eigen::VectorXd::Constant(3, 0.375);
  std::map<int, jex::Distortion> distortions;
  for (int i = 1; i <= 3; ++i) {
    distortions.emplace(i, jex::Distortion::linear_truncation(0.125, 0.5));
  }
  return jex::build_model(uniform_half_marginals(),
                          jex::trivariate_allocation(q0, caps, lambda),
                          benchmark_copulas(), std::move(distortions));
}

/// Closed-form CDF of the distorted benchmark on [0,1]^3.
inline double distorted_cdf_oracle(double lambda, const Eigen::Vector3d& x) {
  for (int i = 0; i < 3; ++i) {
    if (x[i] < 0.0) return 0.0;
  }
  const double p = 3.0 / 8.0 * lambda + 1.0 / 8.0 * (1.0 - lambda);
  const Eigen::Vector3d z = (1.0 - x.array()).max(0.0);
  const Eigen::Vector3d g = (1.0 - 4.0 / 3.0 * x.array()).max(0.0);
  return 1.0 - 0.5 * (z[0] + z[1] + z[2]) +
         p * (g[0] * g[1] + std::min(g[0], g[2]) +
              std::max(g[1] + g[2] - 1.0, 0.0));
}

}  // namespace fixtures
