#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>

#include "jex/marginal.hpp"

namespace jex {

/// Outcome of one existence check, carrying the exact sides of the
/// comparison so callers can apply stricter policies than the default
/// slack >= -1e-12.
struct ExistenceReport {
  enum class Kind { me, je, gje };

  Kind kind;
  bool feasible;
  double lhs;
  double rhs;
  double slack;  // rhs - lhs

  std::string kind_name() const;
};

/// Mutual exclusivity: sum of q0 against 1.
ExistenceReport check_me(std::span<const Marginal> marginals);

/// Joint exclusivity: sum of q0 against n - 1.
ExistenceReport check_je(std::span<const Marginal> marginals);

/// Generalized JE: sum of q0 minus 1 against the face-mass budget
/// min{ (n-2)/(n-1) * sum(gstar), sum(gstar) - max(gstar) }.
/// Requires 0 <= gstar_i <= q0_i.
ExistenceReport check_gje(std::span<const Marginal> marginals,
                          const Eigen::VectorXd& gstars);

/// The Frechet lower bound max{ sum F_i(x_i) - (n-1), 0 }, which is the CDF
/// of the mutually exclusive vector whenever check_me passes. Zero for any
/// point with a negative coordinate.
double me_frechet_cdf(std::span<const Marginal> marginals,
                      const Eigen::VectorXd& x);

}  // namespace jex
