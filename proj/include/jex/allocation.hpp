#pragma once

#include <Eigen/Dense>
#include <vector>

#include "jex/faces.hpp"

namespace jex {

/// Probability masses assigned to every face of dimension 2..n-1, together
/// with the per-coordinate capacities they were built against (q0 for the
/// canonical construction, the distortion moduli for the generalized one).
struct FaceAllocation {
  int n = 0;
  Eigen::VectorXd caps;
  std::vector<FaceSet> faces;  // enumerate_faces(n) order
  Eigen::VectorXd p;           // aligned with faces

  double p_of(const FaceSet& face) const;

  /// sum over faces of (|I| - 1) p_I, the origin-side budget.
  double weighted_mass() const;
  double total_face_mass() const;

  /// Per coordinate i, the load sum_{I containing i} p_I.
  Eigen::VectorXd per_coordinate_load() const;
};

/// Zero allocation over the given capacities.
FaceAllocation zero_allocation(const Eigen::VectorXd& caps);

/// The proven optimum of the face-mass program:
/// min{ (n-2)/(n-1) * sum(caps), sum(caps) - max(caps) }.
double closed_form_optimum(const Eigen::VectorXd& caps);

struct LpResult {
  double value;
  FaceAllocation allocation;
};

/// Maximize sum (|I|-1) p_I subject to p >= 0 and, for every coordinate i,
/// sum_{I containing i} p_I <= caps_i. Solved by a dense simplex; among
/// optima the total face mass is maximized as a secondary objective, with
/// residual ties resolved by the deterministic pivot order. Requires
/// 2 <= n <= 12.
LpResult lp_max_weighted_mass(const Eigen::VectorXd& caps);

/// All vertices of the dual polytope {r >= 0, sum_{i in I} r_i >= |I|-1}
/// by exhaustive basis enumeration. Exact up to linear-solve round-off;
/// practical for n <= 5.
std::vector<Eigen::VectorXd> dual_polytope_vertices(int n);

/// min over dual vertices of caps . r; equals lp_max_weighted_mass's value
/// by strong duality.
double dual_vertex_minimum(const Eigen::VectorXd& caps);

struct AllocationStrategy {
  enum class Kind { max_face_mass, scaled, trivariate_lambda };

  Kind kind = Kind::max_face_mass;
  double t = 1.0;       // scaled: multiple of the LP maximizer
  double lambda = 0.0;  // trivariate interpolation parameter

  static AllocationStrategy max_face_mass() { return {}; }
  static AllocationStrategy scaled(double t) {
    return {Kind::scaled, t, 0.0};
  }
  static AllocationStrategy trivariate_lambda(double lambda) {
    return {Kind::trivariate_lambda, 1.0, lambda};
  }
};

/// Produce an allocation satisfying both constraint families for marginals
/// with survivals-at-zero q0 and face capacities caps. Throws ExistenceError
/// when no allocation exists, DomainError/UsageError on strategy misuse.
FaceAllocation feasible_allocation(const Eigen::VectorXd& q0,
                                   const Eigen::VectorXd& caps,
                                   const AllocationStrategy& strategy);

struct LambdaBounds {
  double lo;
  double hi;
};

/// Feasible interval for the trivariate one-parameter family
/// p_I = lambda * U_I + (1 - lambda) * L_I with
/// U_I = min_{i in I} caps_i and L_I = max{ sum(q0) - caps_j - 1, 0 },
/// j the coordinate outside I. Non-empty within [0, 1] whenever the
/// existence condition holds.
LambdaBounds trivariate_lambda_bounds(const Eigen::VectorXd& q0,
                                      const Eigen::VectorXd& caps);

FaceAllocation trivariate_allocation(const Eigen::VectorXd& q0,
                                     const Eigen::VectorXd& caps,
                                     double lambda);

/// The explicit n = 3 coefficients p_I = max{(q0_a + q0_b - q0_c)/2, 0}
/// that put zero mass on every axis, in face order {1,2},{1,3},{2,3}.
Eigen::Vector3d axes_free_trivariate_coefficients(const Eigen::VectorXd& q0);

/// Assemble the axes-free coefficients into an allocation and validate it;
/// throws ConstraintError naming the violated constraint when the explicit
/// solution is not admissible for these marginals.
FaceAllocation axes_free_trivariate(const Eigen::VectorXd& q0);

/// Check both constraint families exactly as stated; throws ConstraintError
/// naming JE_parameters_1 / G-JE_parameters_1 (per-coordinate capacity) or
/// JE_parameters_2 (origin non-negativity).
void validate_allocation(const FaceAllocation& allocation,
                         const Eigen::VectorXd& q0);

}  // namespace jex
