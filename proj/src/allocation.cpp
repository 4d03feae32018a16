#include "jex/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr double kFeasTol = 1e-12;
constexpr double kLpTol = 1e-10;
constexpr int kMaxLpDimension = 12;

void check_caps(const Eigen::VectorXd& caps) {
  if (caps.size() < 2) throw DomainError("need at least two capacities");
  for (Eigen::Index i = 0; i < caps.size(); ++i) {
    if (!(caps[i] >= 0.0 && caps[i] <= 1.0)) {
      throw DomainError("capacity " + std::to_string(i + 1) +
                        " must lie in [0, 1]");
    }
  }
}

bool caps_equal_q0(const Eigen::VectorXd& caps, const Eigen::VectorXd& q0) {
  return caps.size() == q0.size() && (caps - q0).lpNorm<Eigen::Infinity>() == 0.0;
}

// Dense full-tableau simplex for max c.x s.t. A x <= b, x >= 0 with b >= 0,
// so the slack basis is feasible and no phase 1 is needed. Bland's rule
// keeps the pivot order deterministic and cycle-free.
class SimplexTableau {
 public:
  SimplexTableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
      : rows_(static_cast<int>(A.rows())),
        cols_(static_cast<int>(A.cols()) + rows_),
        T_(rows_, cols_),
        rhs_(b),
        basis_(rows_) {
    T_ << A, Eigen::MatrixXd::Identity(rows_, rows_);
    for (int i = 0; i < rows_; ++i) basis_[i] = static_cast<int>(A.cols()) + i;
  }

  // Optimize the objective c (structural part only; slacks cost zero),
  // allowing only the listed columns to enter. Returns the reduced-cost row
  // so the caller can freeze strictly-negative columns between stages.
  Eigen::VectorXd maximize(const Eigen::VectorXd& c,
                           const std::vector<bool>& allowed) {
    Eigen::VectorXd reduced = Eigen::VectorXd::Zero(cols_);
    reduced.head(c.size()) = c;
    for (int i = 0; i < rows_; ++i) {
      const double cb = basis_[i] < c.size() ? c[basis_[i]] : 0.0;
      if (cb != 0.0) reduced -= cb * T_.row(i);
    }
    for (int iter = 0;; ++iter) {
      if (iter > 100000) throw Error("simplex iteration limit exceeded");
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allowed[j]) continue;
        if (reduced[j] > kLpTol) {
          enter = j;
          break;  // Bland: smallest index
        }
      }
      if (enter < 0) return reduced;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i) {
        if (T_(i, enter) > kLpTol) {
          const double ratio = rhs_[i] / T_(i, enter);
          if (ratio < best_ratio - kLpTol ||
              (ratio < best_ratio + kLpTol &&
               (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) throw Error("simplex: unbounded objective");
      pivot(leave, enter, reduced);
    }
  }

  // Re-solve the basic system against the original data so the returned
  // point does not carry accumulated tableau round-off.
  Eigen::VectorXd solution(const Eigen::MatrixXd& A,
                           const Eigen::VectorXd& b) const {
    const int structural_count = static_cast<int>(A.cols());
    Eigen::MatrixXd basis_matrix(rows_, rows_);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_count) {
        basis_matrix.col(i) = A.col(basis_[i]);
      } else {
        basis_matrix.col(i) = Eigen::VectorXd::Unit(rows_, basis_[i] - structural_count);
      }
    }
    const Eigen::VectorXd z = basis_matrix.partialPivLu().solve(b);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(structural_count);
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_count) x[basis_[i]] = std::max(z[i], 0.0);
    }
    return x;
  }

 private:
  void pivot(int leave, int enter, Eigen::VectorXd& reduced) {
    const double p = T_(leave, enter);
    T_.row(leave) /= p;
    rhs_[leave] /= p;
    for (int i = 0; i < rows_; ++i) {
      if (i == leave) continue;
      const double f = T_(i, enter);
      if (f != 0.0) {
        T_.row(i) -= f * T_.row(leave);
        rhs_[i] -= f * rhs_[leave];
        if (rhs_[i] < 0.0 && rhs_[i] > -kLpTol) rhs_[i] = 0.0;
      }
    }
    const double f = reduced[enter];
    if (f != 0.0) reduced -= f * T_.row(leave);
    basis_[leave] = enter;
  }

  int rows_;
  int cols_;
  Eigen::MatrixXd T_;
  Eigen::VectorXd rhs_;
  std::vector<int> basis_;
};

FaceAllocation make_allocation(const Eigen::VectorXd& caps,
                               Eigen::VectorXd p) {
  FaceAllocation allocation;
  allocation.n = static_cast<int>(caps.size());
  allocation.caps = caps;
  allocation.faces = enumerate_faces(allocation.n);
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    p[k] = std::clamp(p[k], 0.0, 1.0);
  }
  allocation.p = std::move(p);
  return allocation;
}

}  // namespace

double FaceAllocation::p_of(const FaceSet& face) const {
  const auto it = std::lower_bound(faces.begin(), faces.end(), face);
  if (it == faces.end() || *it != face) {
    throw DomainError("face " + face.key() + " is not a face of dimension " +
                      std::to_string(n));
  }
  return p[it - faces.begin()];
}

double FaceAllocation::weighted_mass() const {
  double total = 0.0;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    total += (faces[k].size() - 1.0) * p[static_cast<Eigen::Index>(k)];
  }
  return total;
}

double FaceAllocation::total_face_mass() const { return p.sum(); }

Eigen::VectorXd FaceAllocation::per_coordinate_load() const {
  Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k < faces.size(); ++k) {
    for (int i : faces[k].members()) {
      load[i - 1] += p[static_cast<Eigen::Index>(k)];
    }
  }
  return load;
}

FaceAllocation zero_allocation(const Eigen::VectorXd& caps) {
  check_caps(caps);
  const int n = static_cast<int>(caps.size());
  const auto faces = enumerate_faces(n);
  return make_allocation(
      caps, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(faces.size())));
}

double closed_form_optimum(const Eigen::VectorXd& caps) {
  check_caps(caps);
  const double n = static_cast<double>(caps.size());
  const double total = caps.sum();
  return std::min((n - 2.0) / (n - 1.0) * total, total - caps.maxCoeff());
}

LpResult lp_max_weighted_mass(const Eigen::VectorXd& caps) {
  check_caps(caps);
  const int n = static_cast<int>(caps.size());
  if (n > kMaxLpDimension) {
    throw DomainError("face-mass LP supports at most dimension 12");
  }
  const auto faces = enumerate_faces(n);
  const int m = static_cast<int>(faces.size());
  if (m == 0) {
    return LpResult{0.0, make_allocation(caps, Eigen::VectorXd(0))};
  }

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, m);
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
  for (int k = 0; k < m; ++k) {
    for (int i : faces[k].members()) A(i - 1, k) = 1.0;
    weighted[k] = faces[k].size() - 1.0;
  }

  SimplexTableau tableau(A, caps);
  std::vector<bool> allowed(static_cast<std::size_t>(m + n), true);
  const Eigen::VectorXd reduced = tableau.maximize(weighted, allowed);

  // Secondary stage: maximize total face mass over the optimal face of the
  // first objective. Columns whose reduced cost is strictly negative would
  // leave that face, so they are frozen out.
  for (int j = 0; j < m + n; ++j) {
    if (reduced[j] < -kLpTol) allowed[j] = false;
  }
  tableau.maximize(ones, allowed);

  Eigen::VectorXd p = tableau.solution(A, caps);
  FaceAllocation allocation = make_allocation(caps, std::move(p));
  return LpResult{allocation.weighted_mass(), std::move(allocation)};
}

std::vector<Eigen::VectorXd> dual_polytope_vertices(int n) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (n > 5) {
    throw DomainError("dual vertex enumeration is exact only up to n = 5");
  }
  const auto faces = enumerate_faces(n);
  // Constraint rows g.r >= h: non-negativity then face covers.
  std::vector<Eigen::VectorXd> normals;
  std::vector<double> offsets;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    normals.push_back(e);
    offsets.push_back(0.0);
  }
  for (const FaceSet& face : faces) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (int i : face.members()) g[i - 1] = 1.0;
    normals.push_back(g);
    offsets.push_back(face.size() - 1.0);
  }

  const int total = static_cast<int>(normals.size());
  std::vector<Eigen::VectorXd> vertices;
  const double tol = 1e-9;

  // Iterate over all n-subsets of constraints as candidate active sets.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Eigen::MatrixXd G(n, n);
    Eigen::VectorXd h(n);
    for (int r = 0; r < n; ++r) {
      G.row(r) = normals[idx[r]].transpose();
      h[r] = offsets[idx[r]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
    if (lu.isInvertible()) {
      const Eigen::VectorXd r = lu.solve(h);
      bool feasible = true;
      for (int c = 0; c < total && feasible; ++c) {
        if (normals[c].dot(r) < offsets[c] - tol) feasible = false;
      }
      if (feasible) {
        bool seen = false;
        for (const Eigen::VectorXd& v : vertices) {
          if ((v - r).lpNorm<Eigen::Infinity>() < tol) {
            seen = true;
            break;
          }
        }
        if (!seen) vertices.push_back(r);
      }
    }
    // next combination
    int k = n - 1;
    while (k >= 0 && idx[k] == total - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return vertices;
}

double dual_vertex_minimum(const Eigen::VectorXd& caps) {
  check_caps(caps);
  const auto vertices = dual_polytope_vertices(static_cast<int>(caps.size()));
  double best = std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& v : vertices) {
    best = std::min(best, caps.dot(v));
  }
  return best;
}

FaceAllocation feasible_allocation(const Eigen::VectorXd& q0,
                                   const Eigen::VectorXd& caps,
                                   const AllocationStrategy& strategy) {
  check_caps(q0);
  check_caps(caps);
  if (q0.size() != caps.size()) {
    throw ShapeError("q0 and capacity vectors must have equal length");
  }
  const bool canonical = caps_equal_q0(caps, q0);
  const double need = q0.sum() - 1.0;
  const double budget = closed_form_optimum(caps);
  if (need > budget + kFeasTol) {
    throw ExistenceError(
        std::string(canonical ? "JECondition" : "G-JECondition") +
        " fails: required origin budget " + std::to_string(need) +
        " exceeds attainable face mass " + std::to_string(budget));
  }

  FaceAllocation allocation;
  switch (strategy.kind) {
    case AllocationStrategy::Kind::max_face_mass:
      allocation = lp_max_weighted_mass(caps).allocation;
      break;
    case AllocationStrategy::Kind::scaled: {
      LpResult lp = lp_max_weighted_mass(caps);
      const double t_min =
          lp.value > 0.0 ? std::max(need, 0.0) / lp.value : 0.0;
      if (strategy.t < t_min - kFeasTol) {
        throw DomainError("scaled strategy requires t in [" +
                          std::to_string(t_min) + ", 1], got " +
                          std::to_string(strategy.t) +
                          "; below t_min the origin mass turns negative "
                          "(JE_parameters_2)");
      }
      if (strategy.t > 1.0 + kFeasTol) {
        throw DomainError("scaled strategy requires t in [" +
                          std::to_string(t_min) + ", 1], got " +
                          std::to_string(strategy.t));
      }
      allocation = std::move(lp.allocation);
      allocation.p *= std::clamp(strategy.t, 0.0, 1.0);
      break;
    }
    case AllocationStrategy::Kind::trivariate_lambda:
      if (q0.size() != 3) {
        throw UsageError("trivariate-lambda strategy requires dimension 3");
      }
      allocation = trivariate_allocation(q0, caps, strategy.lambda);
      break;
  }
  validate_allocation(allocation, q0);
  return allocation;
}

namespace {

struct TrivariateEnvelope {
  Eigen::Vector3d upper;  // U_I = min_{i in I} caps_i
  Eigen::Vector3d lower;  // L_I = max{ sum(q0) - caps_j - 1, 0 }, j outside I
};

TrivariateEnvelope trivariate_envelope(const Eigen::VectorXd& q0,
                                       const Eigen::VectorXd& caps) {
  const double total_q0 = q0.sum();
  TrivariateEnvelope env;
  const int outside[3] = {2, 1, 0};  // faces {1,2},{1,3},{2,3}
  const int a[3] = {0, 0, 1};
  const int b[3] = {1, 2, 2};
  for (int k = 0; k < 3; ++k) {
    env.upper[k] = std::min(caps[a[k]], caps[b[k]]);
    env.lower[k] = std::max(total_q0 - caps[outside[k]] - 1.0, 0.0);
  }
  return env;
}

void check_trivariate(const Eigen::VectorXd& q0, const Eigen::VectorXd& caps) {
  if (q0.size() != 3 || caps.size() != 3) {
    throw UsageError("trivariate operations require dimension 3");
  }
  check_caps(q0);
  check_caps(caps);
  const double need = q0.sum() - 1.0;
  const double budget = closed_form_optimum(caps);
  if (need > budget + kFeasTol) {
    const bool canonical = caps_equal_q0(caps, q0);
    throw ExistenceError(
        std::string(canonical ? "JECondition" : "G-JECondition") +
        " fails for the trivariate family");
  }
}

}  // namespace

LambdaBounds trivariate_lambda_bounds(const Eigen::VectorXd& q0,
                                      const Eigen::VectorXd& caps) {
  check_trivariate(q0, caps);
  const TrivariateEnvelope env = trivariate_envelope(q0, caps);
  const Eigen::Vector3d gap = env.upper - env.lower;

  const double total_gap = gap.sum();
  const double need = q0.sum() - 1.0 - env.lower.sum();
  double lo = 0.0;
  if (total_gap > kFeasTol) {
    lo = std::max(need / total_gap, 0.0);
  } else if (need > kFeasTol) {
    throw ConstraintError("JE_parameters_2",
                          "fixed trivariate coefficients leave origin mass "
                          "negative");
  } else {
    // All coefficients are pinned at U_I = L_I; lambda is immaterial.
    return LambdaBounds{0.0, 1.0};
  }

  double hi = 1.0;
  for (int i = 0; i < 3; ++i) {
    double load_gap = 0.0;
    double slack = caps[i];
    for (int k = 0; k < 3; ++k) {
      const bool in_face = (i == 0 && k <= 1) || (i == 1 && k != 1) ||
                           (i == 2 && k >= 1);
      if (in_face) {
        load_gap += gap[k];
        slack -= env.lower[k];
      }
    }
    if (load_gap > kFeasTol) {
      hi = std::min(hi, slack / load_gap);
    } else if (slack < -kFeasTol) {
      throw ConstraintError("G-JE_parameters_1",
                            "fixed trivariate coefficients exceed the "
                            "capacity of coordinate " + std::to_string(i + 1));
    }
  }
  hi = std::min(hi, 1.0);
  if (lo > hi + kFeasTol) {
    throw ExistenceError("trivariate lambda interval is empty");
  }
  return LambdaBounds{lo, std::min(hi, 1.0)};
}

FaceAllocation trivariate_allocation(const Eigen::VectorXd& q0,
                                     const Eigen::VectorXd& caps,
                                     double lambda) {
  const LambdaBounds bounds = trivariate_lambda_bounds(q0, caps);
  if (!(lambda >= bounds.lo - kFeasTol && lambda <= bounds.hi + kFeasTol)) {
    const bool canonical = caps_equal_q0(caps, q0);
    throw DomainError(
        std::string(canonical ? "JE_trivariate_lambda" : "G-JE_trivariate_lambda") +
        ": lambda " + std::to_string(lambda) + " outside [" +
        std::to_string(bounds.lo) + ", " + std::to_string(bounds.hi) + "]");
  }
  const TrivariateEnvelope env = trivariate_envelope(q0, caps);
  Eigen::VectorXd p(3);
  for (int k = 0; k < 3; ++k) {
    p[k] = lambda * env.upper[k] + (1.0 - lambda) * env.lower[k];
  }
  FaceAllocation allocation = make_allocation(caps, std::move(p));
  validate_allocation(allocation, q0);
  return allocation;
}

Eigen::Vector3d axes_free_trivariate_coefficients(const Eigen::VectorXd& q0) {
  if (q0.size() != 3) {
    throw UsageError("axes-free coefficients require dimension 3");
  }
  check_caps(q0);
  Eigen::Vector3d p;
  p[0] = std::max((q0[0] + q0[1] - q0[2]) / 2.0, 0.0);  // {1,2}
  p[1] = std::max((q0[0] + q0[2] - q0[1]) / 2.0, 0.0);  // {1,3}
  p[2] = std::max((q0[1] + q0[2] - q0[0]) / 2.0, 0.0);  // {2,3}
  return p;
}

FaceAllocation axes_free_trivariate(const Eigen::VectorXd& q0) {
  const Eigen::Vector3d p = axes_free_trivariate_coefficients(q0);
  FaceAllocation allocation = make_allocation(q0, p);
  validate_allocation(allocation, q0);
  return allocation;
}

void validate_allocation(const FaceAllocation& allocation,
                         const Eigen::VectorXd& q0) {
  if (allocation.n != q0.size()) {
    throw ShapeError("allocation dimension does not match q0");
  }
  const bool canonical = caps_equal_q0(allocation.caps, q0);
  const char* cap_tag = canonical ? "JE_parameters_1" : "G-JE_parameters_1";
  const Eigen::VectorXd load = allocation.per_coordinate_load();
  for (int i = 0; i < allocation.n; ++i) {
    if (load[i] > allocation.caps[i] + kFeasTol) {
      throw ConstraintError(
          cap_tag, "coordinate " + std::to_string(i + 1) + " carries load " +
                       std::to_string(load[i]) + " above its capacity " +
                       std::to_string(allocation.caps[i]));
    }
  }
  const double need = q0.sum() - 1.0;
  if (allocation.weighted_mass() < need - kFeasTol) {
    throw ConstraintError(
        "JE_parameters_2",
        "weighted face mass " + std::to_string(allocation.weighted_mass()) +
            " cannot cover " + std::to_string(need) +
            ", leaving the origin with negative mass");
  }
  for (Eigen::Index k = 0; k < allocation.p.size(); ++k) {
    if (!(allocation.p[k] >= 0.0 && allocation.p[k] <= 1.0)) {
      throw ConstraintError(cap_tag, "face mass out of [0, 1] at face " +
                                         allocation.faces[k].key());
    }
  }
}

}  // namespace jex
