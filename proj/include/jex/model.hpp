#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jex/allocation.hpp"
#include "jex/copula.hpp"
#include "jex/distortion.hpp"
#include "jex/faces.hpp"
#include "jex/marginal.hpp"
#include "jex/rng.hpp"

namespace jex {

/// Where one sampled row lives: on a face (two or more positive
/// coordinates), on an axis (exactly one), or at the origin.
struct Region {
  enum class Kind { face, axis, origin };

  Kind kind = Kind::origin;
  std::uint32_t mask = 0;  // positive-coordinate bitmask; 0 at the origin

  static Region face(const FaceSet& f) { return {Kind::face, f.mask()}; }
  static Region axis(int i) { return {Kind::axis, 1u << (i - 1)}; }
  static Region origin() { return {Kind::origin, 0}; }

  /// "face:1,2", "axis:3", or "origin"; the CSV region column format.
  std::string label() const;
  static Region parse_label(const std::string& label);

  friend bool operator==(const Region& a, const Region& b) {
    return a.kind == b.kind && a.mask == b.mask;
  }
};

/// A batch of sampled rows. Coordinates outside a row's active region are
/// bit-exact zeros.
struct SampleBatch {
  int n = 0;
  Eigen::MatrixXd rows;         // count x n
  std::vector<Region> regions;  // one per row
};

/// A validated jointly exclusive model: marginals, a feasible face
/// allocation, one copula per positive-mass face and optional per-coordinate
/// distortions. Immutable once built; sampling uses caller-owned streams.
class JEModel {
 public:
  int dimension() const { return n_; }
  const std::vector<Marginal>& marginals() const { return marginals_; }
  const FaceAllocation& allocation() const { return allocation_; }
  const std::vector<FaceSet>& faces() const { return allocation_.faces; }
  const std::map<FaceSet, Copula>& copulas() const { return copulas_; }
  const std::vector<std::optional<Distortion>>& distortions() const {
    return distortions_;
  }
  bool generalized() const { return generalized_; }

  const Eigen::VectorXd& axis_mass() const { return axis_mass_; }
  double origin_mass() const { return origin_mass_; }

  /// The copula argument scale at coordinate i (1-based): the conditional
  /// survival ratio for the canonical model, the distorted survival for the
  /// generalized one.
  double face_scale(int i, double x) const;

  /// Region probabilities in sampling order: faces, axes, origin.
  std::vector<std::pair<Region, double>> region_masses() const;

  /// Joint CDF from the inclusion-exclusion form over faces; zero off the
  /// non-negative orthant.
  double cdf(const Eigen::VectorXd& x) const;

  SampleBatch sample(Rng& rng, int count) const;

 private:
  friend JEModel build_model(std::vector<Marginal> marginals,
                             FaceAllocation allocation,
                             std::map<FaceSet, Copula> copulas,
                             std::map<int, Distortion> distortions);

  JEModel() = default;

  double axis_coordinate(int i, double u) const;

  int n_ = 0;
  bool generalized_ = false;
  std::vector<Marginal> marginals_;
  FaceAllocation allocation_;
  std::map<FaceSet, Copula> copulas_;
  std::vector<std::optional<Distortion>> distortions_;  // per coordinate
  Eigen::VectorXd axis_mass_;
  Eigen::VectorXd face_load_;  // per coordinate sum of face masses
  double origin_mass_ = 0.0;
};

/// Assemble and validate a model. Throws ConstraintError naming the violated
/// constraint when the allocation is inadmissible, ShapeError on dimension
/// mismatches, ExistenceError when no structure exists for the marginals.
JEModel build_model(std::vector<Marginal> marginals, FaceAllocation allocation,
                    std::map<FaceSet, Copula> copulas,
                    std::map<int, Distortion> distortions = {});

/// The mutually exclusive special case: every face mass zero. Requires the
/// ME existence condition.
JEModel me_model(std::vector<Marginal> marginals);

/// Monte Carlo estimate of P(all coordinates > 0); exactly zero for every
/// batch drawn from a JE model.
double survival_all_positive(const JEModel& model, Rng& rng, int count);

/// Monte Carlo Pearson correlation matrix. Throws DomainError when a
/// coordinate has zero variance.
Eigen::MatrixXd pearson_matrix(const JEModel& model, Rng& rng, int count);

/// Monte Carlo |E prod_i (exp(i t_i X_i) - 1)|; zero for a JE model because
/// every row has a vanishing factor.
double cf_product_identity(const JEModel& model, const Eigen::VectorXd& t,
                           Rng& rng, int count);

/// Control coupling with the same marginals but independent coordinates.
Eigen::MatrixXd sample_independent(std::span<const Marginal> marginals,
                                   Rng& rng, int count);

}  // namespace jex
