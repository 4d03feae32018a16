#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jex/rng.hpp"

namespace jex {

/// An evaluable and sampleable copula. Built-in families are the three
/// extremal/neutral ones plus convex mixtures of them; no consistency
/// across different dimensions is required or enforced.
class Copula {
 public:
  enum class Family { independence, comonotone, countermonotone, mixture };

  static Copula independence(int dimension);
  static Copula comonotone(int dimension);
  static Copula countermonotone();  // dimension 2 only
  static Copula mixture(std::vector<std::pair<double, Copula>> components);

  Family family() const { return family_; }
  int dimension() const { return dimension_; }
  const std::vector<std::pair<double, Copula>>& components() const {
    return components_;
  }

  /// C(u) for u in [0,1]^k. Grounded, normalized, within the Frechet bounds.
  double cdf(std::span<const double> u) const;
  double cdf(const Eigen::VectorXd& u) const;

  /// Draw a vector with uniform margins whose joint CDF is cdf(). All
  /// coordinates are strictly inside (0, 1).
  void sample_into(Rng& rng, std::span<double> out) const;
  Eigen::VectorXd sample(Rng& rng) const;

  std::string family_name() const;

 private:
  Copula() = default;

  Family family_ = Family::independence;
  int dimension_ = 2;
  std::vector<std::pair<double, Copula>> components_;
};

}  // namespace jex
