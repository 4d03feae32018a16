#pragma once

#include <string>
#include <vector>

namespace jex {

/// One marginal law on [0, inf): an atom at zero of mass 1 - q0 plus a
/// positive part described by its survival function. Immutable after
/// construction; all operations are pure.
class Marginal {
 public:
  enum class Family {
    scaled_uniform,      // survival(x) = q0 * (1 - x/scale) on [0, scale]
    scaled_exponential,  // survival(x) = q0 * exp(-rate * x)
    piecewise_linear,    // survival interpolated between knots
    point_mass_at_zero,  // X = 0 almost surely
  };

  struct Knot {
    double x;
    double survival;
  };

  static Marginal scaled_uniform(double q0, double scale);
  static Marginal scaled_exponential(double q0, double rate);
  /// Knots must start at x = 0, be strictly increasing in x, non-increasing
  /// in survival, and end at survival 0. q0 is the first knot's survival.
  static Marginal piecewise_linear(std::vector<Knot> knots);
  static Marginal point_mass_at_zero();

  Family family() const { return family_; }
  /// Survival at zero: P(X > 0).
  double q0() const { return q0_; }
  double scale() const { return scale_; }
  double rate() const { return rate_; }
  const std::vector<Knot>& knots() const { return knots_; }

  /// P(X > x) for x >= 0.
  double survival(double x) const;

  /// P(X <= x); zero for x < 0.
  double cdf(double x) const;

  /// Generalized inverse inf{x >= 0 : survival(x) <= p}. Flat survival
  /// segments map to their left endpoint.
  double inverse_survival(double p) const;

  /// Draw from the law of X conditioned on X > 0 by inversion:
  /// returns inverse_survival(u * q0) for u in (0, 1]. Requires q0 > 0.
  double sample_positive_part(double u) const;

  std::string family_name() const;

 private:
  Marginal() = default;

  Family family_ = Family::point_mass_at_zero;
  double q0_ = 0.0;
  double scale_ = 0.0;
  double rate_ = 0.0;
  std::vector<Knot> knots_;
};

}  // namespace jex
