#pragma once

#include <string>
#include <utility>
#include <vector>

#include "jex/marginal.hpp"

namespace jex {

/// A marginal distortion G: [0,1] -> [0,1], non-decreasing, left-continuous,
/// zero on [0, a] and one on [b, 1]. Reshapes the survival scale a face law
/// sees, restricting face support to the band where the marginal survival
/// lies in [a, b].
class Distortion {
 public:
  enum class Family { identity_canonical, linear_truncation, power, tabulated };

  /// G(u) = u / q0 on [0, q0]; the undistorted canonical scale.
  static Distortion identity_canonical(double q0);
  /// G(u) = (u - a) / (b - a) on [a, b].
  static Distortion linear_truncation(double a, double b);
  /// G(u) = ((u - a) / (b - a))^gamma on [a, b], gamma > 0.
  static Distortion power(double a, double b, double gamma);
  /// Piecewise-linear G through (u, value) knots with non-decreasing u and
  /// values from 0 to 1. A repeated u encodes a jump; the function stays
  /// left-continuous, taking the lower value at the jump point.
  static Distortion tabulated(std::vector<std::pair<double, double>> knots);

  Family family() const { return family_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double gamma() const { return gamma_; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  /// G(u); the argument is clamped into [0, 1].
  double distort(double u) const;
  double operator()(double u) const { return distort(u); }

  /// sup{u in [0,1] : G(u) <= v}, the inversion helper for sampling.
  double upper_inverse(double v) const;

  /// True when G jumps at some level strictly below the given survival
  /// value, i.e. inside the range a continuous marginal sweeps through.
  bool has_jump_below(double q0) const;

  std::string family_name() const;

 private:
  Distortion() = default;

  Family family_ = Family::identity_canonical;
  double a_ = 0.0;
  double b_ = 1.0;
  double gamma_ = 1.0;
  std::vector<std::pair<double, double>> knots_;
};

/// The modulus G* = inf (survival difference) / (distorted difference) over
/// pairs with distinct distorted values: the cap on the face mass a distorted
/// coordinate can absorb. Analytic for the closed-form families against the
/// built-in (continuous) marginals, numeric otherwise. Always in [0, q0].
double g_star(const Distortion& g, const Marginal& m);

/// Grid evaluation of the modulus over survival values attained by the
/// marginal, with geometric refinement where the distortion steepens.
/// Exposed so the analytic shortcuts can be cross-checked.
double g_star_numeric(const Distortion& g, const Marginal& m);

/// inf{x >= 0 : G(survival(x)) <= v}; inversion of the distorted survival.
double inverse_distorted_survival(const Distortion& g, const Marginal& m,
                                  double v);

}  // namespace jex
