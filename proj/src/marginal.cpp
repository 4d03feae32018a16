#include "jex/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr double kProbTol = 1e-12;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

Marginal Marginal::scaled_uniform(double q0, double scale) {
  check_probability(q0, "q0");
  if (!(scale > 0.0)) throw DomainError("scaled-uniform scale must be > 0");
  Marginal m;
  m.family_ = Family::scaled_uniform;
  m.q0_ = q0;
  m.scale_ = scale;
  return m;
}

Marginal Marginal::scaled_exponential(double q0, double rate) {
  check_probability(q0, "q0");
  if (!(rate > 0.0)) throw DomainError("scaled-exponential rate must be > 0");
  Marginal m;
  m.family_ = Family::scaled_exponential;
  m.q0_ = q0;
  m.rate_ = rate;
  return m;
}

Marginal Marginal::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw DomainError("piecewise-linear marginal needs at least two knots");
  }
  if (knots.front().x != 0.0) {
    throw DomainError("piecewise-linear knots must start at x = 0");
  }
  if (std::abs(knots.back().survival) > kProbTol) {
    throw DomainError("piecewise-linear knots must end at survival 0");
  }
  for (std::size_t k = 0; k < knots.size(); ++k) {
    check_probability(knots[k].survival, "knot survival");
    if (k > 0) {
      if (!(knots[k].x > knots[k - 1].x)) {
        throw DomainError("piecewise-linear knots must be strictly increasing in x");
      }
      if (knots[k].survival > knots[k - 1].survival) {
        throw DomainError("piecewise-linear knot survivals must be non-increasing");
      }
    }
  }
  Marginal m;
  m.family_ = Family::piecewise_linear;
  m.q0_ = knots.front().survival;
  m.knots_ = std::move(knots);
  m.knots_.back().survival = 0.0;
  return m;
}

Marginal Marginal::point_mass_at_zero() {
  Marginal m;
  m.family_ = Family::point_mass_at_zero;
  m.q0_ = 0.0;
  return m;
}

double Marginal::survival(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError("survival argument must be >= 0");
  }
  switch (family_) {
    case Family::scaled_uniform:
      return x >= scale_ ? 0.0 : q0_ * (1.0 - x / scale_);
    case Family::scaled_exponential:
      return q0_ * std::exp(-rate_ * x);
    case Family::piecewise_linear: {
      if (x >= knots_.back().x) return 0.0;
      // First knot strictly beyond x; interpolate inside [k-1, k].
      auto it = std::upper_bound(
          knots_.begin(), knots_.end(), x,
          [](double value, const Knot& k) { return value < k.x; });
      if (it == knots_.begin()) return q0_;
      const Knot& hi = *it;
      const Knot& lo = *(it - 1);
      const double t = (x - lo.x) / (hi.x - lo.x);
      return lo.survival + t * (hi.survival - lo.survival);
    }
    case Family::point_mass_at_zero:
      return 0.0;
  }
  return 0.0;
}

double Marginal::cdf(double x) const {
  if (x < 0.0) return 0.0;
  return 1.0 - survival(x);
}

double Marginal::inverse_survival(double p) const {
  if (std::isnan(p) || p < 0.0 || p > 1.0) {
    throw DomainError("inverse_survival argument must lie in [0, 1]");
  }
  if (p >= q0_) return 0.0;
  switch (family_) {
    case Family::scaled_uniform:
      if (p <= 0.0) return scale_;
      return scale_ * (1.0 - p / q0_);
    case Family::scaled_exponential:
      if (p <= 0.0) return std::numeric_limits<double>::infinity();
      return (std::log(q0_) - std::log(p)) / rate_;
    case Family::piecewise_linear: {
      // First knot with survival <= p; the crossing lies in the segment
      // ending there. A flat segment at level p starts at that knot, so the
      // interpolation lands on its left endpoint.
      for (std::size_t k = 1; k < knots_.size(); ++k) {
        if (knots_[k].survival <= p) {
          const Knot& lo = knots_[k - 1];
          const Knot& hi = knots_[k];
          const double t = (lo.survival - p) / (lo.survival - hi.survival);
          return lo.x + t * (hi.x - lo.x);
        }
      }
      return knots_.back().x;
    }
    case Family::point_mass_at_zero:
      return 0.0;
  }
  return 0.0;
}

double Marginal::sample_positive_part(double u) const {
  if (q0_ <= 0.0) {
    throw DomainError(
        "sample_positive_part: marginal has no positive part (q0 = 0)");
  }
  if (!(u > 0.0 && u <= 1.0)) {
    throw DomainError("sample_positive_part variate must lie in (0, 1]");
  }
  return inverse_survival(u * q0_);
}

std::string Marginal::family_name() const {
  switch (family_) {
    case Family::scaled_uniform: return "scaled-uniform";
    case Family::scaled_exponential: return "scaled-exponential";
    case Family::piecewise_linear: return "piecewise-linear";
    case Family::point_mass_at_zero: return "point-mass-at-zero";
  }
  return "?";
}

}  // namespace jex
