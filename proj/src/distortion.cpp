#include "jex/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr double kPairTol = 1e-12;

void check_band(double a, double b) {
  if (!(a >= 0.0 && a < b && b <= 1.0)) {
    throw DomainError("distortion band must satisfy 0 <= a < b <= 1");
  }
}

}  // namespace

Distortion Distortion::identity_canonical(double q0) {
  if (!(q0 > 0.0 && q0 <= 1.0)) {
    throw DomainError("identity-canonical distortion needs q0 in (0, 1]");
  }
  Distortion g;
  g.family_ = Family::identity_canonical;
  g.a_ = 0.0;
  g.b_ = q0;
  return g;
}

Distortion Distortion::linear_truncation(double a, double b) {
  check_band(a, b);
  Distortion g;
  g.family_ = Family::linear_truncation;
  g.a_ = a;
  g.b_ = b;
  return g;
}

Distortion Distortion::power(double a, double b, double gamma) {
  check_band(a, b);
  if (!(gamma > 0.0)) throw DomainError("power distortion needs gamma > 0");
  Distortion g;
  g.family_ = Family::power;
  g.a_ = a;
  g.b_ = b;
  g.gamma_ = gamma;
  return g;
}

Distortion Distortion::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw DomainError("tabulated distortion needs knots");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    const auto& [u, v] = knots[k];
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
      throw DomainError("tabulated knots must lie in the unit square");
    }
    if (k > 0) {
      if (u < knots[k - 1].first || v < knots[k - 1].second) {
        throw DomainError("tabulated knots must be non-decreasing");
      }
      if (u == knots[k - 1].first && k > 1 &&
          knots[k - 1].first == knots[k - 2].first) {
        throw DomainError("at most two tabulated knots may share a level");
      }
    }
  }
  if (knots.front().second != 0.0 || knots.back().second != 1.0) {
    throw DomainError("tabulated distortion must run from 0 to 1");
  }
  check_band(knots.front().first, knots.back().first);
  Distortion g;
  g.family_ = Family::tabulated;
  g.a_ = knots.front().first;
  g.b_ = knots.back().first;
  g.knots_ = std::move(knots);
  return g;
}

double Distortion::distort(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  if (u <= a_) return 0.0;
  if (u >= b_) return 1.0;
  switch (family_) {
    case Family::identity_canonical:
    case Family::linear_truncation:
      return (u - a_) / (b_ - a_);
    case Family::power:
      return std::pow((u - a_) / (b_ - a_), gamma_);
    case Family::tabulated: {
      // Left-continuity: at a repeated knot level take the lower value, so
      // scan for the last knot with knot.u < u and interpolate to the next.
      std::size_t k = 0;
      while (k + 1 < knots_.size() && knots_[k + 1].first < u) ++k;
      const auto& [u0, v0] = knots_[k];
      const auto& [u1, v1] = knots_[k + 1];
      if (u1 == u0) return v0;
      const double t = (u - u0) / (u1 - u0);
      return v0 + t * (v1 - v0);
    }
  }
  return 0.0;
}

double Distortion::upper_inverse(double v) const {
  v = std::clamp(v, 0.0, 1.0);
  if (v >= 1.0) return 1.0;
  switch (family_) {
    case Family::identity_canonical:
    case Family::linear_truncation:
      return a_ + v * (b_ - a_);
    case Family::power:
      return a_ + (b_ - a_) * std::pow(v, 1.0 / gamma_);
    case Family::tabulated: {
      // Largest u with G(u) <= v: walk segments from the right.
      for (std::size_t k = knots_.size() - 1; k > 0; --k) {
        const auto& [u0, v0] = knots_[k - 1];
        const auto& [u1, v1] = knots_[k];
        if (v0 > v) continue;  // entire segment above v
        if (u1 == u0) return u0;  // jump: G(u0) = v0 <= v < v1
        if (v1 <= v) return u1;   // entire segment admissible
        return u0 + (v - v0) / (v1 - v0) * (u1 - u0);
      }
      return knots_.front().first;
    }
  }
  return 0.0;
}

bool Distortion::has_jump_below(double q0) const {
  if (family_ != Family::tabulated) return false;
  for (std::size_t k = 1; k < knots_.size(); ++k) {
    if (knots_[k].first == knots_[k - 1].first &&
        knots_[k].second > knots_[k - 1].second &&
        knots_[k].first < q0 - kPairTol) {
      return true;
    }
  }
  return false;
}

std::string Distortion::family_name() const {
  switch (family_) {
    case Family::identity_canonical: return "identity-canonical";
    case Family::linear_truncation: return "linear-truncation";
    case Family::power: return "power";
    case Family::tabulated: return "tabulated";
  }
  return "?";
}

namespace {

void check_pairing(const Distortion& g, const Marginal& m) {
  if (g.b() > m.q0() + kPairTol) {
    throw PairingError("distortion band end b = " + std::to_string(g.b()) +
                       " exceeds the marginal's survival at zero " +
                       std::to_string(m.q0()));
  }
}

}  // namespace

double g_star(const Distortion& g, const Marginal& m) {
  check_pairing(g, m);
  const double q0 = m.q0();
  // Every built-in positive part is continuous, so survival values sweep all
  // of [0, q0]: a jump of G below q0 collapses the modulus to zero, and the
  // closed-form families admit exact values.
  double value = std::numeric_limits<double>::quiet_NaN();
  switch (g.family()) {
    case Distortion::Family::identity_canonical:
      value = q0;
      break;
    case Distortion::Family::linear_truncation:
      value = g.b() - g.a();
      break;
    case Distortion::Family::power:
      if (g.gamma() == 1.0) {
        value = g.b() - g.a();
      } else if (g.gamma() > 1.0) {
        value = (g.b() - g.a()) / g.gamma();
      } else {
        value = 0.0;
      }
      break;
    case Distortion::Family::tabulated:
      value = g.has_jump_below(q0) ? 0.0 : g_star_numeric(g, m);
      break;
  }
  return std::clamp(value, 0.0, q0);
}

double g_star_numeric(const Distortion& g, const Marginal& m) {
  check_pairing(g, m);
  const double q0 = m.q0();
  if (q0 <= 0.0) return 0.0;
  const double a = g.a();
  const double b = std::min(g.b(), q0);

  // Survival levels attained by the marginal, concentrated where G varies.
  std::vector<double> levels;
  levels.reserve(1200);
  for (int k = 0; k <= 200; ++k) {
    levels.push_back(q0 * static_cast<double>(k) / 200.0);
  }
  for (int k = 0; k <= 600; ++k) {
    levels.push_back(a + (b - a) * static_cast<double>(k) / 600.0);
  }
  // Geometric refinement toward both band ends, where the difference ratio
  // of the power-type families attains its infimum.
  for (int k = 1; k <= 100; ++k) {
    const double offset = (b - a) * std::pow(10.0, -0.14 * k);
    levels.push_back(std::min(a + offset, b));
    levels.push_back(std::max(b - offset, a));
  }
  if (g.family() == Distortion::Family::tabulated) {
    for (const auto& [u, v] : g.knots()) {
      if (u <= q0) levels.push_back(u);
    }
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> gu(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) gu[k] = g.distort(levels[k]);

  // Pairs with equal distorted values are disregarded. Adjacent pairs carry
  // the local difference quotient; wide pairs matter across jumps, so both
  // are scanned.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const double dg = gu[j] - gu[i];
      if (dg <= kPairTol) continue;
      best = std::min(best, (levels[j] - levels[i]) / dg);
    }
  }
  if (!std::isfinite(best)) return q0;
  return std::clamp(best, 0.0, q0);
}

double inverse_distorted_survival(const Distortion& g, const Marginal& m,
                                  double v) {
  check_pairing(g, m);
  return m.inverse_survival(std::min(g.upper_inverse(v), 1.0));
}

}  // namespace jex
