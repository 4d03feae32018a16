#include "jex/copula.hpp"

#include <algorithm>
#include <cmath>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr double kWeightTol = 1e-9;

void check_dimension(int dimension) {
  if (dimension < 2) throw DomainError("copula dimension must be >= 2");
}

}  // namespace

Copula Copula::independence(int dimension) {
  check_dimension(dimension);
  Copula c;
  c.family_ = Family::independence;
  c.dimension_ = dimension;
  return c;
}

Copula Copula::comonotone(int dimension) {
  check_dimension(dimension);
  Copula c;
  c.family_ = Family::comonotone;
  c.dimension_ = dimension;
  return c;
}

Copula Copula::countermonotone() {
  Copula c;
  c.family_ = Family::countermonotone;
  c.dimension_ = 2;
  return c;
}

Copula Copula::mixture(std::vector<std::pair<double, Copula>> components) {
  if (components.empty()) throw DomainError("mixture needs components");
  double total = 0.0;
  const int dim = components.front().second.dimension();
  for (const auto& [weight, component] : components) {
    if (weight < 0.0) throw DomainError("mixture weights must be >= 0");
    if (component.dimension() != dim) {
      throw ShapeError("mixture components must share a dimension");
    }
    total += weight;
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    throw DomainError("mixture weights must sum to 1");
  }
  Copula c;
  c.family_ = Family::mixture;
  c.dimension_ = dim;
  c.components_ = std::move(components);
  return c;
}

double Copula::cdf(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != dimension_) {
    throw ShapeError("copula argument has wrong dimension");
  }
  for (double v : u) {
    if (std::isnan(v) || v < 0.0 || v > 1.0) {
      throw DomainError("copula argument must lie in [0, 1]");
    }
  }
  switch (family_) {
    case Family::independence: {
      double prod = 1.0;
      for (double v : u) prod *= v;
      return prod;
    }
    case Family::comonotone:
      return *std::min_element(u.begin(), u.end());
    case Family::countermonotone:
      return std::max(u[0] + u[1] - 1.0, 0.0);
    case Family::mixture: {
      double acc = 0.0;
      for (const auto& [weight, component] : components_) {
        acc += weight * component.cdf(u);
      }
      return acc;
    }
  }
  return 0.0;
}

double Copula::cdf(const Eigen::VectorXd& u) const {
  return cdf(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())));
}

void Copula::sample_into(Rng& rng, std::span<double> out) const {
  if (static_cast<int>(out.size()) != dimension_) {
    throw ShapeError("copula sample buffer has wrong dimension");
  }
  switch (family_) {
    case Family::independence:
      for (double& v : out) v = rng.u01_open();
      return;
    case Family::comonotone: {
      const double v = rng.u01_open();
      for (double& o : out) o = v;
      return;
    }
    case Family::countermonotone: {
      const double v = rng.u01_open();
      out[0] = v;
      out[1] = 1.0 - v;
      return;
    }
    case Family::mixture: {
      const double pick = rng.u01();
      double acc = 0.0;
      for (const auto& [weight, component] : components_) {
        acc += weight;
        if (pick < acc) {
          component.sample_into(rng, out);
          return;
        }
      }
      components_.back().second.sample_into(rng, out);
      return;
    }
  }
}

Eigen::VectorXd Copula::sample(Rng& rng) const {
  Eigen::VectorXd out(dimension_);
  sample_into(rng, std::span<double>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

std::string Copula::family_name() const {
  switch (family_) {
    case Family::independence: return "independence";
    case Family::comonotone: return "comonotone";
    case Family::countermonotone: return "countermonotone";
    case Family::mixture: return "convex-mixture";
  }
  return "?";
}

}  // namespace jex
