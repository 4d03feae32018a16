#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jex/errors.hpp"
#include "jex/marginal.hpp"
#include "jex/rng.hpp"
#include "jex/stats.hpp"

using jex::Marginal;

namespace {

const Marginal kUniformHalf = Marginal::scaled_uniform(0.5, 1.0);

}  // namespace

TEST_CASE("scaled-uniform survival endpoints") {
  CHECK(kUniformHalf.survival(0.0) == 0.5);
  CHECK(kUniformHalf.survival(1.0) == 0.0);
  CHECK(kUniformHalf.survival(2.0) == 0.0);
  CHECK(kUniformHalf.survival(0.5) == doctest::Approx(0.25));
}

TEST_CASE("point mass at zero is degenerate") {
  const Marginal m = Marginal::point_mass_at_zero();
  CHECK(m.q0() == 0.0);
  CHECK(m.survival(0.0) == 0.0);
  CHECK(m.survival(10.0) == 0.0);
  CHECK(m.inverse_survival(0.5) == 0.0);
  CHECK_THROWS_AS(m.sample_positive_part(0.5), jex::DomainError);
}

TEST_CASE("survival rejects negative arguments") {
  CHECK_THROWS_AS(kUniformHalf.survival(-0.1), jex::DomainError);
  CHECK_THROWS_AS(kUniformHalf.inverse_survival(-0.1), jex::DomainError);
  CHECK_THROWS_AS(kUniformHalf.inverse_survival(1.5), jex::DomainError);
}

TEST_CASE("generalized inverse of the scaled uniform") {
  CHECK(kUniformHalf.inverse_survival(0.25) == doctest::Approx(0.5));
  CHECK(kUniformHalf.inverse_survival(0.5) == 0.0);
  CHECK(kUniformHalf.inverse_survival(0.9) == 0.0);
  CHECK(kUniformHalf.inverse_survival(0.0) == doctest::Approx(1.0));
}

TEST_CASE("generalized inverse of the scaled exponential") {
  const Marginal m = Marginal::scaled_exponential(0.3, 1.0);
  const double p = 0.3 * std::exp(-2.0);
  CHECK(m.inverse_survival(p) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(m.inverse_survival(0.3) == 0.0);
  CHECK(std::isinf(m.inverse_survival(0.0)));
}

TEST_CASE("conditional positive-part sampling by inversion") {
  CHECK(kUniformHalf.sample_positive_part(0.5) == doctest::Approx(0.5));
  CHECK(kUniformHalf.sample_positive_part(1.0) == 0.0);
  CHECK_THROWS_AS(kUniformHalf.sample_positive_part(0.0), jex::DomainError);
  CHECK_THROWS_AS(kUniformHalf.sample_positive_part(1.5), jex::DomainError);
}

TEST_CASE("piecewise-linear two-knot inversion against grid search") {
  const Marginal m = Marginal::piecewise_linear({{0.0, 0.4}, {2.0, 0.0}});
  // u = 0.5 conditions on the positive part: target survival 0.2.
  const double got = m.sample_positive_part(0.5);
  CHECK(got == doctest::Approx(1.0).epsilon(1e-12));

  // Independent oracle: first grid x with survival(x) <= 0.2.
  double oracle = 2.0;
  for (int k = 0; k <= 2000000; ++k) {
    const double x = 2.0 * k / 2000000.0;
    if (0.4 * (1.0 - x / 2.0) <= 0.2) {
      oracle = x;
      break;
    }
  }
  CHECK(std::abs(got - oracle) < 2e-6);
}

TEST_CASE("piecewise-linear flat segments invert to their left endpoint") {
  const Marginal m = Marginal::piecewise_linear(
      {{0.0, 0.8}, {1.0, 0.5}, {2.0, 0.5}, {3.0, 0.0}});
  CHECK(m.survival(1.5) == doctest::Approx(0.5));
  CHECK(m.inverse_survival(0.5) == doctest::Approx(1.0));
  CHECK(m.inverse_survival(0.5 - 1e-13) > 2.0);
}

TEST_CASE("piecewise-linear validation") {
  CHECK_THROWS_AS(Marginal::piecewise_linear({{0.5, 0.4}, {2.0, 0.0}}),
                  jex::DomainError);
  CHECK_THROWS_AS(Marginal::piecewise_linear({{0.0, 0.4}, {2.0, 0.1}}),
                  jex::DomainError);
  CHECK_THROWS_AS(
      Marginal::piecewise_linear({{0.0, 0.4}, {1.0, 0.5}, {2.0, 0.0}}),
      jex::DomainError);
}

TEST_CASE("survival is non-increasing for every family") {
  const std::vector<Marginal> laws = {
      kUniformHalf,
      Marginal::scaled_exponential(0.7, 2.0),
      Marginal::piecewise_linear({{0.0, 0.6}, {0.5, 0.6}, {1.0, 0.2}, {4.0, 0.0}}),
      Marginal::point_mass_at_zero(),
  };
  for (const Marginal& m : laws) {
    double prev = m.survival(0.0);
    CHECK(prev == m.q0());
    for (int k = 1; k <= 200; ++k) {
      const double cur = m.survival(0.03 * k);
      CHECK(cur <= prev + 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("inverse round trip: survival(inverse(p)) <= p on a dense grid") {
  const std::vector<Marginal> laws = {
      kUniformHalf,
      Marginal::scaled_exponential(0.7, 2.0),
      Marginal::piecewise_linear({{0.0, 0.6}, {0.5, 0.6}, {1.0, 0.2}, {4.0, 0.0}}),
  };
  for (const Marginal& m : laws) {
    for (int k = 1; k <= 500; ++k) {
      const double p = m.q0() * k / 500.0;
      const double x = m.inverse_survival(p);
      CHECK(m.survival(x) <= p + 1e-12);
    }
  }
}

TEST_CASE("positive-part sampler matches the conditional survival (DKW)") {
  const std::vector<Marginal> laws = {
      kUniformHalf,
      Marginal::scaled_exponential(0.3, 1.0),
      Marginal::piecewise_linear({{0.0, 0.4}, {1.0, 0.3}, {2.0, 0.0}}),
  };
  const int count = 100000;
  const double band = jex::dkw_epsilon(count, 1e-3);
  jex::Rng rng(20240801);
  for (const Marginal& m : laws) {
    Eigen::VectorXd draws(count);
    for (int k = 0; k < count; ++k) {
      draws[k] = m.sample_positive_part(rng.u01_open());
    }
    const double top = m.inverse_survival(m.q0() * 1e-4);
    const double hi = std::isfinite(top) ? top : 20.0;
    for (int g = 0; g < 50; ++g) {
      const double x = hi * g / 50.0;
      const double expected = m.survival(x) / m.q0();
      const double observed = jex::empirical_survival(draws, x);
      CHECK(std::abs(observed - expected) <= band);
    }
  }
}
