#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "jex/errors.hpp"
#include "jex/existence.hpp"
#include "jex/marginal.hpp"
#include "jex/rng.hpp"

using jex::Marginal;

namespace {

std::vector<Marginal> uniforms(std::initializer_list<double> q0s) {
  std::vector<Marginal> out;
  for (double q : q0s) {
    out.push_back(q > 0.0 ? Marginal::scaled_uniform(q, 1.0)
                          : Marginal::point_mass_at_zero());
  }
  return out;
}

}  // namespace

TEST_CASE("ME check") {
  auto report = jex::check_me(uniforms({0.5, 0.5, 0.5}));
  CHECK_FALSE(report.feasible);
  CHECK(report.lhs == 1.5);
  CHECK(report.rhs == 1.0);

  report = jex::check_me(uniforms({0.3, 0.3, 0.3}));
  CHECK(report.feasible);
  CHECK(report.slack == doctest::Approx(0.1).epsilon(1e-12));

  report = jex::check_me(uniforms({1.0, 0.0}));
  CHECK(report.feasible);
  CHECK(report.slack == 0.0);
}

TEST_CASE("JE check") {
  auto report = jex::check_je(uniforms({0.5, 0.5, 0.5}));
  CHECK(report.feasible);
  CHECK(report.lhs == 1.5);
  CHECK(report.rhs == 2.0);

  report = jex::check_je(uniforms({1.0, 1.0, 1.0}));
  CHECK_FALSE(report.feasible);
  CHECK(report.lhs == 3.0);

  report = jex::check_je(uniforms({1.0, 1.0, 0.0}));
  CHECK(report.feasible);
  CHECK(report.slack == 0.0);
}

TEST_CASE("G-JE check goldens") {
  const auto marginals = uniforms({0.5, 0.5, 0.5});
  Eigen::VectorXd gstar(3);
  gstar << 0.375, 0.375, 0.375;
  auto report = jex::check_gje(marginals, gstar);
  CHECK(report.feasible);
  CHECK(report.lhs == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(report.rhs == doctest::Approx(9.0 / 16.0).epsilon(1e-15));

  // Direct substitution: lhs 1.7, rhs min{0.15, 0.2}.
  Eigen::VectorXd small(3);
  small << 0.1, 0.1, 0.1;
  report = jex::check_gje(uniforms({0.9, 0.9, 0.9}), small);
  CHECK_FALSE(report.feasible);
  CHECK(report.lhs == doctest::Approx(1.7).epsilon(1e-15));
  CHECK(report.rhs == doctest::Approx(0.15).epsilon(1e-15));

  Eigen::VectorXd bad(3);
  bad << 0.6, 0.1, 0.1;
  CHECK_THROWS_AS(jex::check_gje(uniforms({0.5, 0.5, 0.5}), bad),
                  jex::DomainError);
}

TEST_CASE("gstar = q0 reduces G-JE feasibility to JE feasibility") {
  jex::Rng rng(31415);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.u01() * 4);
    std::vector<Marginal> marginals;
    Eigen::VectorXd q0(n);
    for (int i = 0; i < n; ++i) {
      q0[i] = rng.u01();
      marginals.push_back(Marginal::scaled_uniform(std::max(q0[i], 1e-9), 1.0));
      q0[i] = marginals.back().q0();
    }
    const bool je = jex::check_je(marginals).feasible;
    const bool gje = jex::check_gje(marginals, q0).feasible;
    CHECK(je == gje);
  }
}

TEST_CASE("ME implies JE") {
  jex::Rng rng(2718);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.u01() * 4);
    std::vector<Marginal> marginals;
    for (int i = 0; i < n; ++i) {
      marginals.push_back(Marginal::scaled_uniform(std::max(rng.u01(), 1e-9), 1.0));
    }
    if (jex::check_me(marginals).feasible) {
      CHECK(jex::check_je(marginals).feasible);
    }
  }
}

TEST_CASE("Frechet lower bound CDF") {
  const auto pair = uniforms({0.3, 0.3});
  Eigen::VectorXd x(2);
  x << 0.0, 0.0;
  CHECK(jex::me_frechet_cdf(pair, x) == doctest::Approx(0.4).epsilon(1e-15));

  Eigen::VectorXd inf2(2);
  inf2 << std::numeric_limits<double>::infinity(),
      std::numeric_limits<double>::infinity();
  CHECK(jex::me_frechet_cdf(pair, inf2) == 1.0);

  const auto triple = uniforms({0.3, 0.3, 0.3});
  Eigen::VectorXd y(3);
  y << 0.5, 0.0, 0.0;
  CHECK(jex::me_frechet_cdf(triple, y) == doctest::Approx(0.25).epsilon(1e-15));

  y << -0.1, 0.5, 0.5;
  CHECK(jex::me_frechet_cdf(triple, y) == 0.0);

  CHECK_THROWS_AS(jex::me_frechet_cdf(uniforms({0.5, 0.5, 0.5}), y),
                  jex::ExistenceError);
}

TEST_CASE("Frechet lower bound is monotone and within [0,1]") {
  const auto triple = uniforms({0.3, 0.35, 0.3});
  double prev = -1.0;
  for (int k = 0; k <= 40; ++k) {
    Eigen::VectorXd x(3);
    x << 0.025 * k, 0.02 * k, 0.03 * k;
    const double v = jex::me_frechet_cdf(triple, x);
    CHECK(v >= prev - 1e-15);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev = v;
  }
}
