#include "jex/existence.hpp"

#include <algorithm>
#include <cmath>

#include "jex/errors.hpp"

namespace jex {

namespace {

constexpr double kFeasTol = 1e-12;

double sum_q0(std::span<const Marginal> marginals) {
  double total = 0.0;
  for (const Marginal& m : marginals) total += m.q0();
  return total;
}

ExistenceReport make_report(ExistenceReport::Kind kind, double lhs, double rhs) {
  const double slack = rhs - lhs;
  return ExistenceReport{kind, slack >= -kFeasTol, lhs, rhs, slack};
}

void check_size(std::span<const Marginal> marginals) {
  if (marginals.size() < 2) throw DomainError("need at least two marginals");
}

}  // namespace

std::string ExistenceReport::kind_name() const {
  switch (kind) {
    case Kind::me: return "ME";
    case Kind::je: return "JE";
    case Kind::gje: return "GJE";
  }
  return "?";
}

ExistenceReport check_me(std::span<const Marginal> marginals) {
  check_size(marginals);
  return make_report(ExistenceReport::Kind::me, sum_q0(marginals), 1.0);
}

ExistenceReport check_je(std::span<const Marginal> marginals) {
  check_size(marginals);
  const double n = static_cast<double>(marginals.size());
  return make_report(ExistenceReport::Kind::je, sum_q0(marginals), n - 1.0);
}

ExistenceReport check_gje(std::span<const Marginal> marginals,
                          const Eigen::VectorXd& gstars) {
  check_size(marginals);
  const int n = static_cast<int>(marginals.size());
  if (gstars.size() != n) {
    throw ShapeError("gstar vector length must match the marginal count");
  }
  for (int i = 0; i < n; ++i) {
    if (!(gstars[i] >= 0.0 && gstars[i] <= marginals[i].q0() + kFeasTol)) {
      throw DomainError("gstar must lie in [0, q0] for coordinate " +
                        std::to_string(i + 1));
    }
  }
  const double total = gstars.sum();
  const double budget =
      std::min((n - 2.0) / (n - 1.0) * total, total - gstars.maxCoeff());
  return make_report(ExistenceReport::Kind::gje, sum_q0(marginals) - 1.0,
                     budget);
}

double me_frechet_cdf(std::span<const Marginal> marginals,
                      const Eigen::VectorXd& x) {
  check_size(marginals);
  const ExistenceReport report = check_me(marginals);
  if (!report.feasible) {
    throw ExistenceError("MEcondition fails: sum of survivals at zero is " +
                         std::to_string(report.lhs) + " > 1");
  }
  const int n = static_cast<int>(marginals.size());
  if (x.size() != n) throw ShapeError("point dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] < 0.0) return 0.0;
    total += marginals[i].cdf(x[i]);
  }
  return std::max(total - (n - 1.0), 0.0);
}

}  // namespace jex
