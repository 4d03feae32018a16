#include "jex/stats.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "jex/errors.hpp"

namespace jex {

Eigen::MatrixXd pearson(const Eigen::MatrixXd& rows) {
  const Eigen::Index count = rows.rows();
  const Eigen::Index n = rows.cols();
  if (count < 2) throw DomainError("pearson needs at least two rows");

  const Eigen::RowVectorXd mean = rows.colwise().mean();
  const Eigen::MatrixXd centered = rows.rowwise() - mean;
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(count - 1);

  Eigen::VectorXd sd(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(cov(i, i) > 0.0)) {
      throw DomainError("correlation undefined: coordinate " +
                        std::to_string(i + 1) + " has zero variance");
    }
    sd[i] = std::sqrt(cov(i, i));
  }
  Eigen::MatrixXd corr(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      corr(i, j) = i == j ? 1.0 : cov(i, j) / (sd[i] * sd[j]);
    }
  }
  return corr;
}

double cf_product_magnitude(const Eigen::MatrixXd& rows,
                            const Eigen::VectorXd& t) {
  if (rows.cols() != t.size()) throw ShapeError("frequency dimension mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (Eigen::Index row = 0; row < rows.rows(); ++row) {
    std::complex<double> prod(1.0, 0.0);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      const double theta = t[i] * rows(row, i);
      prod *= std::complex<double>(std::cos(theta) - 1.0, std::sin(theta));
    }
    acc += prod;
  }
  return std::abs(acc / static_cast<double>(rows.rows()));
}

double fraction_all_positive(const Eigen::MatrixXd& rows) {
  Eigen::Index hits = 0;
  for (Eigen::Index row = 0; row < rows.rows(); ++row) {
    if ((rows.row(row).array() > 0.0).all()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.rows());
}

double empirical_joint_cdf(const Eigen::MatrixXd& rows,
                           const Eigen::VectorXd& x) {
  if (rows.cols() != x.size()) throw ShapeError("point dimension mismatch");
  Eigen::Index hits = 0;
  for (Eigen::Index row = 0; row < rows.rows(); ++row) {
    if ((rows.row(row).transpose().array() <= x.array()).all()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.rows());
}

double empirical_joint_survival(const Eigen::MatrixXd& rows,
                                const Eigen::VectorXd& x) {
  if (rows.cols() != x.size()) throw ShapeError("point dimension mismatch");
  Eigen::Index hits = 0;
  for (Eigen::Index row = 0; row < rows.rows(); ++row) {
    if ((rows.row(row).transpose().array() > x.array()).all()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(rows.rows());
}

double empirical_survival(const Eigen::VectorXd& column, double x) {
  return static_cast<double>((column.array() > x).count()) /
         static_cast<double>(column.size());
}

double dkw_epsilon(std::size_t count, double alpha) {
  if (count == 0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("dkw_epsilon needs count > 0 and alpha in (0, 1)");
  }
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(count)));
}

}  // namespace jex
