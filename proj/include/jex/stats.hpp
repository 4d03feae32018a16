#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace jex {

/// Sample Pearson correlation matrix of the rows. Throws DomainError when a
/// column has zero variance, naming the coordinate.
Eigen::MatrixXd pearson(const Eigen::MatrixXd& rows);

/// |mean over rows of prod_i (exp(i t_i x_i) - 1)|.
double cf_product_magnitude(const Eigen::MatrixXd& rows,
                            const Eigen::VectorXd& t);

/// Fraction of rows with every coordinate strictly positive.
double fraction_all_positive(const Eigen::MatrixXd& rows);

/// Fraction of rows componentwise <= x.
double empirical_joint_cdf(const Eigen::MatrixXd& rows,
                           const Eigen::VectorXd& x);

/// Fraction of rows componentwise > x.
double empirical_joint_survival(const Eigen::MatrixXd& rows,
                                const Eigen::VectorXd& x);

/// Fraction of entries of the column strictly above x.
double empirical_survival(const Eigen::VectorXd& column, double x);

/// Dvoretzky-Kiefer-Wolfowitz band half-width sqrt(log(2/alpha) / (2 n)):
/// the sup distance between empirical and true distribution exceeds it with
/// probability at most alpha.
double dkw_epsilon(std::size_t count, double alpha);

}  // namespace jex
