#pragma once

#include <Eigen/Dense>

#include "fidelity/dataset.hpp"

namespace fidelity {

struct LinearFit {
    Eigen::VectorXd coefficients;    // intercept first, length m + 1
    double sse = 0.0;                // sum of squared residuals
    double residual_variance = 0.0;  // sse / (n - m - 1)
    int n = 0;                       // rows used
};

// Least squares on an explicit design matrix (the caller supplies any
// intercept column). Column-pivoted Householder QR; a design whose smallest
// |R| diagonal falls below 1e-10 times the largest is reported as rank
// deficient rather than silently pseudo-solved.
LinearFit ols_fit_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

// Fits y ~ b0 + b1 x1 + ... + bm xm.
LinearFit ols_fit(const ObservationDataset& data);

// Prepends the intercept column of ones.
Eigen::MatrixXd design_matrix(const ObservationDataset& data);

}  // namespace fidelity
