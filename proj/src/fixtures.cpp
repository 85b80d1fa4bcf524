#include "fidelity/fixtures.hpp"

namespace fidelity::fixtures {

PriorSpec paper_priors() {
    PriorSpec spec;
    spec.coefficient_names = default_coefficient_names(8);
    spec.coefficient_priors = {
        {108.0, 2.12}, {-0.0004, 0.15}, {-0.010, 0.17}, {-0.07, 0.12}, {-0.0125, 0.11},
        {-0.025, 0.15}, {-0.127, 0.25}, {-0.015, 0.48}, {-0.006, 0.15},
    };
    spec.variance_prior = {0.001, 3.99};
    spec.provenance.n_boot = 1000;
    spec.provenance.sample_size = 500;
    return spec;
}

PosteriorSummary paper_posterior(VarianceConvention convention) {
    PosteriorSummary summary;
    summary.names = default_coefficient_names(8);
    summary.names.push_back("sigma2");
    const double variance = convention == VarianceConvention::variance ? 3.34 : 3.34 * 3.34;
    summary.means.resize(10);
    summary.means << 104.0, -0.0222, -0.0221, -0.0164, -0.0229, -0.0046, -0.00131, -0.0053,
        -0.0086, variance;
    summary.sds = Eigen::VectorXd::Zero(10);  // spreads are not part of the reference fixture
    summary.predictive_variance = variance;
    return summary;
}

Eigen::VectorXd backsolved_baseline() {
    const PosteriorSummary posterior = paper_posterior();
    const double y_hat_at_k = 99.4176;  // demand 100 minus sqrt(3.34) * Phi^-1(0.625)
    const double growth_factor = 1.26;
    double slope_sum = 0.0;
    for (int j = 1; j <= 8; ++j) slope_sum += posterior.means(j);
    const double value =
        (y_hat_at_k - posterior.means(0)) / (growth_factor * slope_sum);
    return Eigen::VectorXd::Constant(8, value);
}

}  // namespace fidelity::fixtures
