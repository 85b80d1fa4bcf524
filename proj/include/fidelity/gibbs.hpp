#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fidelity/dataset.hpp"
#include "fidelity/priors.hpp"

namespace fidelity {

// Retained Gibbs states. Column layout: b0..bm, then sigma2.
struct PosteriorChain {
    Eigen::MatrixXd samples;  // retained x (m + 2)
    int burn_in = 0;
    int total_iterations = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> coefficient_names;
    bool sigma2_degenerate = false;  // a sweep hit SSE == 0

    int retained() const { return static_cast<int>(samples.rows()); }
    int coefficient_count() const { return static_cast<int>(samples.cols()) - 1; }
};

struct PosteriorSummary {
    std::vector<std::string> names;  // b0..bm, sigma2
    Eigen::VectorXd means;           // length m + 2
    Eigen::VectorXd sds;
    double predictive_variance = 0.0;  // posterior mean of sigma2

    int coefficient_count() const { return static_cast<int>(means.size()) - 1; }
};

struct GibbsOptions {
    int iterations = 5000;
    int burn_in = 1000;
    std::uint64_t seed = 0;
    // b0..bm followed by sigma2; defaults to prior means with sigma2 at the
    // middle of the uniform support.
    std::optional<Eigen::VectorXd> init;
};

// Systematic-scan Gibbs: each sweep updates b0..bm from their full
// conditionals, then sigma2, and retains the sweeps after burn-in.
// Deterministic given the seed.
PosteriorChain run_chain(const PriorSpec& priors, const ObservationDataset& data,
                         const GibbsOptions& options);

// Full conditional of coefficient j given everything else, for an explicit
// design matrix: precision 1/tau_j^2 + sum_i x_ij^2 / sigma2, mean weighted
// between the prior mean and the partial-residual estimate.
NormalPrior conditional_beta_params_design(int j, const Eigen::VectorXd& beta, double sigma2,
                                           const std::vector<NormalPrior>& priors,
                                           const Eigen::MatrixXd& design,
                                           const Eigen::VectorXd& y);

// Same on the dataset's intercept-plus-predictors design; `state` holds
// b0..bm followed by sigma2.
NormalPrior conditional_beta_params(int j, const Eigen::VectorXd& state,
                                    const PriorSpec& priors, const ObservationDataset& data);

// Draws sigma2 from the inverse-gamma kernel with shape n/2 - 1 and rate
// SSE/2, truncated to the uniform prior's support. SSE == 0 returns the low
// bound and raises the degenerate flag.
double sample_sigma2_kernel(double sse, int n, const UniformPrior& prior, double u,
                            bool* degenerate = nullptr);

double sample_conditional_sigma2(const Eigen::VectorXd& state, const UniformPrior& prior,
                                 const ObservationDataset& data, std::mt19937_64& rng,
                                 bool* degenerate = nullptr);

PosteriorSummary summarize(const PosteriorChain& chain);

}  // namespace fidelity
