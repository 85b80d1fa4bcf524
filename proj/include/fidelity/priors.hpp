#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fidelity/dataset.hpp"
#include "fidelity/exec.hpp"

namespace fidelity {

struct NormalPrior {
    double mean = 0.0;
    double sd = 1.0;  // > 0; estimation clamps a degenerate sd at 1e-9
};

struct UniformPrior {
    double low = 0.0;
    double high = 1.0;  // always > low
};

// Audit trail of a bootstrap run. The raw per-iteration draws stay around
// so the fitted priors can be cross-checked against them.
struct PriorProvenance {
    int n_boot = 0;
    int sample_size = 0;
    std::uint64_t seed = 0;
    int skipped = 0;                     // rank-deficient resamples
    Eigen::MatrixXd coefficient_draws;   // successful fits x (m + 1)
    std::vector<double> variance_draws;  // residual variance per successful fit
};

struct PriorSpec {
    std::vector<std::string> coefficient_names;   // "b0" ... "bm"
    std::vector<NormalPrior> coefficient_priors;  // intercept first
    UniformPrior variance_prior;
    PriorProvenance provenance;

    int coefficient_count() const { return static_cast<int>(coefficient_priors.size()); }
};

// Method-of-moments normal fit, sd clamped below at 1e-9.
NormalPrior fit_normal(std::span<const double> samples);

// Padded min/max envelope: low = max(1e-3, min * 0.999), high = max * 1.001,
// nudged apart if the envelope collapses. Samples must be positive.
UniformPrior fit_uniform(std::span<const double> samples);

struct QqPoint {
    double theoretical;
    double sample;
};

// Order statistics paired with fitted quantiles at (i - 0.5) / n.
std::vector<QqPoint> qq_points(std::span<const double> samples, const NormalPrior& fitted);
std::vector<QqPoint> qq_points(std::span<const double> samples, const UniformPrior& fitted);

// Repeated bootstrap-resample-then-OLS over `data`, then a normal fit per
// coefficient column and a uniform fit over the residual variances.
// Deterministic given the seed: iteration i always uses the sub-seed
// derive_seed(seed, i), so both execution policies return identical specs.
// Rank-deficient resamples are skipped and counted; more than 10% of them
// failing raises RankError.
PriorSpec estimate_priors(const ObservationDataset& data, int n_boot = 1000,
                          int sample_size = 500, std::uint64_t seed = 0,
                          ExecPolicy policy = ExecPolicy::openmp);

std::vector<std::string> default_coefficient_names(int m);

}  // namespace fidelity
