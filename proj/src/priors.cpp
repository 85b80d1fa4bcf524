#include "fidelity/priors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fidelity/errors.hpp"
#include "fidelity/linreg.hpp"
#include "fidelity/rng.hpp"
#include "fidelity/stats.hpp"

namespace fidelity {

namespace {

constexpr double kSdFloor = 1e-9;
constexpr double kVarianceLowFloor = 1e-3;
// Residual variances from a perfectly fitting resample can round to zero;
// they are lifted to this floor before the uniform fit.
constexpr double kVarianceSampleFloor = 1e-12;

struct BootstrapDraws {
    Eigen::MatrixXd coefficients;  // n_boot x (m + 1); failed rows undefined
    std::vector<double> variances;
    std::vector<char> ok;
};

// One bootstrap iteration; never throws past the rank check.
void bootstrap_iteration(const ObservationDataset& data, int sample_size,
                         std::uint64_t master_seed, int i, BootstrapDraws& out) {
    try {
        const auto resample =
            bootstrap_resample(data, sample_size, derive_seed(master_seed, static_cast<std::uint64_t>(i)));
        const LinearFit fit = ols_fit(resample);
        out.coefficients.row(i) = fit.coefficients.transpose();
        out.variances[i] = fit.residual_variance;
        out.ok[i] = 1;
    } catch (const RankError&) {
        out.ok[i] = 0;
    }
}

}  // namespace

std::vector<std::string> default_coefficient_names(int m) {
    std::vector<std::string> names;
    names.reserve(m + 1);
    for (int j = 0; j <= m; ++j) names.push_back("b" + std::to_string(j));
    return names;
}

NormalPrior fit_normal(std::span<const double> samples) {
    if (samples.size() < 2) throw ConfigError("fit_normal: need at least 2 samples");
    for (const double v : samples)
        if (!std::isfinite(v)) throw ConfigError("fit_normal: non-finite sample");
    const auto [mean, sd] = stats::sample_moments(samples);
    return {mean, std::max(sd, kSdFloor)};
}

UniformPrior fit_uniform(std::span<const double> samples) {
    if (samples.size() < 2) throw ConfigError("fit_uniform: need at least 2 samples");
    double lo = samples[0];
    double hi = samples[0];
    for (const double v : samples) {
        if (!(v > 0.0)) throw ConfigError("fit_uniform: samples must be positive");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    UniformPrior prior;
    prior.low = std::max(kVarianceLowFloor, lo * 0.999);
    prior.high = hi * 1.001;
    if (prior.high <= prior.low) prior.high = prior.low + 1e-9;
    return prior;
}

namespace {

std::vector<QqPoint> qq_points_impl(std::span<const double> samples,
                                    const std::function<double(double)>& quantile) {
    if (samples.size() < 2) throw ConfigError("qq_points: need at least 2 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<QqPoint> points(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        points[i] = {quantile(p), sorted[i]};
    }
    return points;
}

}  // namespace

std::vector<QqPoint> qq_points(std::span<const double> samples, const NormalPrior& fitted) {
    return qq_points_impl(samples, [&fitted](double p) {
        return fitted.mean + fitted.sd * stats::normal_quantile(p);
    });
}

std::vector<QqPoint> qq_points(std::span<const double> samples, const UniformPrior& fitted) {
    return qq_points_impl(samples, [&fitted](double p) {
        return fitted.low + p * (fitted.high - fitted.low);
    });
}

PriorSpec estimate_priors(const ObservationDataset& data, int n_boot, int sample_size,
                          std::uint64_t seed, ExecPolicy policy) {
    validate(data);
    if (n_boot < 2) throw ConfigError("estimate_priors: n_boot must be at least 2");
    if (sample_size < data.m() + 2)
        throw ConfigError("estimate_priors: sample_size must be at least m + 2");

    const int p = data.m() + 1;
    BootstrapDraws draws;
    draws.coefficients.setZero(n_boot, p);
    draws.variances.assign(n_boot, 0.0);
    draws.ok.assign(n_boot, 0);

    if (policy == ExecPolicy::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_boot; ++i)
            bootstrap_iteration(data, sample_size, seed, i, draws);
    } else {
        for (int i = 0; i < n_boot; ++i)
            bootstrap_iteration(data, sample_size, seed, i, draws);
    }

    const int skipped =
        n_boot - static_cast<int>(std::count(draws.ok.begin(), draws.ok.end(), char{1}));
    if (skipped * 10 > n_boot) {
        std::ostringstream msg;
        msg << "estimate_priors: " << skipped << " of " << n_boot
            << " bootstrap fits were rank deficient (budget is 10%)";
        throw RankError(msg.str());
    }

    const int kept = n_boot - skipped;
    PriorSpec spec;
    spec.coefficient_names = default_coefficient_names(data.m());
    spec.provenance.n_boot = n_boot;
    spec.provenance.sample_size = sample_size;
    spec.provenance.seed = seed;
    spec.provenance.skipped = skipped;
    spec.provenance.coefficient_draws.resize(kept, p);
    spec.provenance.variance_draws.reserve(kept);
    int row = 0;
    for (int i = 0; i < n_boot; ++i) {
        if (!draws.ok[i]) continue;
        spec.provenance.coefficient_draws.row(row++) = draws.coefficients.row(i);
        spec.provenance.variance_draws.push_back(draws.variances[i]);
    }

    spec.coefficient_priors.reserve(p);
    for (int j = 0; j < p; ++j) {
        const auto col = spec.provenance.coefficient_draws.col(j);
        spec.coefficient_priors.push_back(fit_normal({col.data(), static_cast<std::size_t>(kept)}));
    }
    std::vector<double> lifted = spec.provenance.variance_draws;
    for (double& v : lifted) v = std::max(v, kVarianceSampleFloor);
    spec.variance_prior = fit_uniform(lifted);
    return spec;
}

}  // namespace fidelity
