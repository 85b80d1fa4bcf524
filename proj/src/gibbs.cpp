#include "fidelity/gibbs.hpp"

#include <cmath>
#include <sstream>

#include "fidelity/errors.hpp"
#include "fidelity/rng.hpp"
#include "fidelity/stats.hpp"

namespace fidelity {

namespace {

void check_prior_dimensions(const PriorSpec& priors, const ObservationDataset& data) {
    if (priors.coefficient_count() != data.m() + 1) {
        std::ostringstream msg;
        msg << "gibbs: prior has " << priors.coefficient_count()
            << " coefficients but the data needs " << data.m() + 1;
        throw ConfigError(msg.str());
    }
}

}  // namespace

NormalPrior conditional_beta_params_design(int j, const Eigen::VectorXd& beta, double sigma2,
                                           const std::vector<NormalPrior>& priors,
                                           const Eigen::MatrixXd& design,
                                           const Eigen::VectorXd& y) {
    const int p = static_cast<int>(design.cols());
    if (j < 0 || j >= p) throw ConfigError("conditional_beta_params: index out of range");
    if (!(sigma2 > 0.0)) throw ConfigError("conditional_beta_params: sigma2 must be positive");
    if (beta.size() != p || static_cast<int>(priors.size()) != p)
        throw ConfigError("conditional_beta_params: dimension mismatch");

    const auto col = design.col(j);
    // residual with coefficient j removed
    Eigen::VectorXd partial = y - design * beta + col * beta(j);
    const double tau = priors[static_cast<std::size_t>(j)].sd;
    const double mu = priors[static_cast<std::size_t>(j)].mean;
    const double precision = 1.0 / (tau * tau) + col.squaredNorm() / sigma2;
    const double mean = (mu / (tau * tau) + col.dot(partial) / sigma2) / precision;
    return {mean, 1.0 / std::sqrt(precision)};
}

NormalPrior conditional_beta_params(int j, const Eigen::VectorXd& state,
                                    const PriorSpec& priors, const ObservationDataset& data) {
    check_prior_dimensions(priors, data);
    const int p = data.m() + 1;
    if (state.size() != p + 1)
        throw ConfigError("conditional_beta_params: state must hold b0..bm and sigma2");
    Eigen::MatrixXd design(data.n(), p);
    design.col(0).setOnes();
    design.rightCols(data.m()) = data.x;
    return conditional_beta_params_design(j, state.head(p), state(p),
                                          priors.coefficient_priors, design, data.y);
}

double sample_sigma2_kernel(double sse, int n, const UniformPrior& prior, double u,
                            bool* degenerate) {
    if (!(prior.low > 0.0 && prior.high > prior.low))
        throw ConfigError("sample_sigma2: uniform support must satisfy 0 < low < high");
    if (sse < 0.0) throw ConfigError("sample_sigma2: negative SSE");
    if (sse == 0.0) {
        if (degenerate) *degenerate = true;
        return prior.low;
    }
    const double shape = 0.5 * n - 1.0;
    const double rate = 0.5 * sse;
    return stats::truncated_inverse_gamma_quantile(shape, rate, prior.low, prior.high, u);
}

double sample_conditional_sigma2(const Eigen::VectorXd& state, const UniformPrior& prior,
                                 const ObservationDataset& data, std::mt19937_64& rng,
                                 bool* degenerate) {
    const int p = data.m() + 1;
    if (state.size() != p + 1)
        throw ConfigError("sample_conditional_sigma2: state must hold b0..bm and sigma2");
    Eigen::VectorXd residual =
        data.y - Eigen::VectorXd::Constant(data.n(), state(0)) - data.x * state.segment(1, data.m());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return sample_sigma2_kernel(residual.squaredNorm(), data.n(), prior, unit(rng), degenerate);
}

PosteriorChain run_chain(const PriorSpec& priors, const ObservationDataset& data,
                         const GibbsOptions& options) {
    validate(data);
    check_prior_dimensions(priors, data);
    if (options.burn_in < 0 || options.burn_in >= options.iterations)
        throw ConfigError("run_chain: burn_in must be below iterations");

    const int m = data.m();
    const int p = m + 1;
    const int n = data.n();
    const UniformPrior support = priors.variance_prior;

    Eigen::VectorXd beta(p);
    double sigma2;
    if (options.init) {
        const Eigen::VectorXd& init = *options.init;
        if (init.size() != p + 1)
            throw ConfigError("run_chain: init must hold b0..bm and sigma2");
        sigma2 = init(p);
        if (!(sigma2 >= support.low && sigma2 <= support.high))
            throw ConfigError("run_chain: init sigma2 outside the uniform support");
        beta = init.head(p);
    } else {
        for (int j = 0; j < p; ++j) beta(j) = priors.coefficient_priors[j].mean;
        sigma2 = 0.5 * (support.low + support.high);
    }

    Eigen::MatrixXd design(n, p);
    design.col(0).setOnes();
    design.rightCols(m) = data.x;
    Eigen::VectorXd col_sq(p);
    for (int j = 0; j < p; ++j) col_sq(j) = design.col(j).squaredNorm();

    auto rng = make_engine(options.seed);
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    PosteriorChain chain;
    chain.samples.resize(options.iterations - options.burn_in, p + 1);
    chain.burn_in = options.burn_in;
    chain.total_iterations = options.iterations;
    chain.seed = options.seed;
    chain.coefficient_names = priors.coefficient_names.empty()
                                  ? default_coefficient_names(m)
                                  : priors.coefficient_names;

    Eigen::VectorXd residual(n);
    for (int sweep = 0; sweep < options.iterations; ++sweep) {
        residual = data.y - design * beta;  // fresh each sweep, bounds drift
        for (int j = 0; j < p; ++j) {
            residual += design.col(j) * beta(j);
            const double tau = priors.coefficient_priors[j].sd;
            const double mu = priors.coefficient_priors[j].mean;
            const double precision = 1.0 / (tau * tau) + col_sq(j) / sigma2;
            const double mean =
                (mu / (tau * tau) + design.col(j).dot(residual) / sigma2) / precision;
            beta(j) = mean + unit_normal(rng) / std::sqrt(precision);
            residual -= design.col(j) * beta(j);
        }
        bool degenerate = false;
        sigma2 = sample_sigma2_kernel(residual.squaredNorm(), n, support, unit(rng), &degenerate);
        if (degenerate) chain.sigma2_degenerate = true;

        if (sweep >= options.burn_in) {
            const int row = sweep - options.burn_in;
            chain.samples.row(row).head(p) = beta.transpose();
            chain.samples(row, p) = sigma2;
        }
    }
    return chain;
}

PosteriorSummary summarize(const PosteriorChain& chain) {
    const int s = chain.retained();
    if (s == 0) throw ConfigError("summarize: empty chain");
    const int cols = static_cast<int>(chain.samples.cols());

    PosteriorSummary summary;
    summary.names = chain.coefficient_names;
    summary.names.push_back("sigma2");
    summary.means.resize(cols);
    summary.sds.resize(cols);
    for (int j = 0; j < cols; ++j) {
        const double mean = chain.samples.col(j).mean();
        summary.means(j) = mean;
        summary.sds(j) =
            s > 1 ? std::sqrt((chain.samples.col(j).array() - mean).square().sum() / (s - 1))
                  : 0.0;
    }
    summary.predictive_variance = summary.means(cols - 1);
    return summary;
}

}  // namespace fidelity
