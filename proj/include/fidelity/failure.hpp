#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fidelity/exec.hpp"
#include "fidelity/gibbs.hpp"

namespace fidelity {

enum class Estimator { plug_in, monte_carlo };
const char* to_string(Estimator estimator);
Estimator estimator_from_string(const std::string& name);

// Uniform percentage growth applied to a baseline of predictor times.
struct GrowthScenario {
    Eigen::VectorXd baseline;
    double t = 0.0;          // growth percent
    Eigen::VectorXd scaled;  // baseline * (1 + t / 100)
};

GrowthScenario make_scenario(const Eigen::VectorXd& baseline, double t);

struct FailureCurve {
    std::vector<double> t_percent;  // strictly increasing
    std::vector<double> p_failure;  // each in [0, 1]
    double demand = 0.0;
    Estimator estimator = Estimator::plug_in;

    int size() const { return static_cast<int>(t_percent.size()); }
};

// Integer percents 0..t_max by t_step.
std::vector<double> default_t_grid(double t_max = 100.0, double t_step = 1.0);

// P(y < demand) under the plug-in predictive N(x . beta_mean, sigma2_mean).
double failure_probability(const PosteriorSummary& model, const Eigen::VectorXd& x,
                           double demand);

// Monte-carlo estimate averaging Phi((demand - x . beta_s) / sigma_s) over
// retained chain states. When the chain holds more states than mc_draws, a
// seeded uniform subsample of mc_draws states is used instead.
double failure_probability(const PosteriorChain& chain, const Eigen::VectorXd& x,
                           double demand, int mc_draws = 100000, std::uint64_t seed = 0);

FailureCurve failure_curve(const PosteriorSummary& model, const Eigen::VectorXd& baseline,
                           double demand, const std::vector<double>& t_grid,
                           ExecPolicy policy = ExecPolicy::openmp);

FailureCurve failure_curve(const PosteriorChain& chain, const Eigen::VectorXd& baseline,
                           double demand, const std::vector<double>& t_grid,
                           int mc_draws = 100000, std::uint64_t seed = 0,
                           ExecPolicy policy = ExecPolicy::openmp);

// Linear interpolation between adjacent grid points; throws ConfigError
// when t falls outside the grid.
double curve_at(const FailureCurve& curve, double t);

}  // namespace fidelity
