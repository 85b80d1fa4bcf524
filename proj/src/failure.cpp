#include "fidelity/failure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fidelity/errors.hpp"
#include "fidelity/rng.hpp"
#include "fidelity/stats.hpp"

namespace fidelity {

namespace {

void check_x(const Eigen::VectorXd& x, int m, const char* where) {
    if (static_cast<int>(x.size()) != m) {
        std::ostringstream msg;
        msg << where << ": predictor vector has " << x.size() << " entries, model expects " << m;
        throw ConfigError(msg.str());
    }
    for (int i = 0; i < x.size(); ++i)
        if (!(x(i) >= 0.0) || !std::isfinite(x(i)))
            throw ConfigError(std::string(where) + ": predictors must be finite and nonnegative");
}

void check_demand(double demand, const char* where) {
    if (!(demand > 0.0)) throw ConfigError(std::string(where) + ": demand must be positive");
}

FailureCurve finish_curve(std::vector<double> ts, std::vector<double> ps, double demand,
                          Estimator estimator) {
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1]))
            throw ConfigError("failure_curve: t grid must be strictly increasing");
    for (const double p : ps)
        if (!(p >= 0.0 && p <= 1.0))
            throw ConfigError("failure_curve: probability left [0, 1]");
    FailureCurve curve;
    curve.t_percent = std::move(ts);
    curve.p_failure = std::move(ps);
    curve.demand = demand;
    curve.estimator = estimator;
    return curve;
}

// Grid points are independent; the parallel path assigns by index so the
// result is identical to the serial one.
template <typename PointFn>
std::vector<double> evaluate_grid(int count, ExecPolicy policy, const PointFn& point) {
    std::vector<double> ps(static_cast<std::size_t>(count));
    if (policy == ExecPolicy::openmp) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < count; ++i) ps[static_cast<std::size_t>(i)] = point(i);
    } else {
        for (int i = 0; i < count; ++i) ps[static_cast<std::size_t>(i)] = point(i);
    }
    return ps;
}

}  // namespace

const char* to_string(Estimator estimator) {
    return estimator == Estimator::plug_in ? "plug-in" : "monte-carlo";
}

Estimator estimator_from_string(const std::string& name) {
    if (name == "plug-in") return Estimator::plug_in;
    if (name == "monte-carlo") return Estimator::monte_carlo;
    throw ConfigError("unknown estimator \"" + name + "\" (use plug-in or monte-carlo)");
}

GrowthScenario make_scenario(const Eigen::VectorXd& baseline, double t) {
    if (!(t >= 0.0)) throw ConfigError("growth percent must be nonnegative");
    GrowthScenario scenario;
    scenario.baseline = baseline;
    scenario.t = t;
    scenario.scaled = baseline * (1.0 + t / 100.0);
    return scenario;
}

double failure_probability(const PosteriorSummary& model, const Eigen::VectorXd& x,
                           double demand) {
    const int m = model.coefficient_count() - 1;
    check_x(x, m, "failure_probability");
    check_demand(demand, "failure_probability");
    if (!(model.predictive_variance > 0.0))
        throw ConfigError("failure_probability: predictive variance must be positive");

    double y_hat = model.means(0);
    for (int i = 0; i < m; ++i) y_hat += model.means(i + 1) * x(i);
    return stats::normal_cdf((demand - y_hat) / std::sqrt(model.predictive_variance));
}

double failure_probability(const PosteriorChain& chain, const Eigen::VectorXd& x,
                           double demand, int mc_draws, std::uint64_t seed) {
    const int m = chain.coefficient_count() - 1;
    check_x(x, m, "failure_probability");
    check_demand(demand, "failure_probability");
    const int states = chain.retained();
    if (states == 0) throw ConfigError("failure_probability: empty chain");
    if (mc_draws < 1) throw ConfigError("failure_probability: mc_draws must be positive");

    const int p = m + 1;
    auto state_prob = [&](int s) {
        double y_hat = chain.samples(s, 0);
        for (int i = 0; i < m; ++i) y_hat += chain.samples(s, i + 1) * x(i);
        const double sigma2 = chain.samples(s, p);
        if (!(sigma2 > 0.0))
            throw ConfigError("failure_probability: chain contains nonpositive sigma2");
        return stats::normal_cdf((demand - y_hat) / std::sqrt(sigma2));
    };

    double sum = 0.0;
    if (mc_draws >= states) {
        for (int s = 0; s < states; ++s) sum += state_prob(s);
        return sum / static_cast<double>(states);
    }
    auto rng = make_engine(seed);
    std::uniform_int_distribution<int> pick(0, states - 1);
    for (int d = 0; d < mc_draws; ++d) sum += state_prob(pick(rng));
    return sum / static_cast<double>(mc_draws);
}

std::vector<double> default_t_grid(double t_max, double t_step) {
    if (!(t_max > 0.0) || !(t_step > 0.0))
        throw ConfigError("t grid needs positive t_max and t_step");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double t = i * t_step;
        if (t > t_max + 1e-12) break;
        grid.push_back(t);
    }
    return grid;
}

FailureCurve failure_curve(const PosteriorSummary& model, const Eigen::VectorXd& baseline,
                           double demand, const std::vector<double>& t_grid,
                           ExecPolicy policy) {
    check_x(baseline, model.coefficient_count() - 1, "failure_curve");
    auto ps = evaluate_grid(static_cast<int>(t_grid.size()), policy, [&](int i) {
        return failure_probability(
            model, make_scenario(baseline, t_grid[static_cast<std::size_t>(i)]).scaled, demand);
    });
    return finish_curve(t_grid, std::move(ps), demand, Estimator::plug_in);
}

FailureCurve failure_curve(const PosteriorChain& chain, const Eigen::VectorXd& baseline,
                           double demand, const std::vector<double>& t_grid, int mc_draws,
                           std::uint64_t seed, ExecPolicy policy) {
    check_x(baseline, chain.coefficient_count() - 1, "failure_curve");
    auto ps = evaluate_grid(static_cast<int>(t_grid.size()), policy, [&](int i) {
        const std::size_t k = static_cast<std::size_t>(i);
        return failure_probability(chain, make_scenario(baseline, t_grid[k]).scaled, demand,
                                   mc_draws, derive_seed(seed, k));
    });
    return finish_curve(t_grid, std::move(ps), demand, Estimator::monte_carlo);
}

double curve_at(const FailureCurve& curve, double t) {
    if (curve.size() == 0) throw ConfigError("curve_at: empty curve");
    const auto& ts = curve.t_percent;
    if (t < ts.front() || t > ts.back()) {
        std::ostringstream msg;
        msg << "curve_at: t = " << t << " outside the curve grid [" << ts.front() << ", "
            << ts.back() << "]";
        throw ConfigError(msg.str());
    }
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
    if (hi == 0 || ts[hi] == t) return curve.p_failure[hi];
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return curve.p_failure[lo] + w * (curve.p_failure[hi] - curve.p_failure[lo]);
}

}  // namespace fidelity
