#include "fidelity/decision.hpp"

#include <sstream>
#include <string>

#include "fidelity/errors.hpp"
#include "fidelity/rng.hpp"
#include "fidelity/synth.hpp"

namespace fidelity {

namespace {

void check_config(const DecisionConfig& config) {
    if (config.m_max <= 0) throw ConfigError("decision: m_max must be positive");
    if (!(config.demand > 0.0)) throw ConfigError("decision: demand must be positive");
    if (!(config.shift_minutes > 0.0))
        throw ConfigError("decision: shift_minutes must be positive");
    if (!(config.tactical_floor > 0.0))
        throw ConfigError("decision: tactical_floor must be positive");
}

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        throw PipelineError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

const char* to_string(FidelityLevel level) {
    switch (level) {
        case FidelityLevel::operational: return "Operational";
        case FidelityLevel::tactical: return "Tactical";
        case FidelityLevel::strategic: return "Strategic";
    }
    return "Operational";
}

FidelityLevel level_from_string(const std::string& name) {
    if (name == "Operational") return FidelityLevel::operational;
    if (name == "Tactical") return FidelityLevel::tactical;
    if (name == "Strategic") return FidelityLevel::strategic;
    throw ConfigError("unknown fidelity level \"" + name + "\"");
}

int exit_code(FidelityLevel level) {
    switch (level) {
        case FidelityLevel::operational: return 0;
        case FidelityLevel::tactical: return 2;
        case FidelityLevel::strategic: return 3;
    }
    return 0;
}

double critical_value(const DecisionConfig& config) {
    check_config(config);
    const double d = config.demand;
    return (config.m_max * config.shift_minutes / d - d) / d * 100.0;
}

FidelityDecision decide(const DecisionConfig& config, const FailureCurve& curve,
                        double observed_growth) {
    check_config(config);
    if (observed_growth < 0.0) throw ConfigError("decide: observed growth must be nonnegative");

    const double k = critical_value(config);
    if (!(config.tactical_floor < k)) {
        std::ostringstream msg;
        msg << "decide: tactical_floor " << config.tactical_floor
            << " does not leave a band below the critical value " << k;
        throw ConfigError(msg.str());
    }
    curve_at(curve, observed_growth);  // coverage check
    FidelityDecision decision;
    decision.observed_growth = observed_growth;
    decision.k_critical = k;
    decision.p_failure_at_k = curve_at(curve, k);
    if (observed_growth < config.tactical_floor)
        decision.level = FidelityLevel::operational;
    else if (observed_growth < k)
        decision.level = FidelityLevel::tactical;
    else
        decision.level = FidelityLevel::strategic;
    return decision;
}

PipelineResult run_pipeline(const ObservationDataset& data, const DecisionConfig& config,
                            const PipelineOptions& options, std::uint64_t seed) {
    check_config(config);
    stage("dataset", [&] { validate(data); return 0; });

    PipelineResult result;
    result.priors = stage("priors", [&] {
        return estimate_priors(data, options.n_boot, options.sample_size,
                               derive_seed(seed, 1), options.policy);
    });
    result.chain = stage("gibbs", [&] {
        GibbsOptions gibbs;
        gibbs.iterations = options.iterations;
        gibbs.burn_in = options.burn_in;
        gibbs.seed = derive_seed(seed, 2);
        return run_chain(result.priors, data, gibbs);
    });
    result.summary = stage("gibbs", [&] { return summarize(result.chain); });
    result.curve = stage("failure", [&] {
        const Eigen::VectorXd baseline = data.x.colwise().mean();
        const auto grid = default_t_grid(options.t_max, options.t_step);
        if (options.estimator == Estimator::plug_in)
            return failure_curve(result.summary, baseline, config.demand, grid, options.policy);
        return failure_curve(result.chain, baseline, config.demand, grid, options.mc_draws,
                             derive_seed(seed, 3), options.policy);
    });
    result.decision = stage("decision", [&] {
        return decide(config, result.curve, options.observed_growth);
    });
    return result;
}

DatasetProvider default_dataset_provider(std::uint64_t seed) {
    return [seed] { return generate(facility_like(2000, seed)); };
}

PipelineResult run_pipeline(const DatasetProvider& provider, const DecisionConfig& config,
                            const PipelineOptions& options, std::uint64_t seed) {
    const ObservationDataset data = stage("dataset", [&] { return provider(); });
    return run_pipeline(data, config, options, seed);
}

}  // namespace fidelity
