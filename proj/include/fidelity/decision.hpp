#pragma once

#include <cstdint>
#include <functional>

#include "fidelity/dataset.hpp"
#include "fidelity/failure.hpp"
#include "fidelity/gibbs.hpp"
#include "fidelity/priors.hpp"

namespace fidelity {

struct DecisionConfig {
    int m_max = 0;                 // maximum hireable workers
    double demand = 0.0;           // daily demand D, trays
    double shift_minutes = 420.0;  // 7 hours
    double tactical_floor = 1.0;   // percent separating operational from tactical
};

enum class FidelityLevel { operational, tactical, strategic };
const char* to_string(FidelityLevel level);
FidelityLevel level_from_string(const std::string& name);

// Exit-status encoding used by the CLI: 0 / 2 / 3.
int exit_code(FidelityLevel level);

struct FidelityDecision {
    FidelityLevel level = FidelityLevel::operational;
    double observed_growth = 0.0;  // percent
    double k_critical = 0.0;       // percent
    double p_failure_at_k = 0.0;
};

// ((m_max * shift_minutes / D) - D) / D * 100.
double critical_value(const DecisionConfig& config);

// Operational below the tactical floor, Tactical up to (excluding) the
// critical value, Strategic at or above it. p_failure_at_k is read from the
// curve at the critical value.
FidelityDecision decide(const DecisionConfig& config, const FailureCurve& curve,
                        double observed_growth);

struct PipelineOptions {
    int n_boot = 1000;
    int sample_size = 500;
    int iterations = 5000;
    int burn_in = 1000;
    Estimator estimator = Estimator::plug_in;
    int mc_draws = 100000;
    double t_max = 100.0;
    double t_step = 1.0;
    double observed_growth = 0.0;
    ExecPolicy policy = ExecPolicy::openmp;
};

struct PipelineResult {
    PriorSpec priors;
    PosteriorChain chain;
    PosteriorSummary summary;
    FailureCurve curve;
    FidelityDecision decision;
};

// estimate_priors -> run_chain -> failure_curve (baseline = predictor
// means) -> decide, with per-stage sub-seeds derived from one master seed.
// The first failing stage aborts with a stage-tagged PipelineError.
PipelineResult run_pipeline(const ObservationDataset& data, const DecisionConfig& config,
                            const PipelineOptions& options, std::uint64_t seed);

// Stand-in for an external planning stage that would hand the engine its
// observation data. The default provider generates the facility-like
// synthetic dataset.
using DatasetProvider = std::function<ObservationDataset()>;
DatasetProvider default_dataset_provider(std::uint64_t seed);
PipelineResult run_pipeline(const DatasetProvider& provider, const DecisionConfig& config,
                            const PipelineOptions& options, std::uint64_t seed);

}  // namespace fidelity
