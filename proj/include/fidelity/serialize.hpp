#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fidelity/decision.hpp"
#include "fidelity/failure.hpp"
#include "fidelity/gibbs.hpp"
#include "fidelity/priors.hpp"
#include "fidelity/synth.hpp"

namespace fidelity {

// JSON forms. Keys are serialized in sorted order and numbers with
// shortest-round-trip formatting, so equal values give equal bytes.
nlohmann::json to_json(const PriorSpec& spec);
PriorSpec prior_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PosteriorSummary& summary);
PosteriorSummary posterior_summary_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FidelityDecision& decision);

nlohmann::json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const nlohmann::json& j);

nlohmann::json curve_to_json(const FailureCurve& curve, int mc_draws, std::uint64_t seed);

// CSV forms.
void write_chain_csv(const PosteriorChain& chain, const std::filesystem::path& path);
void write_chain_meta(const PosteriorChain& chain, const std::filesystem::path& path);
PosteriorChain read_chain_csv(const std::filesystem::path& path);

void write_curve_csv(const FailureCurve& curve, const std::filesystem::path& path);
FailureCurve read_curve_csv(const std::filesystem::path& path, double demand,
                            Estimator estimator);

void write_qq_csv(std::span<const QqPoint> points, const std::filesystem::path& path);

void write_text_file(const std::string& text, const std::filesystem::path& path);
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Shortest-round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace fidelity
