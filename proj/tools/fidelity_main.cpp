// Command-line front end: every subcommand resolves its configuration from
// an optional JSON config file plus flags (flags win), prints the resolved
// configuration including the effective seed, then emits its artifacts.
// All randomness flows from the single --seed of the command.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fidelity/decision.hpp"
#include "fidelity/errors.hpp"
#include "fidelity/failure.hpp"
#include "fidelity/fixtures.hpp"
#include "fidelity/gibbs.hpp"
#include "fidelity/priors.hpp"
#include "fidelity/rng.hpp"
#include "fidelity/serialize.hpp"
#include "fidelity/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fidelity;

namespace {

// Values read from --config act as defaults; explicit flags override them.
class JsonDefaults {
  public:
    JsonDefaults(int argc, char** argv) {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc) {
                values_ = read_json_file(argv[i + 1]);
            } else if (arg.rfind("--config=", 0) == 0) {
                values_ = read_json_file(arg.substr(9));
            }
        }
    }

    template <typename T>
    T get(const std::string& key, T fallback) const {
        if (values_.contains(key)) return values_.at(key).get<T>();
        return fallback;
    }

  private:
    json values_;
};

// Printed to stdout before execution; the path-free part is written next to
// each artifact so outputs stay byte-identical across output directories.
struct ResolvedConfig {
    json params;
    json paths;

    void echo(const std::string& command) const {
        json merged = params;
        for (const auto& [key, value] : paths.items()) merged[key] = value;
        merged["command"] = command;
        std::cout << "config: " << merged.dump() << "\n";
    }

    void sidecar(const fs::path& artifact) const {
        fs::path path = artifact;
        path += ".config.json";
        write_json_file(params, path);
    }
};

Eigen::VectorXd parse_baseline(const std::string& text) {
    std::vector<double> values;
    std::string cell;
    for (const char ch : text) {
        if (ch == ',') {
            values.push_back(std::stod(cell));
            cell.clear();
        } else {
            cell.push_back(ch);
        }
    }
    if (!cell.empty()) values.push_back(std::stod(cell));
    if (values.empty()) throw ConfigError("--baseline: no values given");
    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<int>(values.size()));
}

GeneratorSpec resolve_generator(const std::string& preset, const std::string& spec_path,
                                int n_override, std::uint64_t seed, bool seed_given) {
    GeneratorSpec spec;
    if (!spec_path.empty()) {
        spec = generator_spec_from_json(read_json_file(spec_path));
    } else if (preset == "facility_like") {
        spec = facility_like();
    } else {
        throw ConfigError("unknown preset \"" + preset + "\" (available: facility_like)");
    }
    if (n_override > 0) spec.n = n_override;
    if (seed_given) spec.seed = seed;
    return spec;
}

void write_qq_files(const PriorSpec& priors, const fs::path& dir) {
    fs::create_directories(dir);
    const auto& draws = priors.provenance.coefficient_draws;
    for (int j = 0; j < priors.coefficient_count(); ++j) {
        const std::span<const double> column{draws.col(j).data(),
                                             static_cast<std::size_t>(draws.rows())};
        const auto points =
            qq_points(column, priors.coefficient_priors[static_cast<std::size_t>(j)]);
        write_qq_csv(points, dir / ("qq_" + priors.coefficient_names[static_cast<std::size_t>(j)] +
                                    ".csv"));
    }
    const auto variance_points = qq_points(priors.provenance.variance_draws,
                                           priors.variance_prior);
    write_qq_csv(variance_points, dir / "qq_variance.csv");
}

struct SampleOutputs {
    PosteriorChain chain;
    PosteriorSummary summary;
};

SampleOutputs run_sampler(const fs::path& priors_path, const fs::path& data_path,
                          int iterations, int burn_in, std::uint64_t seed) {
    const auto priors = prior_spec_from_json(read_json_file(priors_path));
    const auto data = load_csv(data_path);
    GibbsOptions options;
    options.iterations = iterations;
    options.burn_in = burn_in;
    options.seed = seed;
    SampleOutputs out;
    out.chain = run_chain(priors, data, options);
    out.summary = summarize(out.chain);
    return out;
}

int cmd_gen_data(const fs::path& out, const GeneratorSpec& spec, const ResolvedConfig& config) {
    const auto data = generate(spec);
    write_csv(data, out);
    fs::path spec_path = out;
    spec_path += ".spec.json";
    write_json_file(to_json(spec), spec_path);
    fs::path summary_path = out;
    summary_path += ".summary.txt";
    write_text_file(summary_text(data, out.stem().string()), summary_path);
    config.sidecar(out);
    std::cout << "wrote " << out.string() << " (" << data.n() << " rows, m = " << data.m()
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian production-capacity decision engine"};
    app.require_subcommand(1);
    const JsonDefaults defaults(argc, argv);

    std::string config_path;  // consumed by JsonDefaults; registered for help
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    // gen-data
    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
    struct {
        std::string preset, spec_path, out;
        int n = 0;
        std::uint64_t seed = 0;
    } gen_opts;
    gen_opts.preset = defaults.get<std::string>("preset", "facility_like");
    gen_opts.spec_path = defaults.get<std::string>("spec", "");
    gen_opts.n = defaults.get<int>("n", 0);
    gen_opts.seed = defaults.get<std::uint64_t>("seed", 0);
    gen->add_option("--preset", gen_opts.preset, "Named generator preset");
    gen->add_option("--spec", gen_opts.spec_path, "Generator spec JSON file");
    gen->add_option("--n", gen_opts.n, "Override row count");
    auto* gen_seed = gen->add_option("--seed", gen_opts.seed, "Generator seed");
    gen->add_option("--out", gen_opts.out, "Output CSV path")->required();
    gen->add_option("--config", config_path, "JSON config file");

    // summarize
    auto* summ = app.add_subcommand("summarize", "Print a dataset summary");
    struct {
        std::string data, name, out;
    } summ_opts;
    summ->add_option("--data", summ_opts.data, "Dataset CSV")->required();
    summ->add_option("--name", summ_opts.name, "Display name (default: file stem)");
    summ->add_option("--out", summ_opts.out, "Write the summary here instead of stdout");

    // fit-priors
    auto* fit = app.add_subcommand("fit-priors",
                                   "Estimate coefficient and variance priors by bootstrap");
    struct {
        std::string data, out, qq_dir;
        int n_boot = 1000, sample_size = 500;
        std::uint64_t seed = 0;
        bool serial = false;
    } fit_opts;
    fit_opts.n_boot = defaults.get<int>("n_boot", 1000);
    fit_opts.sample_size = defaults.get<int>("sample_size", 500);
    fit_opts.seed = defaults.get<std::uint64_t>("seed", 0);
    fit->add_option("--data", fit_opts.data, "Dataset CSV")->required();
    fit->add_option("--n-boot", fit_opts.n_boot, "Bootstrap iterations");
    fit->add_option("--sample-size", fit_opts.sample_size, "Rows per bootstrap resample");
    fit->add_option("--seed", fit_opts.seed, "Master seed");
    fit->add_option("--out", fit_opts.out, "Priors JSON path")->required();
    fit->add_option("--qq-dir", fit_opts.qq_dir, "Directory for Q-Q plot CSVs");
    fit->add_flag("--serial", fit_opts.serial, "Use the serial reference kernel");
    fit->add_option("--config", config_path, "JSON config file");

    // sample
    auto* sample = app.add_subcommand("sample", "Draw the posterior chain by Gibbs sampling");
    struct {
        std::string priors, data, out, summary_out;
        int iterations = 5000, burn_in = 1000;
        std::uint64_t seed = 0;
    } sample_opts;
    sample_opts.iterations = defaults.get<int>("iterations", 5000);
    sample_opts.burn_in = defaults.get<int>("burn_in", 1000);
    sample_opts.seed = defaults.get<std::uint64_t>("seed", 0);
    sample->add_option("--priors", sample_opts.priors, "Priors JSON")->required();
    sample->add_option("--data", sample_opts.data, "Dataset CSV")->required();
    sample->add_option("--iterations", sample_opts.iterations, "Total sweeps");
    sample->add_option("--burn-in", sample_opts.burn_in, "Discarded prefix");
    sample->add_option("--seed", sample_opts.seed, "Chain seed");
    sample->add_option("--out", sample_opts.out, "Chain CSV path")->required();
    sample->add_option("--summary-out", sample_opts.summary_out,
                       "Summary JSON path (default: <out stem>.summary.json)");
    sample->add_option("--config", config_path, "JSON config file");

    // curve
    auto* curve = app.add_subcommand("curve", "Map growth percent to failure probability");
    struct {
        std::string summary, chain, model, data, baseline, estimator, variance_convention, out;
        double demand = 0.0, t_max = 100.0, t_step = 1.0;
        int mc_draws = 100000;
        std::uint64_t seed = 0;
        bool serial = false;
    } curve_opts;
    curve_opts.estimator = defaults.get<std::string>("estimator", "plug-in");
    curve_opts.variance_convention = defaults.get<std::string>("variance_convention", "variance");
    curve_opts.demand = defaults.get<double>("demand", 0.0);
    curve_opts.t_max = defaults.get<double>("t_max", 100.0);
    curve_opts.t_step = defaults.get<double>("t_step", 1.0);
    curve_opts.mc_draws = defaults.get<int>("mc_draws", 100000);
    curve_opts.seed = defaults.get<std::uint64_t>("seed", 0);
    curve->add_option("--summary", curve_opts.summary, "Posterior summary JSON");
    curve->add_option("--chain", curve_opts.chain, "Posterior chain CSV");
    curve->add_option("--model", curve_opts.model,
                      "Named reference model (paper) instead of --summary/--chain");
    curve->add_option("--data", curve_opts.data, "Dataset CSV; baseline = column means");
    curve->add_option("--baseline", curve_opts.baseline, "Comma-separated baseline minutes");
    curve->add_option("--demand", curve_opts.demand, "Production target (trays)")->required();
    curve->add_option("--estimator", curve_opts.estimator, "plug-in or monte-carlo");
    curve->add_option("--mc-draws", curve_opts.mc_draws, "Chain states per monte-carlo point");
    curve->add_option("--seed", curve_opts.seed, "Monte-carlo subsample seed");
    curve->add_option("--t-max", curve_opts.t_max, "Largest growth percent");
    curve->add_option("--t-step", curve_opts.t_step, "Grid step (percent)");
    curve->add_option("--variance-convention", curve_opts.variance_convention,
                      "variance or sd (reference model only)");
    curve->add_option("--out", curve_opts.out, "Curve CSV path")->required();
    curve->add_flag("--serial", curve_opts.serial, "Use the serial reference kernel");
    curve->add_option("--config", config_path, "JSON config file");

    // decide
    auto* decide_cmd = app.add_subcommand("decide",
                                          "Classify observed growth into a fidelity level");
    struct {
        std::string curve, out;
        int m_max = 0;
        double demand = 0.0, shift_minutes = 420.0, tactical_floor = 1.0, growth = -1.0;
    } decide_opts;
    decide_opts.m_max = defaults.get<int>("m_max", 0);
    decide_opts.demand = defaults.get<double>("demand", 0.0);
    decide_opts.shift_minutes = defaults.get<double>("shift_minutes", 420.0);
    decide_opts.tactical_floor = defaults.get<double>("tactical_floor", 1.0);
    decide_cmd->add_option("--curve", decide_opts.curve, "Failure curve CSV")->required();
    decide_cmd->add_option("--m-max", decide_opts.m_max, "Maximum hireable workers")->required();
    decide_cmd->add_option("--demand", decide_opts.demand, "Daily demand (trays)")->required();
    decide_cmd->add_option("--shift-minutes", decide_opts.shift_minutes, "Minutes per shift");
    decide_cmd->add_option("--tactical-floor", decide_opts.tactical_floor,
                           "Operational/tactical boundary (percent)");
    decide_cmd->add_option("--growth", decide_opts.growth, "Observed growth percent")->required();
    decide_cmd->add_option("--out", decide_opts.out, "Decision JSON path");
    decide_cmd->add_option("--config", config_path, "JSON config file");

    // pipeline
    auto* pipe = app.add_subcommand("pipeline",
                                    "Run priors -> chain -> curve -> decision end to end");
    struct {
        std::string data, preset, out_dir, estimator;
        int m_max = 0, n_boot = 1000, sample_size = 500, iterations = 5000, burn_in = 1000,
            mc_draws = 100000;
        double demand = 0.0, shift_minutes = 420.0, tactical_floor = 1.0, growth = 0.0,
               t_max = 100.0, t_step = 1.0;
        std::uint64_t seed = 0;
        bool serial = false;
    } pipe_opts;
    pipe_opts.n_boot = defaults.get<int>("n_boot", 1000);
    pipe_opts.sample_size = defaults.get<int>("sample_size", 500);
    pipe_opts.iterations = defaults.get<int>("iterations", 5000);
    pipe_opts.burn_in = defaults.get<int>("burn_in", 1000);
    pipe_opts.mc_draws = defaults.get<int>("mc_draws", 100000);
    pipe_opts.m_max = defaults.get<int>("m_max", 0);
    pipe_opts.demand = defaults.get<double>("demand", 0.0);
    pipe_opts.shift_minutes = defaults.get<double>("shift_minutes", 420.0);
    pipe_opts.tactical_floor = defaults.get<double>("tactical_floor", 1.0);
    pipe_opts.growth = defaults.get<double>("growth", 0.0);
    pipe_opts.estimator = defaults.get<std::string>("estimator", "plug-in");
    pipe_opts.seed = defaults.get<std::uint64_t>("seed", 0);
    pipe->add_option("--data", pipe_opts.data, "Dataset CSV (default: generated preset)");
    pipe->add_option("--preset", pipe_opts.preset, "Generator preset when no --data is given");
    pipe->add_option("--m-max", pipe_opts.m_max, "Maximum hireable workers")->required();
    pipe->add_option("--demand", pipe_opts.demand, "Daily demand (trays)")->required();
    pipe->add_option("--shift-minutes", pipe_opts.shift_minutes, "Minutes per shift");
    pipe->add_option("--tactical-floor", pipe_opts.tactical_floor, "Percent");
    pipe->add_option("--growth", pipe_opts.growth, "Observed growth percent");
    pipe->add_option("--n-boot", pipe_opts.n_boot, "Bootstrap iterations");
    pipe->add_option("--sample-size", pipe_opts.sample_size, "Rows per resample");
    pipe->add_option("--iterations", pipe_opts.iterations, "Gibbs sweeps");
    pipe->add_option("--burn-in", pipe_opts.burn_in, "Discarded sweeps");
    pipe->add_option("--estimator", pipe_opts.estimator, "plug-in or monte-carlo");
    pipe->add_option("--mc-draws", pipe_opts.mc_draws, "Chain states per monte-carlo point");
    pipe->add_option("--t-max", pipe_opts.t_max, "Largest growth percent");
    pipe->add_option("--t-step", pipe_opts.t_step, "Grid step (percent)");
    pipe->add_option("--seed", pipe_opts.seed, "Master seed for every stage");
    pipe->add_option("--out-dir", pipe_opts.out_dir, "Artifact directory")->required();
    pipe->add_flag("--serial", pipe_opts.serial, "Use the serial reference kernels");
    pipe->add_option("--config", config_path, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) {
            const auto spec = resolve_generator(gen_opts.preset, gen_opts.spec_path, gen_opts.n,
                                                gen_opts.seed, gen_seed->count() > 0 ||
                                                                   gen_opts.spec_path.empty());
            ResolvedConfig config;
            config.params = {{"preset", gen_opts.preset},
                             {"n", spec.n},
                             {"seed", spec.seed},
                             {"m", spec.m},
                             {"noise_sd", spec.noise_sd}};
            config.paths = {{"out", gen_opts.out}, {"spec", gen_opts.spec_path}};
            config.echo("gen-data");
            return cmd_gen_data(gen_opts.out, spec, config);
        }

        if (*summ) {
            const auto data = load_csv(summ_opts.data);
            const std::string name =
                summ_opts.name.empty() ? fs::path(summ_opts.data).stem().string()
                                       : summ_opts.name;
            const auto text = summary_text(data, name);
            if (summ_opts.out.empty())
                std::cout << text;
            else
                write_text_file(text, summ_opts.out);
            return 0;
        }

        if (*fit) {
            ResolvedConfig config;
            config.params = {{"n_boot", fit_opts.n_boot},
                             {"sample_size", fit_opts.sample_size},
                             {"seed", fit_opts.seed},
                             {"serial", fit_opts.serial}};
            config.paths = {{"data", fit_opts.data},
                            {"out", fit_opts.out},
                            {"qq_dir", fit_opts.qq_dir}};
            config.echo("fit-priors");
            const auto data = load_csv(fit_opts.data);
            const auto priors =
                estimate_priors(data, fit_opts.n_boot, fit_opts.sample_size, fit_opts.seed,
                                fit_opts.serial ? ExecPolicy::serial : ExecPolicy::openmp);
            write_json_file(to_json(priors), fit_opts.out);
            config.sidecar(fit_opts.out);
            if (!fit_opts.qq_dir.empty()) write_qq_files(priors, fit_opts.qq_dir);
            std::cout << "wrote " << fit_opts.out << " (skipped " << priors.provenance.skipped
                      << " of " << fit_opts.n_boot << " fits)\n";
            return 0;
        }

        if (*sample) {
            ResolvedConfig config;
            config.params = {{"iterations", sample_opts.iterations},
                             {"burn_in", sample_opts.burn_in},
                             {"seed", sample_opts.seed}};
            config.paths = {{"priors", sample_opts.priors},
                            {"data", sample_opts.data},
                            {"out", sample_opts.out}};
            config.echo("sample");
            const auto outputs = run_sampler(sample_opts.priors, sample_opts.data,
                                             sample_opts.iterations, sample_opts.burn_in,
                                             sample_opts.seed);
            const fs::path out{sample_opts.out};
            write_chain_csv(outputs.chain, out);
            fs::path meta = out;
            meta += ".meta.json";
            write_chain_meta(outputs.chain, meta);
            const fs::path summary_path =
                sample_opts.summary_out.empty()
                    ? fs::path(out).replace_extension(".summary.json")
                    : fs::path(sample_opts.summary_out);
            write_json_file(to_json(outputs.summary), summary_path);
            config.sidecar(out);
            std::cout << "wrote " << out.string() << " (" << outputs.chain.retained()
                      << " retained states) and " << summary_path.string() << "\n";
            return 0;
        }

        if (*curve) {
            const Estimator estimator = estimator_from_string(curve_opts.estimator);
            ResolvedConfig config;
            config.params = {{"demand", curve_opts.demand},
                             {"estimator", curve_opts.estimator},
                             {"mc_draws", curve_opts.mc_draws},
                             {"seed", curve_opts.seed},
                             {"t_max", curve_opts.t_max},
                             {"t_step", curve_opts.t_step},
                             {"variance_convention", curve_opts.variance_convention},
                             {"serial", curve_opts.serial}};
            config.paths = {{"summary", curve_opts.summary},
                            {"chain", curve_opts.chain},
                            {"model", curve_opts.model},
                            {"data", curve_opts.data},
                            {"out", curve_opts.out}};
            config.echo("curve");

            const auto grid = default_t_grid(curve_opts.t_max, curve_opts.t_step);
            const ExecPolicy policy =
                curve_opts.serial ? ExecPolicy::serial : ExecPolicy::openmp;

            std::optional<PosteriorSummary> summary;
            std::optional<PosteriorChain> chain;
            Eigen::VectorXd baseline;
            if (!curve_opts.model.empty()) {
                if (curve_opts.model != "paper")
                    throw ConfigError("unknown --model \"" + curve_opts.model + "\"");
                const auto convention =
                    curve_opts.variance_convention == "sd"
                        ? fixtures::VarianceConvention::sd
                        : fixtures::VarianceConvention::variance;
                summary = fixtures::paper_posterior(convention);
                baseline = fixtures::backsolved_baseline();
            } else if (!curve_opts.summary.empty()) {
                summary = posterior_summary_from_json(read_json_file(curve_opts.summary));
            } else if (!curve_opts.chain.empty()) {
                chain = read_chain_csv(curve_opts.chain);
            } else {
                throw ConfigError("curve needs one of --summary, --chain, or --model");
            }

            if (!curve_opts.baseline.empty()) {
                baseline = parse_baseline(curve_opts.baseline);
            } else if (!curve_opts.data.empty()) {
                baseline = load_csv(curve_opts.data).x.colwise().mean();
            } else if (baseline.size() == 0) {
                throw ConfigError("curve needs a baseline: --baseline or --data");
            }

            FailureCurve result;
            if (estimator == Estimator::monte_carlo) {
                if (!chain)
                    throw ConfigError("the monte-carlo estimator needs --chain");
                result = failure_curve(*chain, baseline, curve_opts.demand, grid,
                                       curve_opts.mc_draws, curve_opts.seed, policy);
            } else {
                if (!summary && chain) summary = summarize(*chain);
                result = failure_curve(*summary, baseline, curve_opts.demand, grid, policy);
            }

            const fs::path out{curve_opts.out};
            write_curve_csv(result, out);
            write_json_file(curve_to_json(result, curve_opts.mc_draws, curve_opts.seed),
                            fs::path(out).replace_extension(".json"));
            config.sidecar(out);
            std::cout << "wrote " << out.string() << " (" << result.size() << " points)\n";
            return 0;
        }

        if (*decide_cmd) {
            ResolvedConfig config;
            config.params = {{"m_max", decide_opts.m_max},
                             {"demand", decide_opts.demand},
                             {"shift_minutes", decide_opts.shift_minutes},
                             {"tactical_floor", decide_opts.tactical_floor},
                             {"growth", decide_opts.growth}};
            config.paths = {{"curve", decide_opts.curve}, {"out", decide_opts.out}};
            config.echo("decide");
            const auto curve_data =
                read_curve_csv(decide_opts.curve, decide_opts.demand, Estimator::plug_in);
            const DecisionConfig decision_config{decide_opts.m_max, decide_opts.demand,
                                                 decide_opts.shift_minutes,
                                                 decide_opts.tactical_floor};
            const auto decision = decide(decision_config, curve_data, decide_opts.growth);
            const auto j = to_json(decision);
            std::cout << j.dump(2) << "\n";
            if (!decide_opts.out.empty()) {
                write_json_file(j, decide_opts.out);
                config.sidecar(decide_opts.out);
            }
            return exit_code(decision.level);
        }

        if (*pipe) {
            const Estimator estimator = estimator_from_string(pipe_opts.estimator);
            ResolvedConfig config;
            config.params = {{"m_max", pipe_opts.m_max},
                             {"demand", pipe_opts.demand},
                             {"shift_minutes", pipe_opts.shift_minutes},
                             {"tactical_floor", pipe_opts.tactical_floor},
                             {"growth", pipe_opts.growth},
                             {"n_boot", pipe_opts.n_boot},
                             {"sample_size", pipe_opts.sample_size},
                             {"iterations", pipe_opts.iterations},
                             {"burn_in", pipe_opts.burn_in},
                             {"estimator", pipe_opts.estimator},
                             {"mc_draws", pipe_opts.mc_draws},
                             {"t_max", pipe_opts.t_max},
                             {"t_step", pipe_opts.t_step},
                             {"seed", pipe_opts.seed},
                             {"serial", pipe_opts.serial},
                             {"preset", pipe_opts.preset}};
            config.paths = {{"data", pipe_opts.data}, {"out_dir", pipe_opts.out_dir}};
            config.echo("pipeline");

            const fs::path dir{pipe_opts.out_dir};
            fs::create_directories(dir);

            ObservationDataset data;
            if (!pipe_opts.data.empty()) {
                data = load_csv(pipe_opts.data);
            } else {
                auto spec = resolve_generator(
                    pipe_opts.preset.empty() ? "facility_like" : pipe_opts.preset, "", 0,
                    derive_seed(pipe_opts.seed, 0), true);
                data = generate(spec);
                write_json_file(to_json(spec), dir / "dataset.spec.json");
            }
            write_csv(data, dir / "dataset.csv");
            write_text_file(summary_text(data, "dataset"), dir / "dataset.summary.txt");

            const DecisionConfig decision_config{pipe_opts.m_max, pipe_opts.demand,
                                                 pipe_opts.shift_minutes,
                                                 pipe_opts.tactical_floor};
            PipelineOptions options;
            options.n_boot = pipe_opts.n_boot;
            options.sample_size = pipe_opts.sample_size;
            options.iterations = pipe_opts.iterations;
            options.burn_in = pipe_opts.burn_in;
            options.estimator = estimator;
            options.mc_draws = pipe_opts.mc_draws;
            options.t_max = pipe_opts.t_max;
            options.t_step = pipe_opts.t_step;
            options.observed_growth = pipe_opts.growth;
            options.policy = pipe_opts.serial ? ExecPolicy::serial : ExecPolicy::openmp;

            const auto result = run_pipeline(data, decision_config, options, pipe_opts.seed);

            write_json_file(config.params, dir / "config.json");
            write_json_file(to_json(result.priors), dir / "priors.json");
            write_qq_files(result.priors, dir / "qq");
            write_chain_csv(result.chain, dir / "chain.csv");
            write_chain_meta(result.chain, dir / "chain.csv.meta.json");
            write_json_file(to_json(result.summary), dir / "summary.json");
            write_curve_csv(result.curve, dir / "curve.csv");
            write_json_file(curve_to_json(result.curve, pipe_opts.mc_draws,
                                          derive_seed(pipe_opts.seed, 3)),
                            dir / "curve.json");
            write_json_file(to_json(result.decision), dir / "decision.json");

            std::cout << to_json(result.decision).dump(2) << "\n";
            std::cout << "artifacts in " << dir.string() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        const auto active = app.get_subcommands();
        const std::string stage = active.empty() ? "fidelity" : active.front()->get_name();
        std::cerr << "error: " << stage << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
