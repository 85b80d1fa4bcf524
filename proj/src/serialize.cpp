#include "fidelity/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "fidelity/errors.hpp"

namespace fidelity {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& cell, const std::filesystem::path& path, int row) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        std::ostringstream msg;
        msg << path.string() << ": row " << row << ": non-numeric cell \"" << cell << "\"";
        throw DataError(msg.str());
    }
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json to_json(const PriorSpec& spec) {
    json coefficients = json::array();
    for (std::size_t j = 0; j < spec.coefficient_priors.size(); ++j) {
        coefficients.push_back({{"name", spec.coefficient_names[j]},
                                {"mean", spec.coefficient_priors[j].mean},
                                {"sd", spec.coefficient_priors[j].sd}});
    }
    return json{{"coefficients", coefficients},
                {"variance", {{"low", spec.variance_prior.low}, {"high", spec.variance_prior.high}}},
                {"provenance",
                 {{"n_boot", spec.provenance.n_boot},
                  {"sample_size", spec.provenance.sample_size},
                  {"seed", spec.provenance.seed},
                  {"skipped", spec.provenance.skipped}}}};
}

PriorSpec prior_spec_from_json(const nlohmann::json& j) {
    PriorSpec spec;
    for (const auto& c : j.at("coefficients")) {
        spec.coefficient_names.push_back(c.at("name").get<std::string>());
        spec.coefficient_priors.push_back({c.at("mean").get<double>(), c.at("sd").get<double>()});
    }
    spec.variance_prior.low = j.at("variance").at("low").get<double>();
    spec.variance_prior.high = j.at("variance").at("high").get<double>();
    if (j.contains("provenance")) {
        const auto& p = j.at("provenance");
        spec.provenance.n_boot = p.value("n_boot", 0);
        spec.provenance.sample_size = p.value("sample_size", 0);
        spec.provenance.seed = p.value("seed", std::uint64_t{0});
        spec.provenance.skipped = p.value("skipped", 0);
    }
    if (spec.coefficient_priors.empty())
        throw DataError("prior spec: no coefficients");
    return spec;
}

nlohmann::json to_json(const PosteriorSummary& summary) {
    json parameters = json::array();
    for (int j = 0; j < summary.means.size(); ++j) {
        parameters.push_back({{"name", summary.names[static_cast<std::size_t>(j)]},
                              {"mean", summary.means(j)},
                              {"sd", summary.sds(j)}});
    }
    return json{{"parameters", parameters}, {"predictive_variance", summary.predictive_variance}};
}

PosteriorSummary posterior_summary_from_json(const nlohmann::json& j) {
    PosteriorSummary summary;
    const auto& parameters = j.at("parameters");
    summary.means.resize(static_cast<int>(parameters.size()));
    summary.sds.resize(static_cast<int>(parameters.size()));
    int k = 0;
    for (const auto& p : parameters) {
        summary.names.push_back(p.at("name").get<std::string>());
        summary.means(k) = p.at("mean").get<double>();
        summary.sds(k) = p.at("sd").get<double>();
        ++k;
    }
    summary.predictive_variance = j.at("predictive_variance").get<double>();
    if (summary.means.size() < 2) throw DataError("posterior summary: too few parameters");
    return summary;
}

nlohmann::json to_json(const FidelityDecision& decision) {
    return json{{"level", to_string(decision.level)},
                {"observed_growth", decision.observed_growth},
                {"k_critical", decision.k_critical},
                {"p_failure_at_k", decision.p_failure_at_k}};
}

nlohmann::json to_json(const GeneratorSpec& spec) {
    json ranges = json::array();
    for (const auto& [low, high] : spec.predictor_ranges)
        ranges.push_back({{"low", low}, {"high", high}});
    std::vector<double> coefficients(spec.true_coefficients.data(),
                                     spec.true_coefficients.data() + spec.true_coefficients.size());
    return json{{"m", spec.m},
                {"true_coefficients", coefficients},
                {"noise_sd", spec.noise_sd},
                {"predictor_ranges", ranges},
                {"n", spec.n},
                {"seed", spec.seed}};
}

GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
    GeneratorSpec spec;
    spec.m = j.at("m").get<int>();
    const auto coefficients = j.at("true_coefficients").get<std::vector<double>>();
    spec.true_coefficients =
        Eigen::Map<const Eigen::VectorXd>(coefficients.data(), static_cast<int>(coefficients.size()));
    spec.noise_sd = j.at("noise_sd").get<double>();
    for (const auto& r : j.at("predictor_ranges"))
        spec.predictor_ranges.emplace_back(r.at("low").get<double>(), r.at("high").get<double>());
    spec.n = j.at("n").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    validate(spec);
    return spec;
}

nlohmann::json curve_to_json(const FailureCurve& curve, int mc_draws, std::uint64_t seed) {
    json points = json::array();
    for (int i = 0; i < curve.size(); ++i)
        points.push_back({{"t_percent", curve.t_percent[static_cast<std::size_t>(i)]},
                          {"p_failure", curve.p_failure[static_cast<std::size_t>(i)]}});
    json j{{"demand", curve.demand},
           {"estimator", to_string(curve.estimator)},
           {"points", points}};
    if (curve.estimator == Estimator::monte_carlo) {
        j["mc_draws"] = mc_draws;
        j["seed"] = seed;
    }
    return j;
}

void write_chain_csv(const PosteriorChain& chain, const std::filesystem::path& path) {
    auto out = open_out(path);
    std::string buf;
    for (const auto& name : chain.coefficient_names) {
        buf += name;
        buf += ',';
    }
    buf += "sigma2\n";
    for (int i = 0; i < chain.retained(); ++i) {
        for (int j = 0; j < chain.samples.cols(); ++j) {
            if (j > 0) buf += ',';
            buf += format_double(chain.samples(i, j));
        }
        buf += '\n';
    }
    out << buf;
}

void write_chain_meta(const PosteriorChain& chain, const std::filesystem::path& path) {
    write_json_file(json{{"seed", chain.seed},
                         {"iterations", chain.total_iterations},
                         {"burn_in", chain.burn_in}},
                    path);
}

PosteriorChain read_chain_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    const auto header = split_line(line);
    if (header.size() < 2 || header.back() != "sigma2")
        throw DataError(path.string() + ": expected chain header b0,...,bm,sigma2");

    PosteriorChain chain;
    chain.coefficient_names.assign(header.begin(), header.end() - 1);
    std::vector<double> values;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            std::ostringstream msg;
            msg << path.string() << ": row " << rows << ": expected " << header.size()
                << " cells, got " << cells.size();
            throw DataError(msg.str());
        }
        for (const auto& cell : cells) values.push_back(parse_double(cell, path, rows));
    }
    if (rows == 0) throw DataError(path.string() + ": chain has no states");
    const int cols = static_cast<int>(header.size());
    chain.samples.resize(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            chain.samples(i, j) = values[static_cast<std::size_t>(i) * cols + j];
    chain.total_iterations = rows;
    chain.burn_in = 0;
    return chain;
}

void write_curve_csv(const FailureCurve& curve, const std::filesystem::path& path) {
    auto out = open_out(path);
    std::string buf = "t_percent,p_failure\n";
    for (int i = 0; i < curve.size(); ++i) {
        buf += format_double(curve.t_percent[static_cast<std::size_t>(i)]);
        buf += ',';
        buf += format_double(curve.p_failure[static_cast<std::size_t>(i)]);
        buf += '\n';
    }
    out << buf;
}

FailureCurve read_curve_csv(const std::filesystem::path& path, double demand,
                            Estimator estimator) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    if (split_line(line) != std::vector<std::string>{"t_percent", "p_failure"})
        throw DataError(path.string() + ": expected header t_percent,p_failure");

    FailureCurve curve;
    curve.demand = demand;
    curve.estimator = estimator;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        const auto cells = split_line(line);
        if (cells.size() != 2) {
            std::ostringstream msg;
            msg << path.string() << ": row " << rows << ": expected 2 cells, got " << cells.size();
            throw DataError(msg.str());
        }
        curve.t_percent.push_back(parse_double(cells[0], path, rows));
        curve.p_failure.push_back(parse_double(cells[1], path, rows));
    }
    if (curve.size() < 2) throw DataError(path.string() + ": curve needs at least two points");
    for (int i = 0; i < curve.size(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        if (i > 0 && !(curve.t_percent[k] > curve.t_percent[k - 1]))
            throw DataError(path.string() + ": t_percent must be strictly increasing");
        if (!(curve.p_failure[k] >= 0.0 && curve.p_failure[k] <= 1.0))
            throw DataError(path.string() + ": p_failure outside [0, 1]");
    }
    return curve;
}

void write_qq_csv(std::span<const QqPoint> points, const std::filesystem::path& path) {
    auto out = open_out(path);
    std::string buf = "theoretical,sample\n";
    for (const auto& point : points) {
        buf += format_double(point.theoretical);
        buf += ',';
        buf += format_double(point.sample);
        buf += '\n';
    }
    out << buf;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << text;
}

void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace fidelity
