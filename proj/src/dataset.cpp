#include "fidelity/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>

#include "fidelity/errors.hpp"
#include "fidelity/rng.hpp"

namespace fidelity {

namespace {

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

double parse_cell(const std::string& cell, int row, const std::string& column,
                  const std::filesystem::path& path) {
    if (cell.empty()) {
        std::ostringstream msg;
        msg << path.string() << ": row " << row << ", column \"" << column
            << "\": missing cell";
        throw DataError(msg.str());
    }
    std::string_view sv{cell};
    // from_chars does not accept a leading '+'
    if (!sv.empty() && sv.front() == '+') sv.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
        std::ostringstream msg;
        msg << path.string() << ": row " << row << ", column \"" << column
            << "\": non-numeric cell \"" << cell << "\"";
        throw DataError(msg.str());
    }
    return value;
}

void format_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

}  // namespace

void validate(const ObservationDataset& data) {
    const int m = data.m();
    const int n = data.n();
    if (m < 1) throw DataError("dataset: need at least one predictor column");
    if (static_cast<int>(data.predictor_names.size()) != m)
        throw DataError("dataset: predictor name count does not match columns");
    if (data.y.size() != n) throw DataError("dataset: y length does not match row count");
    if (n < m + 2) {
        std::ostringstream msg;
        msg << "dataset: " << n << " rows is too few for " << m
            << " predictors (need at least m + 2 = " << m + 2 << ")";
        throw DataError(msg.str());
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double v = data.x(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream msg;
                msg << "dataset: row " << i + 1 << ", column \"" << data.predictor_names[j]
                    << "\": predictor must be finite and nonnegative, got " << v;
                throw DataError(msg.str());
            }
        }
        if (!std::isfinite(data.y(i))) {
            std::ostringstream msg;
            msg << "dataset: row " << i + 1 << ", column \"" << data.response_name
                << "\": response must be finite";
            throw DataError(msg.str());
        }
    }
}

ObservationDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    auto header = split_line(line);
    if (header.size() < 2)
        throw DataError(path.string() + ": header needs at least one predictor and a response");

    ObservationDataset data;
    data.predictor_names.assign(header.begin(), header.end() - 1);
    data.response_name = header.back();
    const int m = static_cast<int>(data.predictor_names.size());

    std::vector<double> xs;
    std::vector<double> ys;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        const auto cells = split_line(line);
        if (static_cast<int>(cells.size()) != m + 1) {
            std::ostringstream msg;
            msg << path.string() << ": row " << row << ": expected " << m + 1
                << " cells, got " << cells.size();
            throw DataError(msg.str());
        }
        for (int j = 0; j <= m; ++j) {
            const std::string& column = j < m ? data.predictor_names[j] : data.response_name;
            const double v = parse_cell(cells[j], row, column, path);
            if (j < m)
                xs.push_back(v);
            else
                ys.push_back(v);
        }
    }

    const int n = row;
    data.x.resize(n, m);
    data.y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) data.x(i, j) = xs[static_cast<std::size_t>(i) * m + j];
        data.y(i) = ys[i];
    }
    validate(data);
    return data;
}

void write_csv(const ObservationDataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    std::string buf;
    for (const auto& name : data.predictor_names) {
        buf += name;
        buf += ',';
    }
    buf += data.response_name;
    buf += '\n';
    for (int i = 0; i < data.n(); ++i) {
        for (int j = 0; j < data.m(); ++j) {
            format_double(buf, data.x(i, j));
            buf += ',';
        }
        format_double(buf, data.y(i));
        buf += '\n';
    }
    out << buf;
    if (!out) throw DataError("write failed for " + path.string());
}

ObservationDataset bootstrap_resample(const ObservationDataset& data, int size,
                                      std::uint64_t seed) {
    const int n = data.n();
    if (n < 1) throw DataError("bootstrap_resample: source has no rows");
    if (size < data.m() + 2) {
        std::ostringstream msg;
        msg << "bootstrap_resample: size " << size << " is below the minimum m + 2 = "
            << data.m() + 2;
        throw DataError(msg.str());
    }

    auto rng = make_engine(seed);
    std::uniform_int_distribution<int> pick(0, n - 1);

    ObservationDataset out;
    out.predictor_names = data.predictor_names;
    out.response_name = data.response_name;
    out.x.resize(size, data.m());
    out.y.resize(size);
    for (int i = 0; i < size; ++i) {
        const int k = pick(rng);
        out.x.row(i) = data.x.row(k);
        out.y(i) = data.y(k);
    }
    return out;
}

std::string summary_text(const ObservationDataset& data, const std::string& name) {
    std::ostringstream out;
    out << "dataset: " << name << "\n";
    out << "predictors (m): " << data.m() << "\n";
    out << "rows (n): " << data.n() << "\n";
    out << "column,mean,sd\n";
    auto emit = [&out](const std::string& column, const Eigen::VectorXd& v) {
        const double mean = v.mean();
        const double sd =
            v.size() > 1 ? std::sqrt((v.array() - mean).square().sum() / (v.size() - 1)) : 0.0;
        std::string line = column;
        line += ',';
        format_double(line, mean);
        line += ',';
        format_double(line, sd);
        out << line << "\n";
    };
    for (int j = 0; j < data.m(); ++j) emit(data.predictor_names[j], data.x.col(j));
    emit(data.response_name, data.y);
    return out.str();
}

bool identical(const ObservationDataset& a, const ObservationDataset& b) {
    if (a.predictor_names != b.predictor_names || a.response_name != b.response_name)
        return false;
    if (a.n() != b.n() || a.m() != b.m()) return false;
    for (int i = 0; i < a.n(); ++i) {
        for (int j = 0; j < a.m(); ++j)
            if (a.x(i, j) != b.x(i, j)) return false;
        if (a.y(i) != b.y(i)) return false;
    }
    return true;
}

}  // namespace fidelity
