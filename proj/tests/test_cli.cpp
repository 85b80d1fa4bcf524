// End-to-end checks of the command-line binary. The harness passes the
// binary location through the FIDELITY_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli() {
    const char* path = std::getenv("FIDELITY_CLI");
    REQUIRE_MESSAGE(path != nullptr, "FIDELITY_CLI must point at the fidelity binary");
    return path;
}

int run(const std::string& args) {
    const std::string command = cli() + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(command.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("fidelity_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int value = 0;
        return value;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("gen-data requires --out and is reproducible") {
    TempDir dir;
    CHECK(run("gen-data --preset facility_like --seed 7") == 1);
    CHECK(run("gen-data --preset facility_like --seed 7 --n 300 --out " + dir.file("a.csv")) == 0);
    CHECK(run("gen-data --preset facility_like --seed 7 --n 300 --out " + dir.file("b.csv")) == 0);
    CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
    CHECK(slurp(dir.file("a.csv.spec.json")) == slurp(dir.file("b.csv.spec.json")));
    CHECK(run("gen-data --preset unknown --seed 7 --out " + dir.file("c.csv")) == 1);
}

TEST_CASE("fit-priors rejects malformed data with a nonzero exit") {
    TempDir dir;
    {
        std::ofstream bad(dir.file("bad.csv"));
        bad << "x1,y\n1,abc\n2,4\n3,6\n";
    }
    CHECK(run("fit-priors --data " + dir.file("bad.csv") + " --out " + dir.file("p.json")) == 1);
    CHECK(run("fit-priors --data " + dir.file("nonexistent.csv") + " --out " +
              dir.file("p.json")) == 1);
}

TEST_CASE("fit-priors honors config-file defaults with flag overrides") {
    TempDir dir;
    REQUIRE(run("gen-data --preset facility_like --seed 3 --n 400 --out " + dir.file("d.csv")) ==
            0);
    {
        std::ofstream config(dir.file("config.json"));
        config << R"({"n_boot": 64, "sample_size": 128, "seed": 21})";
    }
    REQUIRE(run("fit-priors --config " + dir.file("config.json") + " --data " +
                dir.file("d.csv") + " --n-boot 32 --out " + dir.file("p.json")) == 0);
    const auto priors = nlohmann::json::parse(slurp(dir.file("p.json")));
    CHECK(priors["provenance"]["n_boot"] == 32);        // flag wins
    CHECK(priors["provenance"]["sample_size"] == 128);  // config value
    CHECK(priors["provenance"]["seed"] == 21);
    CHECK(priors["coefficients"].size() == 9);
}

TEST_CASE("sample validates burn-in and emits chain plus summary") {
    TempDir dir;
    REQUIRE(run("gen-data --preset facility_like --seed 5 --n 400 --out " + dir.file("d.csv")) ==
            0);
    REQUIRE(run("fit-priors --data " + dir.file("d.csv") + " --n-boot 40 --sample-size 100 "
                "--seed 2 --out " + dir.file("p.json")) == 0);
    CHECK(run("sample --priors " + dir.file("p.json") + " --data " + dir.file("d.csv") +
              " --iterations 100 --burn-in 100 --seed 1 --out " + dir.file("c.csv")) == 1);
    CHECK(run("sample --priors " + dir.file("p.json") + " --data " + dir.file("d.csv") +
              " --iterations 300 --burn-in 50 --seed 1 --out " + dir.file("c.csv")) == 0);
    const auto meta = nlohmann::json::parse(slurp(dir.file("c.csv.meta.json")));
    CHECK(meta["iterations"] == 300);
    CHECK(meta["burn_in"] == 50);
    CHECK(meta["seed"] == 1);
    const auto summary = nlohmann::json::parse(slurp(dir.file("c.summary.json")));
    CHECK(summary["parameters"].size() == 10);

    // monte-carlo curve straight from the chain
    CHECK(run("curve --chain " + dir.file("c.csv") + " --data " + dir.file("d.csv") +
              " --demand 100 --estimator monte-carlo --seed 4 --out " + dir.file("mc.csv")) ==
          0);
    const auto curve_json = nlohmann::json::parse(slurp(dir.file("mc.json")));
    CHECK(curve_json["estimator"] == "monte-carlo");
    CHECK(curve_json["points"].size() == 101);
}

TEST_CASE("decide encodes the level in its exit status") {
    TempDir dir;
    {
        std::ofstream curve(dir.file("curve.csv"));
        curve << "t_percent,p_failure\n";
        for (int t = 0; t <= 100; ++t) curve << t << ",0.3\n";
    }
    const std::string base = "decide --curve " + dir.file("curve.csv") +
                             " --m-max 30 --demand 100 ";
    CHECK(run(base + "--growth 0.5") == 0);   // operational
    CHECK(run(base + "--growth 10") == 2);    // tactical
    CHECK(run(base + "--growth 30") == 3);    // strategic
    CHECK(run(base + "--growth -4") == 1);    // usage error
    CHECK(run("decide --curve " + dir.file("curve.csv") + " --m-max 30 --demand 100") == 1);
}

TEST_CASE("curve from the reference model hits the expected probability") {
    TempDir dir;
    REQUIRE(run("curve --model paper --demand 100 --out " + dir.file("paper.csv")) == 0);
    const auto curve = nlohmann::json::parse(slurp(dir.file("paper.json")));
    const auto& point = curve["points"][26];
    CHECK(point["t_percent"] == 26.0);
    CHECK(std::fabs(point["p_failure"].get<double>() - 0.625) < 0.0005);

    // explicit baseline overrides the model default
    REQUIRE(run("curve --model paper --demand 100 --baseline 10,10,10,10,10,10,10,10 --out " +
                dir.file("flat.csv")) == 0);
    const auto custom = nlohmann::json::parse(slurp(dir.file("flat.json")));
    CHECK(custom["points"].size() == 101);
    CHECK(run("curve --model unknown --demand 100 --out " + dir.file("x.csv")) == 1);
    CHECK(run("curve --demand 100 --out " + dir.file("y.csv")) == 1);
}

TEST_CASE("pipeline produces a complete, reproducible artifact set") {
    TempDir dir;
    const std::string args =
        " --preset facility_like --m-max 30 --demand 100 --growth 12 --n-boot 48 "
        "--sample-size 96 --iterations 400 --burn-in 100 --seed 2024 --out-dir ";
    REQUIRE(run("pipeline" + args + dir.file("run_a")) == 0);
    REQUIRE(run("pipeline" + args + dir.file("run_b")) == 0);
    for (const char* name : {"dataset.csv", "priors.json", "chain.csv", "chain.csv.meta.json",
                             "summary.json", "curve.csv", "curve.json", "decision.json",
                             "config.json", "qq/qq_b0.csv", "qq/qq_variance.csv"}) {
        CAPTURE(name);
        CHECK(slurp(dir.path / "run_a" / name) == slurp(dir.path / "run_b" / name));
    }
    const auto decision = nlohmann::json::parse(slurp(dir.path / "run_a" / "decision.json"));
    CHECK(decision["level"] == "Tactical");
    CHECK(decision["k_critical"] == 26.0);
}

