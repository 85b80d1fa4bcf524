// Times the data-parallel kernels against their serial reference
// implementations and verifies that both produce identical results.

#include <omp.h>

#include <cstdio>
#include <cstdlib>

#include "fidelity/failure.hpp"
#include "fidelity/gibbs.hpp"
#include "fidelity/priors.hpp"
#include "fidelity/synth.hpp"

using namespace fidelity;

namespace {

template <typename Fn>
double time_best_of(int repeats, const Fn& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const double start = omp_get_wtime();
        fn();
        best = std::min(best, omp_get_wtime() - start);
    }
    return best;
}

void report(const char* kernel, double serial_s, double parallel_s, bool identical) {
    std::printf("%-32s %10.1f ms %10.1f ms %7.2fx   %s\n", kernel, serial_s * 1e3,
                parallel_s * 1e3, serial_s / parallel_s, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const int n_boot = argc > 1 ? std::atoi(argv[1]) : 2000;
    const auto data = generate(facility_like(2000, 1142));
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-32s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    // bootstrap prior estimation
    PriorSpec serial_priors, parallel_priors;
    const double boot_serial = time_best_of(3, [&] {
        serial_priors = estimate_priors(data, n_boot, 500, 7, ExecPolicy::serial);
    });
    const double boot_parallel = time_best_of(3, [&] {
        parallel_priors = estimate_priors(data, n_boot, 500, 7, ExecPolicy::openmp);
    });
    const bool boot_same =
        serial_priors.provenance.coefficient_draws == parallel_priors.provenance.coefficient_draws &&
        serial_priors.provenance.variance_draws == parallel_priors.provenance.variance_draws;
    report("bootstrap priors (n_boot x 500)", boot_serial, boot_parallel, boot_same);

    // failure curves need a posterior chain; the chain itself is strictly
    // sequential so it is timed once as context, not compared
    GibbsOptions options;
    options.iterations = 5000;
    options.burn_in = 1000;
    options.seed = 3;
    const double chain_start = omp_get_wtime();
    const auto chain = run_chain(parallel_priors, data, options);
    std::printf("%-32s %10.1f ms   (sequential by construction)\n", "gibbs chain (5000 sweeps)",
                (omp_get_wtime() - chain_start) * 1e3);

    const Eigen::VectorXd baseline = data.x.colwise().mean();
    const auto grid = default_t_grid(100.0, 0.25);

    FailureCurve serial_curve, parallel_curve;
    const double plug_serial = time_best_of(5, [&] {
        serial_curve = failure_curve(summarize(chain), baseline, 100.0, grid,
                                     ExecPolicy::serial);
    });
    const double plug_parallel = time_best_of(5, [&] {
        parallel_curve = failure_curve(summarize(chain), baseline, 100.0, grid,
                                       ExecPolicy::openmp);
    });
    report("plug-in curve (401 points)", plug_serial, plug_parallel,
           serial_curve.p_failure == parallel_curve.p_failure);

    FailureCurve mc_serial, mc_parallel;
    const double mc_serial_s = time_best_of(3, [&] {
        mc_serial = failure_curve(chain, baseline, 100.0, grid, 100000, 11, ExecPolicy::serial);
    });
    const double mc_parallel_s = time_best_of(3, [&] {
        mc_parallel = failure_curve(chain, baseline, 100.0, grid, 100000, 11,
                                    ExecPolicy::openmp);
    });
    report("monte-carlo curve (401 points)", mc_serial_s, mc_parallel_s,
           mc_serial.p_failure == mc_parallel.p_failure);

    const bool all_same = boot_same && serial_curve.p_failure == parallel_curve.p_failure &&
                          mc_serial.p_failure == mc_parallel.p_failure;
    return all_same ? 0 : 1;
}
