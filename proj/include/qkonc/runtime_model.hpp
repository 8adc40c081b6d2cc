#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qkonc/shot_model.hpp"

namespace qkonc {

struct RuntimeParams {
    double t_gate = 1e-8; // single gate/layer execution time, seconds
    double t_meas = 1e-7; // measurement duration, seconds
    double gamma = 10.0;  // precision ratio
};

// Whether modeled and measured times cover one kernel entry or all
// m(m-1)/2 independent Gram entries.
enum class Scope { per_entry, full_gram };

std::string to_string(Scope scope);
Scope scope_from_string(const std::string& text);

// t_circ(n) = N_l(n) * t_gate + t_meas
double circuit_time(int n, const RuntimeParams& params);

// T_Q(n) = R(n) * t_circ(n), scaled by m(m-1)/2 under full-gram scope.
double quantum_runtime(int n, const RuntimeParams& params, const ShotPlan& plan, Scope scope,
                       int m);

struct ClassicalBenchmark {
    double seconds = 0.0;        // median of the timed repetitions
    std::vector<double> samples; // individual timed runs, in run order
    bool timer_warning = false;  // clock resolution coarser than 1% of median
};

/**
 * Wall-clock time of one full Gram computation at the sweep's dataset
 * parameters (dataset seed = config.seed XOR n): one untimed warmup, then
 * `repetitions` timed runs, median reported. The timed region is always
 * single-threaded so the result reflects one-core simulation cost; dataset
 * generation is outside the timed region unless include_datagen is set.
 */
ClassicalBenchmark benchmark_classical(int n, const SweepConfig& config, int repetitions,
                                       bool include_datagen = false);

struct RuntimeRecord {
    int n;
    int layers;          // N_l(n)
    double shots;        // R(n)
    double t_circ_s;     // single-circuit time
    double t_quantum_s;  // modeled quantum runtime at the curve's scope
    double t_classical_s; // measured simulation time at the curve's scope
};

struct RuntimeCurve {
    Scope scope = Scope::full_gram;
    int m = 0;
    std::vector<ConcentrationPoint> concentration;
    ExpFit mu_fit;
    ExpFit sigma_fit;
    std::vector<RuntimeRecord> records;
    // Log-linear fits of the two runtime curves; the growth exponent per
    // qubit is -alpha.
    std::optional<ExpFit> t_quantum_fit;
    std::optional<ExpFit> t_classical_fit;
    bool timer_warning = false;
    std::vector<std::string> warnings;
};

struct ComparisonOptions {
    Scope scope = Scope::full_gram;
    int benchmark_repetitions = 3;
    bool benchmark_includes_datagen = false;
};

/**
 * Full comparison pipeline: concentration sweep over qubit_list, decay fits
 * for mean and std, then per-n shot counts, modeled quantum runtime, and the
 * measured classical benchmark, all at the same scope.
 */
RuntimeCurve runtime_comparison(std::span<const int> qubit_list, const SweepConfig& sweep,
                                const RuntimeParams& params, const ComparisonOptions& options);

} // namespace qkonc
