#include "qkonc/runtime_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qkonc {

std::string to_string(Scope scope) {
    return scope == Scope::per_entry ? "per-entry" : "full-gram";
}

Scope scope_from_string(const std::string& text) {
    if (text == "per-entry") {
        return Scope::per_entry;
    }
    if (text == "full-gram") {
        return Scope::full_gram;
    }
    throw std::invalid_argument("unknown scope '" + text + "' (expected per-entry or full-gram)");
}

double circuit_time(int n, const RuntimeParams& params) {
    return kernel_circuit_layer_count(n) * params.t_gate + params.t_meas;
}

namespace {

double pair_count(int m) {
    return static_cast<double>(m) * (m - 1) / 2.0;
}

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point begin, Clock::time_point end) {
    return std::chrono::duration<double>(end - begin).count();
}

// Smallest positive step the monotonic clock resolves, from the minimum
// nonzero delta between consecutive samples.
double timer_resolution_seconds() {
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 16; ++trial) {
        const auto t0 = Clock::now();
        auto t1 = Clock::now();
        while (t1 == t0) {
            t1 = Clock::now();
        }
        best = std::min(best, elapsed_seconds(t0, t1));
    }
    return best;
}

} // namespace

double quantum_runtime(int n, const RuntimeParams& params, const ShotPlan& plan, Scope scope,
                       int m) {
    double t = required_shots(n, plan) * circuit_time(n, params);
    if (scope == Scope::full_gram) {
        t *= pair_count(m);
    }
    return t;
}

ClassicalBenchmark benchmark_classical(int n, const SweepConfig& config, int repetitions,
                                       bool include_datagen) {
    if (repetitions < 3) {
        throw std::invalid_argument("benchmark_classical: need at least 3 repetitions");
    }
    const std::uint64_t dataset_seed = config.seed ^ static_cast<std::uint64_t>(n);
    const FeatureMapSpec spec{.n = n, .reps = config.reps};
    const Dataset ds = generate_dataset(config.m, n, dataset_seed, config.low, config.high);

    volatile double sink = 0.0; // keeps the Gram computation observable
    auto run_once = [&]() {
        if (include_datagen) {
            const Dataset fresh =
                generate_dataset(config.m, n, dataset_seed, config.low, config.high);
            sink = gram_matrix(fresh, spec, 1).at(0, config.m - 1);
        } else {
            sink = gram_matrix(ds, spec, 1).at(0, config.m - 1);
        }
    };

    run_once(); // warmup

    ClassicalBenchmark bench;
    bench.samples.reserve(repetitions);
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto t0 = Clock::now();
        run_once();
        bench.samples.push_back(elapsed_seconds(t0, Clock::now()));
    }
    std::vector<double> sorted = bench.samples;
    std::sort(sorted.begin(), sorted.end());
    bench.seconds = sorted[sorted.size() / 2];
    if (sorted.size() % 2 == 0) {
        bench.seconds = 0.5 * (sorted[sorted.size() / 2 - 1] + sorted[sorted.size() / 2]);
    }
    bench.timer_warning = timer_resolution_seconds() > 0.01 * bench.seconds;
    (void)sink;
    return bench;
}

RuntimeCurve runtime_comparison(std::span<const int> qubit_list, const SweepConfig& sweep,
                                const RuntimeParams& params, const ComparisonOptions& options) {
    RuntimeCurve curve;
    curve.scope = options.scope;
    curve.m = sweep.m;
    curve.concentration = concentration_sweep(qubit_list, sweep);

    std::vector<std::pair<double, double>> mean_points;
    std::vector<std::pair<double, double>> std_points;
    for (const ConcentrationPoint& pt : curve.concentration) {
        mean_points.emplace_back(pt.n, pt.mean);
        std_points.emplace_back(pt.n, pt.std_dev);
    }
    curve.mu_fit = fit_exponential(mean_points);
    curve.sigma_fit = fit_exponential(std_points);
    if (curve.mu_fit.r_squared < 0.5 || curve.sigma_fit.r_squared < 0.5) {
        curve.warnings.push_back("concentration fit r^2 below 0.5; shot model untrustworthy");
    }

    const ShotPlan plan{params.gamma, curve.mu_fit, curve.sigma_fit};

    for (int n : qubit_list) {
        RuntimeRecord rec;
        rec.n = n;
        rec.layers = kernel_circuit_layer_count(n);
        rec.shots = required_shots(n, plan);
        rec.t_circ_s = circuit_time(n, params);
        rec.t_quantum_s = quantum_runtime(n, params, plan, options.scope, sweep.m);
        const ClassicalBenchmark bench = benchmark_classical(
            n, sweep, options.benchmark_repetitions, options.benchmark_includes_datagen);
        rec.t_classical_s = bench.seconds / (options.scope == Scope::full_gram
                                                 ? 1.0
                                                 : pair_count(sweep.m));
        curve.timer_warning = curve.timer_warning || bench.timer_warning;
        curve.records.push_back(rec);
    }

    if (curve.records.size() >= 2) {
        std::vector<std::pair<double, double>> tq_points;
        std::vector<std::pair<double, double>> tc_points;
        for (const RuntimeRecord& rec : curve.records) {
            if (rec.t_quantum_s > 0.0) {
                tq_points.emplace_back(rec.n, rec.t_quantum_s);
            }
            if (rec.t_classical_s > 0.0) {
                tc_points.emplace_back(rec.n, rec.t_classical_s);
            }
        }
        if (tq_points.size() >= 2) {
            curve.t_quantum_fit = fit_exponential(tq_points);
        }
        if (tc_points.size() >= 2) {
            curve.t_classical_fit = fit_exponential(tc_points);
        }
    }
    if (curve.timer_warning) {
        curve.warnings.push_back("timer resolution coarser than 1% of a benchmark median");
    }
    return curve;
}

} // namespace qkonc
