#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qkonc/report.hpp"
#include "qkonc/version.hpp"

namespace {

using qkonc::ExperimentConfig;

struct CliOverrides {
    std::string config_path;
    std::vector<int> qubits;
    int m = 0;
    std::uint64_t seed = 0;
    int reps = 0;
    double low = 0.0;
    double high = 0.0;
    double gamma = 0.0;
    double t_gate = 0.0;
    double t_meas = 0.0;
    std::string scope;
    std::string out_dir;
    int bench_repetitions = 0;
    bool bench_include_datagen = false;
    int threads = 0;
};

// Registers the shared experiment flags on a subcommand. Values land in
// `ovr`; which of them were actually given is read back via sub->count().
void add_common_options(CLI::App* sub, CliOverrides& ovr) {
    sub->add_option("--config", ovr.config_path, "JSON config file; flags override its values");
    sub->add_option("--qubits", ovr.qubits, "Comma-separated ascending qubit counts")
        ->delimiter(',');
    sub->add_option("--m", ovr.m, "Dataset size (points per sweep step)");
    sub->add_option("--seed", ovr.seed, "Master RNG seed (per-n dataset seed = seed XOR n)");
    sub->add_option("--reps", ovr.reps, "Feature map repetitions");
    sub->add_option("--low", ovr.low, "Lower sampling bound (radians)");
    sub->add_option("--high", ovr.high, "Upper sampling bound (radians)");
    sub->add_option("--gamma", ovr.gamma, "Precision ratio");
    sub->add_option("--t-gate", ovr.t_gate, "Gate/layer execution time in seconds");
    sub->add_option("--t-meas", ovr.t_meas, "Measurement duration in seconds");
    sub->add_option("--scope", ovr.scope, "Runtime scope: per-entry or full-gram");
    sub->add_option("--out", ovr.out_dir, "Output directory");
    sub->add_option("--bench-reps", ovr.bench_repetitions, "Timed benchmark repetitions (>= 3)");
    sub->add_flag("--bench-include-datagen", ovr.bench_include_datagen,
                  "Time dataset generation inside the benchmark");
    sub->add_option("--threads", ovr.threads,
                    "Worker threads for sweep Gram assembly (benchmark stays single-threaded)");
}

ExperimentConfig build_config(const CLI::App* sub, const CliOverrides& ovr) {
    ExperimentConfig config;
    if (!ovr.config_path.empty()) {
        std::ifstream file(ovr.config_path);
        if (!file) {
            throw std::runtime_error("cannot open config file '" + ovr.config_path + "'");
        }
        nlohmann::json j;
        try {
            file >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("cannot parse config file '" + ovr.config_path +
                                     "': " + e.what());
        }
        config = qkonc::config_from_json(j, config);
    } else if (const char* env_seed = std::getenv("QKONC_SEED")) {
        config.seed = std::stoull(env_seed);
    }

    if (sub->count("--qubits")) config.qubits = ovr.qubits;
    if (sub->count("--m")) config.m = ovr.m;
    if (sub->count("--seed")) config.seed = ovr.seed;
    if (sub->count("--reps")) config.reps = ovr.reps;
    if (sub->count("--low")) config.low = ovr.low;
    if (sub->count("--high")) config.high = ovr.high;
    if (sub->count("--gamma")) config.gamma = ovr.gamma;
    if (sub->count("--t-gate")) config.t_gate = ovr.t_gate;
    if (sub->count("--t-meas")) config.t_meas = ovr.t_meas;
    if (sub->count("--scope")) config.scope = qkonc::scope_from_string(ovr.scope);
    if (sub->count("--out")) config.out_dir = ovr.out_dir;
    if (sub->count("--bench-reps")) config.bench_repetitions = ovr.bench_repetitions;
    if (sub->count("--bench-include-datagen"))
        config.bench_include_datagen = ovr.bench_include_datagen;
    if (sub->count("--threads")) config.threads = ovr.threads;
    return config;
}

void print_fit(const char* name, const std::optional<qkonc::ExpFit>& fit) {
    if (fit) {
        std::printf("  %s: C=%.6g alpha=%.6g r2=%.4f\n", name, fit->C, fit->alpha,
                    fit->r_squared);
    } else {
        std::printf("  %s: skipped (insufficient points)\n", name);
    }
}

int cmd_concentration(const ExperimentConfig& config) {
    const qkonc::ExperimentReport report = qkonc::run_concentration(config);
    std::printf("concentration sweep: %zu points, m=%d\n", report.concentration.size(),
                config.m);
    for (const auto& pt : report.concentration) {
        std::printf("  n=%2d  mean=%.6e  std=%.6e\n", pt.n, pt.mean, pt.std_dev);
    }
    print_fit("mean fit", report.mu_fit);
    print_fit("std fit ", report.sigma_fit);
    std::printf("wrote %s/{concentration.csv,fits.json,concentration.svg} in %.2fs\n",
                config.out_dir.c_str(), report.total_wall_time_s);
    return 0;
}

int cmd_compare(const ExperimentConfig& config) {
    const qkonc::ExperimentReport report = qkonc::run_comparison(config);
    const qkonc::RuntimeCurve& curve = *report.runtime;
    std::printf("runtime comparison (%s, m=%d):\n", qkonc::to_string(curve.scope).c_str(),
                curve.m);
    for (const auto& rec : curve.records) {
        std::printf("  n=%2d  layers=%3d  shots=%.4e  T_Q=%.4e s  T_C=%.4e s\n", rec.n,
                    rec.layers, rec.shots, rec.t_quantum_s, rec.t_classical_s);
    }
    if (curve.t_quantum_fit) {
        std::printf("  T_Q growth exponent per qubit: %.4f (r2=%.4f)\n",
                    -curve.t_quantum_fit->alpha, curve.t_quantum_fit->r_squared);
    }
    if (curve.t_classical_fit) {
        std::printf("  T_C growth exponent per qubit: %.4f (r2=%.4f)\n",
                    -curve.t_classical_fit->alpha, curve.t_classical_fit->r_squared);
    }
    for (const std::string& warning : report.warnings) {
        std::printf("  warning: %s\n", warning.c_str());
    }
    std::printf("wrote %s/{comparison.csv,comparison.svg,report.json,...} in %.2fs\n",
                config.out_dir.c_str(), report.total_wall_time_s);
    return 0;
}

int cmd_shots(const ExperimentConfig& config, const std::string& fits_path) {
    qkonc::validate(config);
    const std::filesystem::path path =
        fits_path.empty() ? std::filesystem::path(config.out_dir) / "fits.json"
                          : std::filesystem::path(fits_path);
    const qkonc::StoredFits fits = qkonc::read_fits_json(path);
    const qkonc::ShotPlan plan{config.gamma, fits.mu, fits.sigma};

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    const std::filesystem::path out = std::filesystem::path(config.out_dir) / "shots.csv";
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + out.string() + "' for writing");
    }
    file << "n,shots\n";
    std::printf("shot budget for gamma=%g (fits from %s):\n", config.gamma,
                path.string().c_str());
    for (int n : config.qubits) {
        const double shots = qkonc::required_shots(n, plan);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", shots);
        file << n << ',' << buf << '\n';
        std::printf("  n=%2d  R=%.6e\n", n, shots);
    }
    file.flush();
    if (!file) {
        throw std::runtime_error("write failed for '" + out.string() + "'");
    }
    std::printf("wrote %s\n", out.string().c_str());
    return 0;
}

int cmd_bench(const ExperimentConfig& config) {
    qkonc::validate(config);
    const qkonc::SweepConfig sweep{.m = config.m,
                                   .seed = config.seed,
                                   .low = config.low,
                                   .high = config.high,
                                   .reps = config.reps,
                                   .threads = 1};
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    const std::filesystem::path out = std::filesystem::path(config.out_dir) / "bench.csv";
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + out.string() + "' for writing");
    }
    file << "n,m,t_classical_s,timer_warning\n";
    std::printf("classical Gram benchmark, m=%d, %d timed reps each (machine: %s)\n", config.m,
                config.bench_repetitions, qkonc::machine_descriptor().c_str());
    for (int n : config.qubits) {
        const qkonc::ClassicalBenchmark bench = qkonc::benchmark_classical(
            n, sweep, config.bench_repetitions, config.bench_include_datagen);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", bench.seconds);
        file << n << ',' << config.m << ',' << buf << ',' << (bench.timer_warning ? 1 : 0)
             << '\n';
        std::printf("  n=%2d  T_C=%.6e s%s\n", n, bench.seconds,
                    bench.timer_warning ? "  [timer warning]" : "");
    }
    file.flush();
    if (!file) {
        throw std::runtime_error("write failed for '" + out.string() + "'");
    }
    std::printf("wrote %s\n", out.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fidelity-kernel concentration and runtime laboratory"};
    app.set_version_flag("--version", std::string(qkonc::kVersion));
    app.require_subcommand(1);

    CliOverrides ovr;
    std::string fits_path;

    CLI::App* concentration =
        app.add_subcommand("concentration", "Kernel concentration sweep with decay fits");
    add_common_options(concentration, ovr);

    CLI::App* compare =
        app.add_subcommand("compare", "Quantum-runtime model vs measured simulation time");
    add_common_options(compare, ovr);

    CLI::App* shots = app.add_subcommand("shots", "Evaluate shot counts R(n) from stored fits");
    add_common_options(shots, ovr);
    shots->add_option("--fits", fits_path, "Path to fits.json (default: <out>/fits.json)");

    CLI::App* bench = app.add_subcommand("bench", "Measure classical Gram computation time only");
    add_common_options(bench, ovr);

    CLI11_PARSE(app, argc, argv);

    try {
        if (concentration->parsed()) {
            return cmd_concentration(build_config(concentration, ovr));
        }
        if (compare->parsed()) {
            return cmd_compare(build_config(compare, ovr));
        }
        if (shots->parsed()) {
            return cmd_shots(build_config(shots, ovr), fits_path);
        }
        if (bench->parsed()) {
            return cmd_bench(build_config(bench, ovr));
        }
    } catch (const std::exception& e) {
        std::string message = e.what();
        for (char& c : message) {
            if (c == '\n') {
                c = ' ';
            }
        }
        std::fprintf(stderr, "qkonc: error: %s\n", message.c_str());
        return 1;
    }
    return 0;
}
