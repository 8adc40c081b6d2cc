#include "qkonc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <sys/utsname.h>

#include "qkonc/svg_plot.hpp"
#include "qkonc/version.hpp"

namespace qkonc {

void validate(const ExperimentConfig& config) {
    if (config.qubits.empty()) {
        throw std::invalid_argument("config: qubit list is empty");
    }
    if (!std::is_sorted(config.qubits.begin(), config.qubits.end())) {
        throw std::invalid_argument("config: qubit list must be ascending");
    }
    for (int n : config.qubits) {
        if (n < 1 || n > kMaxQubits) {
            throw std::invalid_argument("config: qubit count " + std::to_string(n) +
                                        " outside [1, " + std::to_string(kMaxQubits) + "]");
        }
    }
    if (config.m < 2) {
        throw std::invalid_argument("config: m must be >= 2");
    }
    if (config.reps < 1) {
        throw std::invalid_argument("config: reps must be >= 1");
    }
    if (!(config.low < config.high)) {
        throw std::invalid_argument("config: require low < high");
    }
    if (!(config.t_gate > 0.0) || !(config.t_meas > 0.0) || !(config.gamma > 0.0)) {
        throw std::invalid_argument("config: t_gate, t_meas and gamma must be positive");
    }
    if (config.bench_repetitions < 3) {
        throw std::invalid_argument("config: bench_repetitions must be >= 3");
    }
    if (config.threads < 1) {
        throw std::invalid_argument("config: threads must be >= 1");
    }
    const int max_n = config.qubits.back();
    const double bytes = static_cast<double>(config.m) * std::pow(2.0, max_n) * 16.0;
    constexpr double kMemoryCap = 12.0 * 1024.0 * 1024.0 * 1024.0;
    if (bytes > kMemoryCap) {
        throw std::invalid_argument("config: holding " + std::to_string(config.m) +
                                    " statevectors at n=" + std::to_string(max_n) +
                                    " would need more than 12 GiB");
    }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    return {{"qubits", c.qubits},
            {"m", c.m},
            {"seed", c.seed},
            {"reps", c.reps},
            {"low", c.low},
            {"high", c.high},
            {"t_gate", c.t_gate},
            {"t_meas", c.t_meas},
            {"gamma", c.gamma},
            {"scope", to_string(c.scope)},
            {"out_dir", c.out_dir},
            {"bench_repetitions", c.bench_repetitions},
            {"bench_include_datagen", c.bench_include_datagen},
            {"threads", c.threads}};
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base) {
    ExperimentConfig c = std::move(base);
    if (j.contains("qubits")) c.qubits = j.at("qubits").get<std::vector<int>>();
    if (j.contains("m")) c.m = j.at("m").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("reps")) c.reps = j.at("reps").get<int>();
    if (j.contains("low")) c.low = j.at("low").get<double>();
    if (j.contains("high")) c.high = j.at("high").get<double>();
    if (j.contains("t_gate")) c.t_gate = j.at("t_gate").get<double>();
    if (j.contains("t_meas")) c.t_meas = j.at("t_meas").get<double>();
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("scope")) c.scope = scope_from_string(j.at("scope").get<std::string>());
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("bench_repetitions")) c.bench_repetitions = j.at("bench_repetitions").get<int>();
    if (j.contains("bench_include_datagen"))
        c.bench_include_datagen = j.at("bench_include_datagen").get<bool>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    return c;
}

std::string machine_descriptor() {
    std::string desc;
    utsname uts{};
    if (uname(&uts) == 0) {
        desc = std::string(uts.sysname) + " " + uts.release + " " + uts.machine;
    }
    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                desc += ", " + line.substr(colon + 2);
            }
            break;
        }
    }
    desc += ", " + std::to_string(std::thread::hardware_concurrency()) + " hw threads";
    return desc;
}

namespace {

nlohmann::json fit_json(const std::optional<ExpFit>& fit) {
    if (!fit) {
        return {{"skipped", "insufficient points"}};
    }
    return {{"C", fit->C}, {"alpha", fit->alpha}, {"r2", fit->r_squared}};
}

nlohmann::json points_json(const std::vector<ConcentrationPoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ConcentrationPoint& pt : points) {
        arr.push_back({{"n", pt.n},
                       {"mean_k", pt.mean},
                       {"std_k", pt.std_dev},
                       {"m", pt.m},
                       {"dataset_seed", pt.seed}});
    }
    return arr;
}

} // namespace

nlohmann::json report_to_json(const ExperimentReport& report) {
    nlohmann::json j{{"config", config_to_json(report.config)},
                     {"version", report.version},
                     {"machine", report.machine},
                     {"total_wall_time_s", report.total_wall_time_s},
                     {"seed_derivation", "dataset_seed(n) = seed XOR n"},
                     {"concentration", points_json(report.concentration)},
                     {"fits", {{"mu", fit_json(report.mu_fit)}, {"sigma", fit_json(report.sigma_fit)}}},
                     {"warnings", report.warnings},
                     {"failed", report.failed}};
    if (report.failed) {
        j["error"] = report.error;
    }
    if (report.runtime) {
        const RuntimeCurve& curve = *report.runtime;
        nlohmann::json records = nlohmann::json::array();
        for (const RuntimeRecord& rec : curve.records) {
            records.push_back({{"n", rec.n},
                               {"layers", rec.layers},
                               {"shots", rec.shots},
                               {"t_circ_s", rec.t_circ_s},
                               {"t_quantum_s", rec.t_quantum_s},
                               {"t_classical_s", rec.t_classical_s}});
        }
        nlohmann::json runtime{{"scope", to_string(curve.scope)},
                               {"m", curve.m},
                               {"records", records},
                               {"timer_warning", curve.timer_warning}};
        runtime["t_quantum_fit"] = fit_json(curve.t_quantum_fit);
        runtime["t_classical_fit"] = fit_json(curve.t_classical_fit);
        if (curve.t_quantum_fit) {
            runtime["growth_exponent_t_quantum"] = -curve.t_quantum_fit->alpha;
        }
        if (curve.t_classical_fit) {
            runtime["growth_exponent_t_classical"] = -curve.t_classical_fit->alpha;
        }
        j["runtime"] = runtime;
    }
    return j;
}

namespace {

using Clock = std::chrono::steady_clock;

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir.string() +
                                 "': " + ec.message());
    }
    // Probe writability before any computation starts.
    const std::filesystem::path probe = dir / ".qkonc-write-probe";
    {
        std::ofstream f(probe, std::ios::binary);
        if (!f) {
            throw std::runtime_error("output directory '" + dir.string() + "' is not writable");
        }
    }
    std::filesystem::remove(probe, ec);
    return dir;
}

void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    file << j.dump(2) << '\n';
    file.flush();
    if (!file) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

svg::Series fit_line_series(const ExpFit& fit, double n_lo, double n_hi, const std::string& label,
                            const std::string& color) {
    svg::Series s;
    s.label = label;
    s.color = color;
    s.line = true;
    s.markers = false;
    s.dashed = true;
    // Straight in log space, so the endpoints suffice.
    s.points = {{n_lo, fit.C * std::exp(-fit.alpha * n_lo)},
                {n_hi, fit.C * std::exp(-fit.alpha * n_hi)}};
    return s;
}

void write_concentration_svg(const ExperimentReport& report, const std::filesystem::path& path) {
    std::vector<svg::Series> series;
    svg::Series mean{.label = "mean kernel entry", .color = "#1f77b4", .line = false};
    svg::Series stddev{.label = "std of kernel entries", .color = "#d62728", .line = false};
    for (const ConcentrationPoint& pt : report.concentration) {
        mean.points.push_back({static_cast<double>(pt.n), pt.mean});
        stddev.points.push_back({static_cast<double>(pt.n), pt.std_dev});
    }
    series.push_back(std::move(mean));
    series.push_back(std::move(stddev));
    if (!report.concentration.empty()) {
        const double n_lo = report.concentration.front().n;
        const double n_hi = report.concentration.back().n;
        if (report.mu_fit) {
            series.push_back(fit_line_series(*report.mu_fit, n_lo, n_hi, "mean fit", "#1f77b4"));
        }
        if (report.sigma_fit) {
            series.push_back(fit_line_series(*report.sigma_fit, n_lo, n_hi, "std fit", "#d62728"));
        }
    }
    svg::write_log_y_plot(path,
                          {.title = "Kernel entry concentration",
                           .x_label = "qubits n",
                           .y_label = "kernel entry statistics"},
                          series);
}

void write_comparison_svg(const RuntimeCurve& curve, const std::filesystem::path& path) {
    svg::Series tq{.label = "quantum runtime (model)", .color = "#1f77b4"};
    svg::Series tc{.label = "classical simulation (measured)", .color = "#d62728"};
    for (const RuntimeRecord& rec : curve.records) {
        tq.points.push_back({static_cast<double>(rec.n), rec.t_quantum_s});
        tc.points.push_back({static_cast<double>(rec.n), rec.t_classical_s});
    }
    svg::write_log_y_plot(path,
                          {.title = "Estimated quantum vs measured classical runtime (" +
                                        to_string(curve.scope) + ")",
                           .x_label = "qubits n",
                           .y_label = "runtime [s]"},
                          {tq, tc});
}

void fit_concentration(ExperimentReport& report) {
    if (report.concentration.size() < 2) {
        report.warnings.push_back("fit skipped: insufficient points");
        return;
    }
    std::vector<std::pair<double, double>> mean_points;
    std::vector<std::pair<double, double>> std_points;
    for (const ConcentrationPoint& pt : report.concentration) {
        mean_points.emplace_back(pt.n, pt.mean);
        std_points.emplace_back(pt.n, pt.std_dev);
    }
    report.mu_fit = fit_exponential(mean_points);
    report.sigma_fit = fit_exponential(std_points);
}

} // namespace

ExperimentReport run_concentration(const ExperimentConfig& config) {
    validate(config);
    const auto dir = prepare_out_dir(config);
    const auto t0 = Clock::now();

    ExperimentReport report;
    report.config = config;
    report.version = kVersion;
    report.machine = machine_descriptor();

    const SweepConfig sweep{.m = config.m,
                            .seed = config.seed,
                            .low = config.low,
                            .high = config.high,
                            .reps = config.reps,
                            .threads = config.threads};
    report.concentration = concentration_sweep(config.qubits, sweep);
    fit_concentration(report);

    write_concentration_csv(report.concentration, dir / "concentration.csv");
    write_fits_json(report.mu_fit, report.sigma_fit, dir / "fits.json");
    write_concentration_svg(report, dir / "concentration.svg");

    report.total_wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    return report;
}

ExperimentReport run_comparison(const ExperimentConfig& config) {
    validate(config);
    const auto dir = prepare_out_dir(config);
    const auto t0 = Clock::now();

    ExperimentReport report;
    report.config = config;
    report.version = kVersion;
    report.machine = machine_descriptor();

    try {
        const SweepConfig sweep{.m = config.m,
                                .seed = config.seed,
                                .low = config.low,
                                .high = config.high,
                                .reps = config.reps,
                                .threads = config.threads};
        const RuntimeParams params{config.t_gate, config.t_meas, config.gamma};
        const ComparisonOptions options{.scope = config.scope,
                                        .benchmark_repetitions = config.bench_repetitions,
                                        .benchmark_includes_datagen =
                                            config.bench_include_datagen};
        RuntimeCurve curve = runtime_comparison(config.qubits, sweep, params, options);

        report.concentration = curve.concentration;
        report.mu_fit = curve.mu_fit;
        report.sigma_fit = curve.sigma_fit;
        report.warnings = curve.warnings;
        report.runtime = std::move(curve);

        write_concentration_csv(report.concentration, dir / "concentration.csv");
        write_fits_json(report.mu_fit, report.sigma_fit, dir / "fits.json");
        write_concentration_svg(report, dir / "concentration.svg");
        write_comparison_csv(*report.runtime, dir / "comparison.csv");
        write_comparison_svg(*report.runtime, dir / "comparison.svg");
    } catch (const std::exception& e) {
        report.failed = true;
        report.error = e.what();
        report.total_wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
        write_json_file(report_to_json(report), dir / "report.json");
        throw;
    }

    report.total_wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
    write_json_file(report_to_json(report), dir / "report.json");
    return report;
}

} // namespace qkonc
