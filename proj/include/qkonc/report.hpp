#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qkonc/csv_io.hpp"
#include "qkonc/runtime_model.hpp"

namespace qkonc {

struct ExperimentConfig {
    std::vector<int> qubits{2, 4, 6, 8, 10, 12};
    int m = 100;
    std::uint64_t seed = 42;
    int reps = 1;
    double low = 0.0;
    double high = 2.0 * std::numbers::pi;
    double t_gate = 1e-8;
    double t_meas = 1e-7;
    double gamma = 10.0;
    Scope scope = Scope::full_gram;
    std::string out_dir = "qkonc-out";
    int bench_repetitions = 3;
    bool bench_include_datagen = false;
    int threads = 1; // sweep Gram assembly; the T_C benchmark stays single-threaded

    bool operator==(const ExperimentConfig&) const = default;
};

// Checks every module precondition up front, including a memory estimate for
// holding all m embeddings at the largest qubit count.
void validate(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);

// Accepts partial objects: absent keys keep the values already in `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

struct ExperimentReport {
    ExperimentConfig config;
    std::string version;
    std::string machine;
    double total_wall_time_s = 0.0;
    std::vector<ConcentrationPoint> concentration;
    std::optional<ExpFit> mu_fit;
    std::optional<ExpFit> sigma_fit;
    std::optional<RuntimeCurve> runtime;
    std::vector<std::string> warnings;
    bool failed = false;
    std::string error;
};

nlohmann::json report_to_json(const ExperimentReport& report);

std::string machine_descriptor();

// Concentration sweep and fits; writes concentration.csv, fits.json, and
// concentration.svg into config.out_dir. All outputs are byte-deterministic
// for a fixed config.
ExperimentReport run_concentration(const ExperimentConfig& config);

// Full comparison pipeline; additionally writes comparison.csv,
// comparison.svg, and report.json. On failure a partial report.json with a
// failure marker is flushed before the error propagates.
ExperimentReport run_comparison(const ExperimentConfig& config);

} // namespace qkonc
