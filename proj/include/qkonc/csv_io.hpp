#pragma once

#include <filesystem>
#include <optional>
#include <span>

#include "qkonc/runtime_model.hpp"

namespace qkonc {

// CSV files are UTF-8 with LF line endings; numeric fields carry 17
// significant digits so reparsing reproduces the in-memory doubles exactly.

// Header: n,m,seed,mean_k,std_k
void write_concentration_csv(std::span<const ConcentrationPoint> points,
                             const std::filesystem::path& path);

// Header: n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope
void write_comparison_csv(const RuntimeCurve& curve, const std::filesystem::path& path);

// {"mu": {"C":..., "alpha":..., "r2":...}, "sigma": {...}}; a fit that was
// skipped (single sweep point) is written as {"skipped": "insufficient points"}.
void write_fits_json(const std::optional<ExpFit>& mu, const std::optional<ExpFit>& sigma,
                     const std::filesystem::path& path);

struct StoredFits {
    ExpFit mu;
    ExpFit sigma;
};

// Throws std::runtime_error if the file is missing a usable fit.
StoredFits read_fits_json(const std::filesystem::path& path);

} // namespace qkonc
