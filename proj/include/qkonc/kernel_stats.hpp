#pragma once

#include <cstdint>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qkonc/feature_map.hpp"

namespace qkonc {

struct Dataset {
    int m = 0; // point count
    int n = 0; // coordinates per point == qubit count
    std::uint64_t seed = 0;
    double low = 0.0;
    double high = 0.0;
    std::vector<double> coords; // row-major m x n

    std::span<const double> point(int i) const {
        return {coords.data() + static_cast<std::size_t>(i) * n, static_cast<std::size_t>(n)};
    }
};

// m points with coordinates i.i.d. uniform on [low, high), drawn row-major
// from a SplitMix64 stream. Bit-identical for identical arguments.
Dataset generate_dataset(int m, int n, std::uint64_t seed, double low, double high);

struct GramMatrix {
    int m = 0;
    std::vector<double> values; // row-major m x m

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * m + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * m + j]; }
};

// K(x,y) = |<phi(y)|phi(x)>|^2, clamped to [0,1] for reporting.
double fidelity_kernel(std::span<const double> x, std::span<const double> y,
                       const FeatureMapSpec& spec);

/**
 * Full Gram matrix over a dataset: each point is embedded once, then the
 * m(m-1)/2 upper-triangle entries are computed from pairwise inner products
 * and mirrored. Entries hold raw squared overlaps (no clamping) so fits see
 * the floating values. Every entry is computed independently, so the result
 * is bitwise identical for any thread count.
 */
GramMatrix gram_matrix(const Dataset& ds, const FeatureMapSpec& spec, int threads = 1);

struct ConcentrationStats {
    double mean;    // 2/(m(m-1)) * sum_{i>j} K_ij
    double std_dev; // population std over the same m(m-1)/2 entries
};

ConcentrationStats concentration_stats(const GramMatrix& g);

struct ConcentrationPoint {
    int n;
    double mean;
    double std_dev;
    int m;
    std::uint64_t seed; // per-n dataset seed (master seed XOR n)
};

struct SweepConfig {
    int m = 100;
    std::uint64_t seed = 42;
    double low = 0.0;
    double high = 2.0 * std::numbers::pi;
    int reps = 1;
    int threads = 1;
};

// One ConcentrationPoint per qubit count, each from a fresh dataset seeded
// with config.seed XOR n.
std::vector<ConcentrationPoint> concentration_sweep(std::span<const int> qubit_list,
                                                    const SweepConfig& config);

struct ExpFit {
    double C = 0.0;         // prefactor, > 0
    double alpha = 0.0;     // decay rate per qubit in C e^{-alpha n}
    double r_squared = 0.0; // goodness of the log-linear fit
};

// Unweighted OLS on (n, ln value): alpha = -slope, C = e^{intercept}.
// Values must be strictly positive and at least two points are required.
ExpFit fit_exponential(std::span<const std::pair<double, double>> points);

} // namespace qkonc
