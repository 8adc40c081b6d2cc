#pragma once

#include <cstdint>

#include "qkonc/kernel_stats.hpp"

namespace qkonc {

// Per-qubit-count shot budget derived from fitted concentration curves and
// the precision ratio gamma = sigma(K) / sigma(K~).
struct ShotPlan {
    double gamma = 10.0;
    ExpFit mu_fit;    // <K>(n) ~ C_mu e^{-alpha_mu n}
    ExpFit sigma_fit; // sigma(K)(n) ~ C_sigma e^{-alpha_sigma n}
};

// Standard deviation of a Bernoulli kernel estimate from r shots:
// sqrt(k(1-k)/r).
double estimator_std(double k, double r);

double modeled_mean(int n, const ShotPlan& plan);
double modeled_std(int n, const ShotPlan& plan);

// R(n) = gamma^2 (C_mu / C_sigma^2) e^{(2 alpha_sigma - alpha_mu) n}
//        [1 - C_mu e^{-alpha_mu n}],
// evaluated at the modeled mean entry. Returned as a real; callers ceil when
// scheduling actual shots.
double required_shots(int n, const ShotPlan& plan);

// Success fraction of r Bernoulli(k) draws from a SplitMix64 stream;
// deterministic per seed on every platform.
double sample_kernel_estimate(double k, std::uint64_t r, std::uint64_t seed);

} // namespace qkonc
