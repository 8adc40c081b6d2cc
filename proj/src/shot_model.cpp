#include "qkonc/shot_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qkonc/rng.hpp"

namespace qkonc {

namespace {

void check_kernel_value(double k, const char* what) {
    if (!(k >= 0.0 && k <= 1.0)) {
        throw std::domain_error(std::string(what) + ": kernel value " + std::to_string(k) +
                                " outside [0, 1]");
    }
}

} // namespace

double estimator_std(double k, double r) {
    check_kernel_value(k, "estimator_std");
    if (!(r >= 1.0)) {
        throw std::invalid_argument("estimator_std: repetitions must be >= 1");
    }
    return std::sqrt(k * (1.0 - k) / r);
}

double modeled_mean(int n, const ShotPlan& plan) {
    return plan.mu_fit.C * std::exp(-plan.mu_fit.alpha * n);
}

double modeled_std(int n, const ShotPlan& plan) {
    return plan.sigma_fit.C * std::exp(-plan.sigma_fit.alpha * n);
}

double required_shots(int n, const ShotPlan& plan) {
    if (n < 1) {
        throw std::invalid_argument("required_shots: qubit count must be >= 1");
    }
    if (!(plan.gamma > 0.0) || !(plan.mu_fit.C > 0.0) || !(plan.sigma_fit.C > 0.0)) {
        throw std::invalid_argument("required_shots: gamma and fit prefactors must be positive");
    }
    const double mean = modeled_mean(n, plan);
    if (mean > 1.0) {
        throw std::domain_error("required_shots: modeled mean " + std::to_string(mean) +
                                " exceeds 1 at n=" + std::to_string(n) +
                                " (fit invalid here)");
    }
    const double gamma_sq = plan.gamma * plan.gamma;
    const double exponent = (2.0 * plan.sigma_fit.alpha - plan.mu_fit.alpha) * n;
    return gamma_sq * (plan.mu_fit.C / (plan.sigma_fit.C * plan.sigma_fit.C)) *
           std::exp(exponent) * (1.0 - mean);
}

double sample_kernel_estimate(double k, std::uint64_t r, std::uint64_t seed) {
    check_kernel_value(k, "sample_kernel_estimate");
    if (r < 1) {
        throw std::invalid_argument("sample_kernel_estimate: repetitions must be >= 1");
    }
    SplitMix64 rng(seed);
    std::uint64_t successes = 0;
    for (std::uint64_t shot = 0; shot < r; ++shot) {
        if (rng.next_double() < k) {
            ++successes;
        }
    }
    return static_cast<double>(successes) / static_cast<double>(r);
}

} // namespace qkonc
