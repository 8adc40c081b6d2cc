#include "qkonc/kernel_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "qkonc/rng.hpp"

namespace qkonc {

Dataset generate_dataset(int m, int n, std::uint64_t seed, double low, double high) {
    if (m < 2) {
        throw std::invalid_argument("generate_dataset: need at least 2 points");
    }
    if (n < 1) {
        throw std::invalid_argument("generate_dataset: dimension must be >= 1");
    }
    if (!(low < high)) {
        throw std::invalid_argument("generate_dataset: require low < high");
    }
    Dataset ds;
    ds.m = m;
    ds.n = n;
    ds.seed = seed;
    ds.low = low;
    ds.high = high;
    ds.coords.resize(static_cast<std::size_t>(m) * n);
    SplitMix64 rng(seed);
    for (double& c : ds.coords) {
        c = rng.next_double(low, high);
    }
    return ds;
}

double fidelity_kernel(std::span<const double> x, std::span<const double> y,
                       const FeatureMapSpec& spec) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fidelity_kernel: point dimensions differ");
    }
    const double k = std::norm(inner_product(embed(y, spec), embed(x, spec)));
    return std::clamp(k, 0.0, 1.0);
}

namespace {

// Splits [0, count) into `threads` chunks and runs fn(begin, end) on each.
void parallel_ranges(std::size_t count, int threads, const auto& fn) {
    if (threads <= 1 || count == 0) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (std::thread& t : pool) {
        t.join();
    }
}

} // namespace

GramMatrix gram_matrix(const Dataset& ds, const FeatureMapSpec& spec, int threads) {
    if (ds.n != spec.n) {
        throw std::invalid_argument("gram_matrix: dataset dimension " + std::to_string(ds.n) +
                                    " does not match feature map qubit count " +
                                    std::to_string(spec.n));
    }

    std::vector<Statevector> states;
    states.reserve(ds.m);
    for (int i = 0; i < ds.m; ++i) {
        states.push_back(Statevector::zero_state(ds.n));
    }
    parallel_ranges(ds.m, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            states[i] = embed(ds.point(static_cast<int>(i)), spec);
        }
    });

    GramMatrix g;
    g.m = ds.m;
    g.values.assign(static_cast<std::size_t>(ds.m) * ds.m, 0.0);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(ds.m) * (ds.m - 1) / 2);
    for (int i = 0; i < ds.m; ++i) {
        for (int j = i + 1; j < ds.m; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    parallel_ranges(pairs.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const auto [i, j] = pairs[p];
            const double k = std::norm(inner_product(states[j], states[i]));
            g.at(i, j) = k;
            g.at(j, i) = k;
        }
    });

    for (int i = 0; i < ds.m; ++i) {
        g.at(i, i) = std::norm(inner_product(states[i], states[i]));
    }
    return g;
}

ConcentrationStats concentration_stats(const GramMatrix& g) {
    if (g.m < 2) {
        throw std::invalid_argument("concentration_stats: need at least a 2x2 Gram matrix");
    }
    const std::size_t count = static_cast<std::size_t>(g.m) * (g.m - 1) / 2;
    double sum = 0.0;
    for (int i = 0; i < g.m; ++i) {
        for (int j = i + 1; j < g.m; ++j) {
            sum += g.at(i, j);
        }
    }
    const double mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (int i = 0; i < g.m; ++i) {
        for (int j = i + 1; j < g.m; ++j) {
            const double d = g.at(i, j) - mean;
            sq += d * d;
        }
    }
    return {mean, std::sqrt(sq / static_cast<double>(count))};
}

std::vector<ConcentrationPoint> concentration_sweep(std::span<const int> qubit_list,
                                                    const SweepConfig& config) {
    if (qubit_list.empty()) {
        throw std::invalid_argument("concentration_sweep: empty qubit list");
    }
    if (!std::is_sorted(qubit_list.begin(), qubit_list.end())) {
        throw std::invalid_argument("concentration_sweep: qubit list must be ascending");
    }
    std::vector<ConcentrationPoint> points;
    points.reserve(qubit_list.size());
    for (int n : qubit_list) {
        const std::uint64_t dataset_seed = config.seed ^ static_cast<std::uint64_t>(n);
        const Dataset ds = generate_dataset(config.m, n, dataset_seed, config.low, config.high);
        const FeatureMapSpec spec{.n = n, .reps = config.reps};
        const GramMatrix g = gram_matrix(ds, spec, config.threads);
        const ConcentrationStats stats = concentration_stats(g);
        points.push_back({n, stats.mean, stats.std_dev, config.m, dataset_seed});
    }
    return points;
}

ExpFit fit_exponential(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("fit_exponential: need at least 2 points");
    }
    for (const auto& [n, value] : points) {
        if (!(value > 0.0)) {
            throw std::domain_error("fit_exponential: values must be strictly positive");
        }
    }
    const double count = static_cast<double>(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, value] : points) {
        sx += n;
        sy += std::log(value);
    }
    const double mx = sx / count;
    const double my = sy / count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, value] : points) {
        const double dx = n - mx;
        const double dy = std::log(value) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_exponential: all abscissae identical");
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0.0;
    for (const auto& [n, value] : points) {
        const double r = std::log(value) - (intercept + slope * n);
        ss_res += r * r;
    }
    // Flat data fits exactly; report a perfect score rather than 0/0.
    const double r_squared = (syy > 0.0) ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return {std::exp(intercept), -slope, r_squared};
}

} // namespace qkonc
