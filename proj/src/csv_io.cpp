#include "qkonc/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qkonc {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return file;
}

void finish_write(std::ofstream& file, const std::filesystem::path& path) {
    file.flush();
    if (!file) {
        throw std::runtime_error("write failed for '" + path.string() + "'");
    }
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_concentration_csv(std::span<const ConcentrationPoint> points,
                             const std::filesystem::path& path) {
    std::ofstream file = open_for_write(path);
    file << "n,m,seed,mean_k,std_k\n";
    for (const ConcentrationPoint& pt : points) {
        file << pt.n << ',' << pt.m << ',' << pt.seed << ',' << num(pt.mean) << ','
             << num(pt.std_dev) << '\n';
    }
    finish_write(file, path);
}

void write_comparison_csv(const RuntimeCurve& curve, const std::filesystem::path& path) {
    std::ofstream file = open_for_write(path);
    file << "n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope\n";
    for (const RuntimeRecord& rec : curve.records) {
        file << rec.n << ',' << rec.layers << ',' << num(rec.shots) << ',' << num(rec.t_circ_s)
             << ',' << num(rec.t_quantum_s) << ',' << num(rec.t_classical_s) << ','
             << to_string(curve.scope) << '\n';
    }
    finish_write(file, path);
}

namespace {

nlohmann::json fit_to_json(const std::optional<ExpFit>& fit) {
    if (!fit) {
        return {{"skipped", "insufficient points"}};
    }
    return {{"C", fit->C}, {"alpha", fit->alpha}, {"r2", fit->r_squared}};
}

ExpFit fit_from_json(const nlohmann::json& j, const char* which) {
    if (j.contains("skipped")) {
        throw std::runtime_error(std::string("fits file has no usable '") + which +
                                 "' fit (marked skipped)");
    }
    return {j.at("C").get<double>(), j.at("alpha").get<double>(), j.at("r2").get<double>()};
}

} // namespace

void write_fits_json(const std::optional<ExpFit>& mu, const std::optional<ExpFit>& sigma,
                     const std::filesystem::path& path) {
    const nlohmann::json j{{"mu", fit_to_json(mu)}, {"sigma", fit_to_json(sigma)}};
    std::ofstream file = open_for_write(path);
    file << j.dump(2) << '\n';
    finish_write(file, path);
}

StoredFits read_fits_json(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open fits file '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        file >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("cannot parse fits file '" + path.string() + "': " + e.what());
    }
    return {fit_from_json(j.at("mu"), "mu"), fit_from_json(j.at("sigma"), "sigma")};
}

} // namespace qkonc
