#include "resetldp/quantile_table.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "resetldp/quadrature.hpp"
#include "resetldp/rng.hpp"

namespace resetldp {

namespace {

double integrate_abs_path(Rng& rng, NormalSampler& normal, int steps, double dt) {
    // trapezoid over |B| with B_0 = 0
    const double sdt = std::sqrt(dt);
    double b = 0.0;
    double acc = 0.0;  // interior samples plus half the final one
    for (int j = 1; j < steps; ++j) {
        b += sdt * normal(rng);
        acc += std::abs(b);
    }
    b += sdt * normal(rng);
    acc += 0.5 * std::abs(b);
    return acc * dt;
}

}  // namespace

AbsAreaQuantileTable::AbsAreaQuantileTable(std::vector<double> quantiles) : q_(std::move(quantiles)) {
    if (q_.size() != kCount) throw NumericError("quantile table: wrong count");
    if (!std::is_sorted(q_.begin(), q_.end()) || q_.front() < 0.0) {
        throw NumericError("quantile table: corrupt quantiles");
    }
}

double AbsAreaQuantileTable::mgf(double c) const {
    double sum = 0.0;
    for (double a : q_) sum += std::exp(c * a);
    return sum / static_cast<double>(q_.size());
}

double AbsAreaQuantileTable::weighted_mean(double c) const {
    double sum = 0.0;
    for (double a : q_) sum += a * std::exp(c * a);
    return sum / static_cast<double>(q_.size());
}

double AbsAreaQuantileTable::mean() const {
    double sum = 0.0;
    for (double a : q_) sum += a;
    return sum / static_cast<double>(q_.size());
}

double AbsAreaQuantileTable::second_moment() const {
    double sum = 0.0;
    for (double a : q_) sum += a * a;
    return sum / static_cast<double>(q_.size());
}

double AbsAreaQuantileTable::mc_stderr_of_mean_exp(double c) const {
    const double m1 = mgf(c);
    const double m2 = mgf(2.0 * c);
    const double var = std::max(0.0, m2 - m1 * m1);
    return std::sqrt(var / static_cast<double>(kPaths));
}

void AbsAreaQuantileTable::save(const std::string& path) const {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw NumericError("quantile table: cannot write " + tmp);
        const char magic[4] = {'A', 'B', 'S', 'A'};
        out.write(magic, 4);
        const std::uint32_t header[3] = {kMagicVersion, kCount, kStepExponent};
        out.write(reinterpret_cast<const char*>(header), sizeof(header));
        out.write(reinterpret_cast<const char*>(q_.data()),
                  static_cast<std::streamsize>(q_.size() * sizeof(double)));
        if (!out) throw NumericError("quantile table: write failed for " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw NumericError("quantile table: rename to " + path + " failed");
    }
}

AbsAreaQuantileTable AbsAreaQuantileTable::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericError("quantile table: cannot open " + path);
    char magic[4];
    std::uint32_t header[3];
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || std::memcmp(magic, "ABSA", 4) != 0 || header[0] != kMagicVersion ||
        header[1] != kCount || header[2] != kStepExponent) {
        throw NumericError("quantile table: bad header in " + path);
    }
    std::vector<double> q(kCount);
    in.read(reinterpret_cast<char*>(q.data()), static_cast<std::streamsize>(kCount * sizeof(double)));
    if (!in) throw NumericError("quantile table: truncated file " + path);
    return AbsAreaQuantileTable(std::move(q));
}

AbsAreaQuantileTable AbsAreaQuantileTable::build(std::uint64_t seed, std::uint64_t paths,
                                                 int step_exp, std::ostream* progress) {
    const int steps = 1 << step_exp;
    const double dt = 1.0 / steps;
    std::vector<double> values(paths);

    constexpr std::uint64_t kChunk = 20000;
    const std::uint64_t n_chunks = (paths + kChunk - 1) / kChunk;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> done{0};

    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            Rng rng = make_stream(seed, c);
            NormalSampler normal;
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(paths, lo + kChunk);
            for (std::uint64_t i = lo; i < hi; ++i) {
                values[i] = integrate_abs_path(rng, normal, steps, dt);
            }
            const std::uint64_t d = done.fetch_add(hi - lo) + (hi - lo);
            if (progress && (d % (paths / 20) < kChunk)) {
                *progress << "[resetldp] abs-area table: " << (100 * d / paths) << "%\n" << std::flush;
            }
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (hw == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < hw; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(values.begin(), values.end());
    std::vector<double> q(kCount);
    for (std::uint32_t j = 0; j < kCount; ++j) {
        const auto idx = static_cast<std::uint64_t>((j + 0.5) / kCount * static_cast<double>(paths));
        q[j] = values[std::min<std::uint64_t>(idx, paths - 1)];
    }
    return AbsAreaQuantileTable(std::move(q));
}

std::string quantile_cache_path() {
    if (const char* env = std::getenv("RESET_LDP_CACHE"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::string(home) + "/.cache/resetldp/absarea_quantiles_v1.bin";
    }
    return (std::filesystem::temp_directory_path() / "resetldp_absarea_quantiles_v1.bin").string();
}

const AbsAreaQuantileTable& default_quantile_table() {
    static const AbsAreaQuantileTable table = [] {
        const std::string path = quantile_cache_path();
        if (std::filesystem::exists(path)) {
            return AbsAreaQuantileTable::load(path);
        }
        if (const char* env = std::getenv("RESET_LDP_NO_TABLE_BUILD"); env && env[0] == '1') {
            throw NumericError(
                "abs-area oracle required: quantile table not found at " + path +
                " and building is disabled (RESET_LDP_NO_TABLE_BUILD=1)");
        }
        std::ostream* progress = nullptr;
        #ifndef RESETLDP_QUIET_TABLE_BUILD
        progress = &std::clog;
        #endif
        if (progress) {
            *progress << "[resetldp] building abs-area quantile table ("
                      << AbsAreaQuantileTable::kPaths << " paths, step 2^-"
                      << AbsAreaQuantileTable::kStepExponent << ") -> " << path << "\n";
        }
        AbsAreaQuantileTable t = AbsAreaQuantileTable::build(
            AbsAreaQuantileTable::kBuildSeed, AbsAreaQuantileTable::kPaths,
            AbsAreaQuantileTable::kStepExponent, progress);
        t.save(path);
        return t;
    }();
    return table;
}

}  // namespace resetldp
