#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace resetldp {

// Empirical law of A := int_0^1 |B_tau| d tau, tabulated once from path
// simulation and cached to disk. The table holds 4096 equal-probability
// quantile midpoints; expectations against the law use the midpoint rule.
//
// Cache file layout (little-endian):
//   bytes 0..3   magic "ABSA"
//   bytes 4..7   version  (u32, = 1)
//   bytes 8..11  count    (u32, = 4096)
//   bytes 12..15 step_exponent (u32, = 12; path step 2^-12)
//   then count doubles (the quantiles, ascending)
class AbsAreaQuantileTable {
  public:
    static constexpr std::uint32_t kMagicVersion = 1;
    static constexpr std::uint32_t kCount = 4096;
    static constexpr std::uint32_t kStepExponent = 12;
    static constexpr std::uint64_t kPaths = 10'000'000;
    static constexpr std::uint64_t kBuildSeed = 0x41425341u;  // fixed; the table is a pinned artifact

    explicit AbsAreaQuantileTable(std::vector<double> quantiles);

    const std::vector<double>& quantiles() const { return q_; }

    // E[e^{c A}] under the tabulated law (midpoint rule).
    double mgf(double c) const;
    // E[A e^{c A}] under the tabulated law.
    double weighted_mean(double c) const;

    double mean() const;
    double second_moment() const;
    // Standard error of the Monte Carlo mean of h(A) over the kPaths samples
    // behind the table, estimated from the tabulated law itself.
    double mc_stderr_of_mean_exp(double c) const;

    void save(const std::string& path) const;
    static AbsAreaQuantileTable load(const std::string& path);

    // Builds the table from `paths` fresh Brownian paths at step 2^-step_exp,
    // trapezoidal integration of |B|. Deterministic in (seed, paths).
    static AbsAreaQuantileTable build(std::uint64_t seed, std::uint64_t paths,
                                      int step_exp, std::ostream* progress);

  private:
    std::vector<double> q_;
};

// Cache location: $RESET_LDP_CACHE if set, else
// $HOME/.cache/resetldp/absarea_quantiles_v1.bin, else the system temp dir.
std::string quantile_cache_path();

// Loads the cached table, building and saving it on first use. Throws
// NumericError("abs-area oracle required...") if building is disabled via
// RESET_LDP_NO_TABLE_BUILD=1 and no cache exists.
const AbsAreaQuantileTable& default_quantile_table();

}  // namespace resetldp
