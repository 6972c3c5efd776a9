#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace resetldp {

// splitmix64: the standard finalizer used to derive independent stream seeds
// from (seed, index) pairs. Streams for worker chunks must not depend on the
// thread that happens to run them.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream_index) {
    return Rng(splitmix64(seed ^ splitmix64(stream_index)));
}

inline double uniform01(Rng& rng) {
    // 53-bit mantissa draw in (0,1); never returns exactly 0.
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

// Marsaglia polar method. The spare value is state, so keep one sampler per
// stream; sharing one across streams would entangle their outputs.
class NormalSampler {
  public:
    double operator()(Rng& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01(rng) - 1.0;
            v = 2.0 * uniform01(rng) - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

  private:
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace resetldp
