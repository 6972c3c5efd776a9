#include "resetldp/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "resetldp/extended.hpp"

namespace resetldp {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679841;

struct Pair {
    double f, fp;
};

// One Taylor step of y'' = x y from anchor x0 with values (f, fp):
// y(x0+h) = sum a_n h^n, a_{n+2} = (x0 a_n + a_{n-1}) / ((n+1)(n+2)).
Pair taylor_step(double x0, Pair y, double h) {
    constexpr int kTerms = 56;
    std::array<double, kTerms> a{};
    a[0] = y.f;
    a[1] = y.fp;
    a[2] = 0.5 * x0 * a[0];
    for (int n = 1; n + 2 < kTerms; ++n) {
        a[n + 2] = (x0 * a[n] + a[n - 1]) / ((n + 1.0) * (n + 2.0));
    }
    double f = 0.0, fp = 0.0;
    for (int n = kTerms - 1; n >= 1; --n) {
        f = f * h + a[n];
        fp = fp * h + n * a[n];
    }
    f = f * h + a[0];
    return {f, fp};
}

// Asymptotic expansion for x >= 8 (error ~e^{-2 zeta}, below 1e-13 there):
//   Ai(x)  ~  e^{-zeta}/(2 sqrt(pi) x^{1/4}) * sum (-1)^k u_k zeta^{-k}
//   Ai'(x) ~ -x^{1/4} e^{-zeta}/(2 sqrt(pi)) * sum (-1)^k v_k zeta^{-k}
// with u_0 = v_0 = 1, v_k = -u_k (6k+1)/(6k-1).
Pair asymptotic_pos(double x) {
    const double zeta = (2.0 / 3.0) * std::pow(x, 1.5);
    double u = 1.0;
    double su = 1.0, sv = 1.0;
    double zk = 1.0;
    double prev = 1.0;
    double sign = -1.0;
    for (int k = 1; k < 60; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / (216.0 * k * (2.0 * k - 1.0));
        const double v = -u * (6.0 * k + 1.0) / (6.0 * k - 1.0);
        zk *= zeta;
        const double tu = u / zk;
        if (std::abs(tu) > prev) break;  // past the optimal truncation point
        prev = std::abs(tu);
        su += sign * tu;
        sv += sign * v / zk;
        sign = -sign;
        if (std::abs(tu) < 1e-18) break;
    }
    const double pref = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    const double x4 = std::pow(x, 0.25);
    return {pref / x4 * su, -pref * x4 * sv};
}

// Anchor grids at half-integer spacing: [0, 8] stepped inward from the
// asymptotic seed at 8 (stable direction), [-100, 0] stepped outward from
// the exact origin values.
struct Grids {
    std::vector<Pair> pos;  // index i -> x = 8 - i/2, i = 0..16
    std::vector<Pair> neg;  // index i -> x = -i/2,    i = 0..200
};

const Grids& grids() {
    static const Grids g = [] {
        Grids out;
        out.pos.resize(17);
        out.pos[0] = asymptotic_pos(8.0);
        for (int i = 1; i <= 16; ++i) {
            const double x0 = 8.0 - 0.5 * (i - 1);
            out.pos[i] = taylor_step(x0, out.pos[i - 1], -0.5);
        }
        out.neg.resize(201);
        out.neg[0] = {kAi0, kAip0};
        for (int i = 1; i <= 200; ++i) {
            const double x0 = -0.5 * (i - 1);
            out.neg[i] = taylor_step(x0, out.neg[i - 1], -0.5);
        }
        return out;
    }();
    return g;
}

Pair eval_unchecked(double x) {
    if (x >= 8.0) return asymptotic_pos(x);
    if (x >= 0.0) {
        const int i = static_cast<int>(std::lround((8.0 - x) * 2.0));
        const int idx = std::clamp(i, 0, 16);
        const double x0 = 8.0 - 0.5 * idx;
        return taylor_step(x0, grids().pos[idx], x - x0);
    }
    const int i = static_cast<int>(std::lround(-x * 2.0));
    const int idx = std::clamp(i, 0, 200);
    const double x0 = -0.5 * idx;
    return taylor_step(x0, grids().neg[idx], x - x0);
}

Pair eval_checked(double x) {
    if (!(x >= -60.0 && x <= 10.0)) {
        throw std::domain_error("ai: x outside supported range [-60, 10]");
    }
    return eval_unchecked(x);
}

// van Wijngaarden-style iterated averaging of the last window of partial
// sums; rescues slowly converging alternating tails (small s^{2/3}).
double accelerate(const std::vector<double>& partial, double* err_est) {
    const std::size_t m = std::min<std::size_t>(partial.size(), 48);
    std::vector<double> a(partial.end() - m, partial.end());
    double last_spread = 0.0;
    while (a.size() > 1) {
        for (std::size_t j = 0; j + 1 < a.size(); ++j) a[j] = 0.5 * (a[j] + a[j + 1]);
        a.pop_back();
        if (a.size() >= 2) {
            last_spread = std::abs(a[a.size() - 1] - a[a.size() - 2]);
        }
    }
    if (err_est) *err_est = std::max(last_spread, 1e-15);
    return a[0];
}

double sum_series(const std::vector<double>& nu, const std::vector<double>& c, double shift,
                  double sigma, double* err_est) {
    // sum over i of c_i * exp(-(nu_i - shift) * sigma)
    double sum = 0.0;
    std::vector<double> partial;
    partial.reserve(nu.size());
    for (std::size_t i = 0; i < nu.size(); ++i) {
        const double term = c[i] * std::exp(-(nu[i] - shift) * sigma);
        sum += term;
        partial.push_back(sum);
        if (i >= 2 && std::abs(term) < 1e-15 * std::max(1.0, std::abs(sum))) {
            // alternating series: the truncation error is below the last term
            if (err_est) *err_est = std::abs(term);
            return sum;
        }
    }
    return accelerate(partial, err_est);
}

}  // namespace

double ai(double x) { return eval_checked(x).f; }
double ai_prime(double x) { return eval_checked(x).fp; }

double AiryTable::abs_area_laplace(double s, double* err_est) const {
    if (s < 0.0) throw std::domain_error("abs_area_laplace: s must be >= 0");
    if (err_est) *err_est = 0.0;
    if (s == 0.0) return 1.0;
    return sum_series(nu, c, 0.0, std::pow(s, 2.0 / 3.0), err_est);
}

double AiryTable::normalized_series(double s, double* err_est) const {
    if (!(s > 0.0)) throw std::domain_error("normalized_series: s must be > 0");
    return sum_series(nu, c, nu[0], std::pow(s, 2.0 / 3.0), err_est);
}

AiryTable build_table(std::size_t count) {
    if (count < 1) throw std::domain_error("build_table: count must be >= 1");
    if (count > 210) throw std::domain_error("build_table: count above supported range (210)");
    AiryTable t;
    t.z.reserve(count);
    t.nu.reserve(count);
    t.c.reserve(count);

    // asymptotic seeds z_i ~ -[3 pi (4i-3) / 8]^{2/3}
    auto seed = [](std::size_t i) {
        return -std::pow(3.0 * M_PI * (4.0 * i - 3.0) / 8.0, 2.0 / 3.0);
    };

    double cum_integral = 0.0;  // int_{z}^{0} Ai, accumulated from 0 leftward
    double prev_z = 0.0;
    for (std::size_t i = 1; i <= count; ++i) {
        // bracket between midpoints of consecutive seeds so Newton cannot skip
        double lo = 0.5 * (seed(i) + seed(i + 1));
        double hi = (i == 1) ? -1e-3 : 0.5 * (seed(i) + seed(i - 1));
        double z = seed(i);
        bool converged = false;
        for (int it = 0; it < 50; ++it) {
            const Pair p = eval_unchecked(z);
            const double step = p.fp / (z * p.f);  // Ai'' = x Ai
            // |Ai'| threshold, or the step has fallen below argument resolution
            if (std::abs(p.fp) < 1e-13 || std::abs(step) < 4e-16 * std::abs(z)) {
                converged = true;
                break;
            }
            double znew = z - step;
            if (!(znew > lo && znew < hi)) znew = 0.5 * (lo + hi);
            if (eval_unchecked(znew).fp * eval_unchecked(lo).fp < 0.0) {
                hi = znew;
            } else {
                lo = znew;
            }
            z = znew;
        }
        if (!converged) {
            // bisection fallback on the bracket
            double flo = eval_unchecked(lo).fp;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(lo); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval_unchecked(mid).fp;
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                z = mid;
            }
        }
        if (std::abs(eval_unchecked(z).fp) > 1e-12) {
            throw NumericError("build_table: zero refinement failed at i = " + std::to_string(i));
        }

        QuadOptions opt;
        opt.abs_tol = 1e-13;
        opt.rel_tol = 1e-13;
        const QuadResult seg = integrate([](double x) { return eval_unchecked(x).f; }, z, prev_z, opt);
        if (!seg.converged) {
            throw NumericError("build_table: Ai quadrature failed at i = " + std::to_string(i));
        }
        cum_integral += seg.value;
        prev_z = z;

        const Pair p = eval_unchecked(z);
        const double numer = 1.0 + 3.0 * cum_integral;
        const double ci = numer / (3.0 * std::abs(z) * p.f);
        const double ci_second_form = -numer / (3.0 * z * p.f);  // via Ai'' = z Ai
        if (std::abs(ci - ci_second_form) > 1e-9 * std::max(1.0, std::abs(ci))) {
            throw NumericError("build_table: c_i forms disagree at i = " + std::to_string(i));
        }
        t.z.push_back(z);
        t.nu.push_back(std::pow(2.0, -1.0 / 3.0) * std::abs(z));
        t.c.push_back(ci);
    }
    return t;
}

const AiryTable& default_airy_table() {
    static const AiryTable t = build_table(200);
    return t;
}

ConjectureReport conjecture_scan(const AiryTable& table, const std::vector<double>& s_grid) {
    if (s_grid.size() < 2) throw std::domain_error("conjecture_scan: grid needs >= 2 points");
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
        if (!(s_grid[i] > 0.0) || !(s_grid[i] < s_grid[i + 1])) {
            throw std::domain_error("conjecture_scan: grid must be positive and increasing");
        }
    }
    ConjectureReport rep;
    std::vector<double> h(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) h[i] = table.normalized_series(s_grid[i]);
    rep.h_first = h.front();
    rep.h_last = h.back();
    rep.slope_min = kInf;
    rep.slope_max = -kInf;
    for (std::size_t i = 0; i + 1 < h.size(); ++i) {
        const double slope = (h[i + 1] - h[i]) / (s_grid[i + 1] - s_grid[i]);
        rep.slope_min = std::min(rep.slope_min, slope);
        rep.slope_max = std::max(rep.slope_max, slope);
    }
    rep.non_decreasing = rep.slope_min >= -1e-9;
    return rep;
}

}  // namespace resetldp
