#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace resetldp {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
    double divergence_threshold = 1e12;  // partial integral above this is treated as +inf
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    bool diverged = false;  // integral classified as +infinity
    int evaluations = 0;
};

namespace detail {

// G7-K15 rule (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
inline void gk15(F&& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    // index layout: 0..6 -> -x7..-x1, 7 -> centre, 8..14 -> x1..x7
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kGK15Nodes[i]);
        fv[14 - i] = f(c + h * kGK15Nodes[i]);
    }
    fv[7] = f(c);
    double resk = kGK15WeightsK[7] * fv[7];
    double resg = kGK15WeightsG[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kGK15WeightsK[i] * (fv[i] + fv[14 - i]);
    }
    for (int i = 0; i < 3; ++i) {
        // Gauss nodes sit at kGK15Nodes indices 1, 3, 5.
        resg += kGK15WeightsG[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    }
    value = resk * h;
    const double diff = std::abs(resk - resg) * h;
    // QUADPACK-style sharpened error estimate.
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) resabs += kGK15WeightsK[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    resabs = (resabs + kGK15WeightsK[7] * std::abs(fv[7])) * std::abs(h);
    error = diff;
    if (resabs > 0.0 && diff > 0.0) {
        error = resabs * std::min(1.0, std::pow(200.0 * diff / resabs, 1.5));
    }
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Integrable endpoint
// singularities are handled by bisection toward the endpoint.
template <typename F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::priority_queue<detail::Segment> heap;
    detail::Segment s0{a, b, 0.0, 0.0};
    detail::gk15(f, a, b, s0.value, s0.error);
    res.evaluations += 15;
    double total = s0.value;
    double toterr = s0.error;
    heap.push(s0);
    int n = 1;
    while (toterr > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && n < opt.max_intervals) {
        detail::Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; keep its estimate
            total += 0.0;
            heap.push(detail::Segment{worst.a, worst.b, worst.value, 0.0});
            toterr -= worst.error;
            continue;
        }
        detail::Segment left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
        detail::gk15(f, left.a, left.b, left.value, left.error);
        detail::gk15(f, right.a, right.b, right.value, right.error);
        res.evaluations += 30;
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++n;
        if (!std::isfinite(total)) break;
    }
    res.value = total;
    res.error = toterr;
    res.converged = std::isfinite(total) &&
                    toterr <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (!std::isfinite(total) || std::abs(total) > opt.divergence_threshold) {
        res.diverged = true;
        res.converged = false;
    }
    return res;
}

// Semi-infinite integral over [a, +inf) of a non-negative-tailed integrand.
// Geometrically growing segments; declares divergence when the running sum
// exceeds the divergence threshold or the segment contributions fail to
// decay. `scale` sets the width of the first segment.
template <typename F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}, double scale = 1.0) {
    QuadResult res;
    double lo = a;
    double width = std::max(scale, 1e-8);
    double total = 0.0;
    double toterr = 0.0;
    double prev_mag = -1.0;
    int non_decaying = 0;
    int small_count = 0;
    const int max_segments = 220;  // lo reaches ~a + scale * 2^110; plenty for any tail here
    for (int seg = 0; seg < max_segments; ++seg) {
        const double hi = lo + width;
        QuadOptions local = opt;
        local.abs_tol = std::max(opt.abs_tol * 0.1, 1e-16);
        QuadResult part = integrate(f, lo, hi, local);
        res.evaluations += part.evaluations;
        if (part.diverged) {
            res.diverged = true;
            res.value = total;
            return res;
        }
        total += part.value;
        toterr += part.error;
        if (!std::isfinite(total) || std::abs(total) > opt.divergence_threshold) {
            res.diverged = true;
            res.value = total;
            return res;
        }
        const double mag = std::abs(part.value);
        const double floor_tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        if (mag < 0.25 * floor_tol) {
            if (++small_count >= 2) {
                res.value = total;
                res.error = toterr + mag;  // crude geometric-tail allowance
                res.converged = true;
                return res;
            }
        } else {
            small_count = 0;
        }
        if (prev_mag >= 0.0 && mag > 0.0) {
            if (mag >= 0.98 * prev_mag && mag > floor_tol) {
                if (++non_decaying >= 8) {
                    res.diverged = true;
                    res.value = total;
                    return res;
                }
            } else {
                non_decaying = 0;
            }
        }
        prev_mag = mag;
        lo = hi;
        width *= 2.0;
    }
    res.value = total;
    res.error = toterr;
    res.converged = false;  // ran out of segments without a clean tail
    return res;
}

// Gauss-Legendre nodes/weights on [-1,1], computed once per order by Newton
// iteration on the Legendre recurrence.
struct GaussLegendre {
    std::vector<double> x, w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / pp;
                z -= dz;
                if (std::abs(dz) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }

    template <typename F>
    double integrate(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * f(c + h * x[i]);
        return sum * h;
    }
};

inline const GaussLegendre& gl256() {
    static const GaussLegendre rule(256);
    return rule;
}

inline const GaussLegendre& gl512() {
    static const GaussLegendre rule(512);
    return rule;
}

}  // namespace resetldp
