#pragma once

#include <cstddef>
#include <vector>

#include "resetldp/quadrature.hpp"

namespace resetldp {

// Airy function machinery for the absolute-area spectral series
//   E[exp(-s * int_0^1 |B|)] = sum_i c_i exp(-nu_i s^{2/3}),
// where nu_i = 2^{-1/3} |z_i|, z_i the negative zeros of Ai', and
//   c_i = (1 + 3 int_{z_i}^0 Ai) / (3 |z_i| Ai(z_i)).

// Ai(x) and Ai'(x) for x in [-60, 10], relative accuracy ~1e-12.
double ai(double x);
double ai_prime(double x);
// Ai''(x) = x Ai(x) by the defining equation.
inline double ai_second(double x) { return x * ai(x); }

struct AiryTable {
    std::vector<double> z;   // zeros of Ai', strictly decreasing, all < 0
    std::vector<double> nu;  // 2^{-1/3} |z_i|, strictly increasing
    std::vector<double> c;   // series coefficients

    std::size_t count() const { return z.size(); }

    // E[e^{-s A}] with A = int_0^1 |B|; value in (0,1], equal to 1 at s=0.
    // err_est, when given, receives the series truncation estimate.
    double abs_area_laplace(double s, double* err_est = nullptr) const;

    // Partial information for h(s) = sum_i c_i e^{-(nu_i - nu_1) s^{2/3}},
    // the normalized series whose monotonicity is conjectured.
    double normalized_series(double s, double* err_est = nullptr) const;
};

// Builds zeros by Newton iteration on Ai' seeded from the asymptotic guess,
// with a bisection fallback between consecutive seeds so no zero is skipped.
// count is limited to 210 by the supported evaluation range of ai().
AiryTable build_table(std::size_t count);

// Shared default table (i_max = 200), built once.
const AiryTable& default_airy_table();

struct ConjectureReport {
    double slope_min = 0.0;
    double slope_max = 0.0;
    bool non_decreasing = false;
    double h_first = 0.0;  // h at the smallest grid point
    double h_last = 0.0;   // h at the largest grid point
};

// Numerical probe of the conjectured monotonicity of the normalized series;
// not a proof. Grid must be positive and increasing.
ConjectureReport conjecture_scan(const AiryTable& table, const std::vector<double>& s_grid);

}  // namespace resetldp
