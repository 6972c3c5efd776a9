#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "resetldp/extended.hpp"
#include "resetldp/quadrature.hpp"
#include "resetldp/rng.hpp"

namespace resetldp {

// Waiting-time families for the resetting protocol. Survival functions:
//   Exponential(r)       exp(-r s)
//   CubicSuperExp(r)     exp(-r s^3)
//   ExpPoly(alpha)       exp(-s) / (1 + s^alpha)
//   StretchedPlusExp(b)  exp(-s^b - s),  b in (0,1)
enum class Family { Exponential, CubicSuperExp, ExpPoly, StretchedPlusExp };

std::string family_name(Family f);

// Immutable after construction; safe to share across threads. Samplers take
// an external rng, one stream per worker.
class WaitingTimeModel {
  public:
    static WaitingTimeModel exponential(double rate);
    static WaitingTimeModel cubic_super_exp(double rate);
    static WaitingTimeModel exp_poly(double alpha);
    static WaitingTimeModel stretched_plus_exp(double beta);

    Family family() const { return family_; }
    double param() const { return param_; }

    double survival(double s) const;      // P[S > s]
    double log_survival(double s) const;  // exact, never underflows
    double density(double s) const;       // -d/ds survival

    // density(s) = density_prefactor(s) * exp(exp_part(s)). Downstream
    // integrals fold tilts e^{zeta s} (and e^{r s^3} for the cubic family)
    // into the exponent analytically, so the decomposition is part of the
    // public contract.
    double exp_part(double s) const;
    double density_prefactor(double s) const;

    // lim -log P[S>s] / s and liminf -log P[S>s] / s^3 as extended reals.
    double tail_rate_ell() const;
    double tail_rate_cubic() const;
    // Exponential tail rate of density(s) * exp(tail_rate_cubic * s^3);
    // the finiteness edge left over once the cubic part is cancelled.
    double residual_ell_after_cubic() const;

    // E[e^{zeta S}]; +inf when the integral diverges. Finiteness at the
    // boundary zeta = ell is decided by quadrature, not by a per-family case.
    double mgf(double zeta, const QuadOptions& opt = {}) const;

    // E[S^p e^{zeta S}] for p >= 0; +inf on divergence.
    double mgf_weighted(double zeta, double p, const QuadOptions& opt = {}) const;

    // E[S^p], p >= 0.
    double moment(double p, const QuadOptions& opt = {}) const;

    // Inverse of the survival function: the unique s with P[S>s] = u.
    double inverse_survival(double u) const;
    double sample(Rng& rng) const;

    // Config record {family, params}; exact keys per the JSON schema.
    std::string to_json() const;
    static WaitingTimeModel from_json(const std::string& text);

  private:
    WaitingTimeModel(Family f, double p);
    Family family_;
    double param_;
};

}  // namespace resetldp
