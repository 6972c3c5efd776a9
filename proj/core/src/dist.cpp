#include "resetldp/dist.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace resetldp {

std::string family_name(Family f) {
    switch (f) {
        case Family::Exponential: return "exponential";
        case Family::CubicSuperExp: return "cubic-super-exp";
        case Family::ExpPoly: return "exp-poly";
        case Family::StretchedPlusExp: return "stretched-plus-exp";
    }
    throw std::logic_error("unreachable");
}

WaitingTimeModel::WaitingTimeModel(Family f, double p) : family_(f), param_(p) {}

WaitingTimeModel WaitingTimeModel::exponential(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential: rate must be > 0");
    return {Family::Exponential, rate};
}

WaitingTimeModel WaitingTimeModel::cubic_super_exp(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("cubic-super-exp: rate must be > 0");
    return {Family::CubicSuperExp, rate};
}

WaitingTimeModel WaitingTimeModel::exp_poly(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("exp-poly: alpha must be > 0");
    return {Family::ExpPoly, alpha};
}

WaitingTimeModel WaitingTimeModel::stretched_plus_exp(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("stretched-plus-exp: beta must be in (0,1)");
    return {Family::StretchedPlusExp, beta};
}

double WaitingTimeModel::log_survival(double s) const {
    if (s < 0.0) throw std::domain_error("survival: s must be >= 0");
    switch (family_) {
        case Family::Exponential: return -param_ * s;
        case Family::CubicSuperExp: return -param_ * s * s * s;
        case Family::ExpPoly: return -s - std::log1p(std::pow(s, param_));
        case Family::StretchedPlusExp: return -std::pow(s, param_) - s;
    }
    throw std::logic_error("unreachable");
}

double WaitingTimeModel::survival(double s) const { return std::exp(log_survival(s)); }

double WaitingTimeModel::exp_part(double s) const {
    switch (family_) {
        case Family::Exponential: return -param_ * s;
        case Family::CubicSuperExp: return -param_ * s * s * s;
        case Family::ExpPoly: return -s;
        case Family::StretchedPlusExp: return -std::pow(s, param_) - s;
    }
    throw std::logic_error("unreachable");
}

double WaitingTimeModel::density_prefactor(double s) const {
    switch (family_) {
        case Family::Exponential:
            return param_;
        case Family::CubicSuperExp:
            return 3.0 * param_ * s * s;
        case Family::ExpPoly: {
            const double sa = std::pow(s, param_);
            const double da = param_ * std::pow(s, param_ - 1.0);  // +inf at s=0 for alpha<1
            return (1.0 + sa + da) / ((1.0 + sa) * (1.0 + sa));
        }
        case Family::StretchedPlusExp:
            return param_ * std::pow(s, param_ - 1.0) + 1.0;
    }
    throw std::logic_error("unreachable");
}

double WaitingTimeModel::density(double s) const {
    if (s < 0.0) throw std::domain_error("density: s must be >= 0");
    return density_prefactor(s) * std::exp(exp_part(s));
}

double WaitingTimeModel::tail_rate_ell() const {
    switch (family_) {
        case Family::Exponential: return param_;
        case Family::CubicSuperExp: return kInf;
        case Family::ExpPoly: return 1.0;
        case Family::StretchedPlusExp: return 1.0;
    }
    throw std::logic_error("unreachable");
}

double WaitingTimeModel::tail_rate_cubic() const {
    return family_ == Family::CubicSuperExp ? param_ : 0.0;
}

double WaitingTimeModel::residual_ell_after_cubic() const {
    return family_ == Family::CubicSuperExp ? 0.0 : tail_rate_ell();
}

double WaitingTimeModel::mgf(double zeta, const QuadOptions& opt) const {
    if (zeta == 0.0) return 1.0;
    if (family_ == Family::Exponential) {
        return zeta < param_ ? param_ / (param_ - zeta) : kInf;
    }
    const double ell = tail_rate_ell();
    if (zeta > ell) return kInf;
    // E[e^{zeta S}] = 1 + zeta * int_0^inf e^{zeta s} P[S>s] ds. The
    // integrand is evaluated in exp-log form so that at zeta near ell the
    // exponential parts cancel analytically.
    auto integrand = [&](double s) { return std::exp(zeta * s + log_survival(s)); };
    QuadResult q = integrate_to_infinity(integrand, 0.0, opt);
    if (q.diverged || (!q.converged && zeta > 0.0)) return kInf;
    if (!q.converged) {
        throw NumericError("mgf: quadrature failed to converge (family " + family_name(family_) +
                           ", zeta " + format_extended(zeta) + ")");
    }
    return 1.0 + zeta * q.value;
}

double WaitingTimeModel::mgf_weighted(double zeta, double p, const QuadOptions& opt) const {
    if (p == 0.0) return mgf(zeta, opt);
    if (p < 0.0) throw std::domain_error("mgf_weighted: p must be >= 0");
    if (family_ == Family::Exponential) {
        if (zeta >= param_) return kInf;
        return param_ * std::tgamma(p + 1.0) / std::pow(param_ - zeta, p + 1.0);
    }
    if (zeta > tail_rate_ell()) return kInf;
    auto integrand = [&](double s) {
        return std::pow(s, p) * density_prefactor(s) * std::exp(zeta * s + exp_part(s));
    };
    QuadResult head = integrate(integrand, 0.0, 1.0, opt);
    QuadResult tail = integrate_to_infinity(integrand, 1.0, opt);
    if (head.diverged || tail.diverged) return kInf;
    if (!head.converged || !tail.converged) {
        if (zeta > 0.0) return kInf;  // boundary-of-finiteness case
        throw NumericError("mgf_weighted: quadrature failed (family " + family_name(family_) + ")");
    }
    return head.value + tail.value;
}

double WaitingTimeModel::moment(double p, const QuadOptions& opt) const {
    if (p < 0.0) throw std::domain_error("moment: p must be >= 0");
    if (p == 0.0) return 1.0;
    switch (family_) {
        case Family::Exponential:
            return std::tgamma(p + 1.0) / std::pow(param_, p);
        case Family::CubicSuperExp:
            return std::tgamma(1.0 + p / 3.0) / std::pow(param_, p / 3.0);
        default:
            break;
    }
    // E[S^p] = p * int s^{p-1} P[S>s] ds; the [0,1] part is flattened by
    // s = u^{1/p} so the endpoint singularity for p < 1 disappears.
    auto head_f = [&](double u) { return survival(std::pow(u, 1.0 / p)); };
    QuadResult head = integrate(head_f, 0.0, 1.0, opt);
    auto tail_f = [&](double s) { return p * std::exp((p - 1.0) * std::log(s) + log_survival(s)); };
    QuadResult tail = integrate_to_infinity(tail_f, 1.0, opt);
    if (!head.converged || !tail.converged) {
        throw NumericError("moment: quadrature failed (family " + family_name(family_) + ")");
    }
    return head.value + tail.value;
}

double WaitingTimeModel::inverse_survival(double u) const {
    if (!(u > 0.0 && u <= 1.0)) throw std::domain_error("inverse_survival: u must be in (0,1]");
    if (u == 1.0) return 0.0;
    const double target = std::log(u);
    switch (family_) {
        case Family::Exponential:
            return -target / param_;
        case Family::CubicSuperExp:
            return std::cbrt(-target / param_);
        default:
            break;
    }
    double hi = 1.0;
    while (log_survival(hi) > target) hi *= 2.0;
    double lo = 0.0;
    // survival is strictly decreasing; bisection to relative tolerance 1e-12
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_survival(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double WaitingTimeModel::sample(Rng& rng) const { return inverse_survival(uniform01(rng)); }

std::string WaitingTimeModel::to_json() const {
    nlohmann::json j;
    j["family"] = family_name(family_);
    const char* key = (family_ == Family::Exponential || family_ == Family::CubicSuperExp)
                          ? "rate"
                          : (family_ == Family::ExpPoly ? "alpha" : "beta");
    j["params"] = nlohmann::json::object({{key, param_}});
    return j.dump();
}

WaitingTimeModel WaitingTimeModel::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::string fam = j.at("family").get<std::string>();
    const auto& params = j.at("params");
    if (fam == "exponential") return exponential(params.at("rate").get<double>());
    if (fam == "cubic-super-exp") return cubic_super_exp(params.at("rate").get<double>());
    if (fam == "exp-poly") return exp_poly(params.at("alpha").get<double>());
    if (fam == "stretched-plus-exp") return stretched_plus_exp(params.at("beta").get<double>());
    throw std::invalid_argument("unknown waiting-time family: " + fam);
}

}  // namespace resetldp
