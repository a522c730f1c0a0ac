#include "cvtele/epr_model.hpp"

#include <cmath>
#include <numbers>

namespace cvtele {

namespace {

void require_finite(const char* field, double value) {
    if (!std::isfinite(value))
        throw DomainError(field, "must be finite");
}

}  // namespace

void validate(const EprParams& params) {
    require_finite("r", params.r);
    require_finite("eta", params.eta);
    require_finite("nbar", params.nbar);
    if (params.r < 0.0)
        throw DomainError("r", "squeezing must be >= 0");
    if (params.eta < 0.0 || params.eta > 1.0)
        throw DomainError("eta", "transmission must lie in [0, 1]");
    if (params.nbar < 0.0)
        throw DomainError("nbar", "thermal occupancy must be >= 0");
}

GaussianEprState GaussianEprState::from_variances(double sigma_plus_sq, double sigma_minus_sq) {
    require_finite("sigma_plus_sq", sigma_plus_sq);
    require_finite("sigma_minus_sq", sigma_minus_sq);
    if (sigma_plus_sq <= 0.0)
        throw DomainError("sigma_plus_sq", "must be > 0");
    if (sigma_minus_sq <= 0.0)
        throw DomainError("sigma_minus_sq", "must be > 0");
    return GaussianEprState(sigma_plus_sq, sigma_minus_sq);
}

GaussianEprState make_state(const EprParams& params) {
    validate(params);
    const double noise = (1.0 - params.eta) * (1.0 + 2.0 * params.nbar);
    const double sp = params.eta * std::exp(2.0 * params.r) + noise;
    const double sm = params.eta * std::exp(-2.0 * params.r) + noise;
    return GaussianEprState::from_variances(sp, sm);
}

double wigner(const GaussianEprState& state, const TwoModePoint& pt) {
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double sum_x = pt.x1 + pt.x2;
    const double dif_p = pt.p1 - pt.p2;
    const double dif_x = pt.x1 - pt.x2;
    const double sum_p = pt.p1 + pt.p2;
    const double exponent =
        -(sum_x * sum_x + dif_p * dif_p) / sp - (dif_x * dif_x + sum_p * sum_p) / sm;
    constexpr double norm = 4.0 / (std::numbers::pi * std::numbers::pi);
    return norm / (sp * sm) * std::exp(exponent);
}

SecondMoments second_moments(const GaussianEprState& state) {
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double var = (sp + sm) / 8.0;
    const double cov = (sp - sm) / 8.0;
    return SecondMoments{var, var, cov, -cov};
}

double mu_opt(const GaussianEprState& state) {
    const SecondMoments m = second_moments(state);
    return m.cov_xx / m.var_x;
}

double mu_opt_pure_loss(double r, double eta) {
    validate(EprParams{r, eta, 0.0});
    return eta * std::sinh(2.0 * r) / ((1.0 - eta) + eta * std::cosh(2.0 * r));
}

}  // namespace cvtele
