#include "cvtele/criteria.hpp"

#include <cmath>

namespace cvtele {

double duan_sum(const GaussianEprState& state) {
    // <(x1-x2)^2> = <(p1+p2)^2> = sigma_minus_sq / 2
    return 2.0 * (state.sigma_minus_sq() / 2.0);
}

NbarThreshold nbar_threshold(double r, double eta) {
    validate(EprParams{r, eta, 0.0});
    if (eta == 1.0)
        return NbarThreshold::unbounded();
    return NbarThreshold::finite(eta * (1.0 - std::exp(-2.0 * r)) / (2.0 * (1.0 - eta)));
}

MuVariances mu_variances(const GaussianEprState& state, double mu) {
    if (!std::isfinite(mu))
        throw DomainError("mu", "must be finite");
    // var_x(1+mu^2) - 2 mu cov_xx, regrouped as a sum of non-negative terms
    // so nothing cancels near the vacuum floor.
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double v = (sp * (1.0 - mu) * (1.0 - mu) + sm * (1.0 + mu) * (1.0 + mu)) / 8.0;
    return MuVariances{v, v};
}

ConditionalVariances conditional_variances(const GaussianEprState& state) {
    // var - cov^2/var with var = (s+ + s-)/8, cov = (s+ - s-)/8
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double v = sp * sm / (2.0 * (sp + sm));
    return ConditionalVariances{v, v};
}

MuCriteria evaluate_at_mu(const GaussianEprState& state, double mu) {
    const MuVariances v = mu_variances(state, mu);
    const double product = v.dx_mu_sq * v.dp_mu_sq;
    const double sum = v.dx_mu_sq + v.dp_mu_sq;
    return MuCriteria{
        mu,
        v.dx_mu_sq,
        v.dp_mu_sq,
        product,
        product < 1.0 / 16.0,
        sum < 0.5,
        sum < (1.0 + mu * mu) / 2.0,
    };
}

CriteriaReport classify(const EprParams& params, std::optional<double> mu) {
    const GaussianEprState state = make_state(params);
    const double gain = mu.value_or(mu_opt(state));
    const double sum = duan_sum(state);
    const MuCriteria chosen = evaluate_at_mu(state, gain);
    const MuCriteria unit = evaluate_at_mu(state, 1.0);
    const ConditionalVariances cv = conditional_variances(state);

    return CriteriaReport{
        params,
        sum,
        duan_nonseparable(sum),
        chosen.mu,
        chosen.dx_mu_sq,
        chosen.dp_mu_sq,
        cv.x,
        cv.p,
        chosen.gg_product,
        chosen.gg_hi_satisfied,
        chosen.gg_sum_satisfied,
        chosen.simon_mu_nonseparable,
        nbar_threshold(params.r, params.eta),
        unit,
        unit.gg_sum_satisfied,
    };
}

}  // namespace cvtele
