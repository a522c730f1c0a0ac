#include "cvtele/teleport.hpp"

#include <cmath>

#include "cvtele/criteria.hpp"

namespace cvtele {

FidelityResult fidelity(const GaussianEprState& state) {
    const double sum = duan_sum(state);
    return FidelityResult{
        1.0 / (1.0 + sum),
        sum < 1.0,
        sum < 0.5,
    };
}

double fidelity_pure_loss(double r, double eta) {
    validate(EprParams{r, eta, 0.0});
    return 1.0 / (2.0 - eta * (1.0 - std::exp(-2.0 * r)));
}

}  // namespace cvtele
