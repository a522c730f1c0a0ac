#pragma once

#include "cvtele/epr_model.hpp"

namespace cvtele {

/// Best average fidelity for coherent inputs without shared entanglement.
inline constexpr double kClassicalFidelity = 0.5;

/// Average fidelity of unit-gain coherent-state teleportation with a given
/// EPR resource. The classical flags are derived from the Duan sum directly
/// so that beats_classical and duan_sum < 1 can never disagree by rounding.
struct FidelityResult {
    double fidelity;
    bool beats_classical;   ///< F > 1/2
    bool beats_two_thirds;  ///< F > 2/3
};

/// F = 1 / (1 + sigma_minus_sq).
FidelityResult fidelity(const GaussianEprState& state);

/// nbar = 0 closed form: F = 1 / (2 - eta (1 - e^{-2r})).
double fidelity_pure_loss(double r, double eta);

}  // namespace cvtele
