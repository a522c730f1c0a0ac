#pragma once

#include <array>

#include "cvtele/epr_model.hpp"

namespace cvtele {

/// Local hidden-variable bound on |B| and |S|.
inline constexpr double kChshLocalBound = 2.0;

/// Expectation of the displaced two-mode parity operator,
/// Pi = (pi^2 / 4) W. Equals 1 at the origin for a pure EPR state.
double pi_corr(const GaussianEprState& state, const TwoModePoint& pt);

/// Banaszek-Wodkiewicz combination
///   B(J) = Pi(0,0;0,0) + Pi(sqrt J,0;0,0) + Pi(0,0;-sqrt J,0) - Pi(sqrt J,0;-sqrt J,0)
/// evaluated through four parity correlations. Requires j >= 0.
double b_of_j(const GaussianEprState& state, double j);

/// Same quantity from the substituted closed form
///   [1 + 2 exp(-J (1/s+ + 1/s-)) - exp(-4J/s-)] / (s+ s-).
double b_of_j_closed_form(const GaussianEprState& state, double j);

struct BellResult {
    double j_max;
    double b_max;
    bool violates;  ///< b_max > 2
};

inline constexpr double kDefaultBellTol = 1e-10;
inline constexpr int kBellGridPoints = 512;

/// Upper end of the J search: 30 sigma_minus_sq, past which every
/// J-dependent term of B is below 1e-12 relative to the constant term.
double bell_search_limit(const GaussianEprState& state);

/// Maximizes B(J) over J >= 0 using a 512-point grid on [0, J_hi] followed by
/// golden-section refinement around the best cell. Returns j_max = 0 when the
/// boundary value B(0) is not beaten.
BellResult maximize_b(const GaussianEprState& state, double tol = kDefaultBellTol);

/// Heuristic large-r condition 2 (1 - eta) cosh 2r < 1 for keeping B > 2.
/// This is an order-of-magnitude guide, not a sharp bound.
bool loss_bound_ok(const EprParams& params);

/// Analyzer phases for the scaled-correlation CHSH test.
struct ChshAngles {
    double phi1 = 0.0;
    double phi1_alt = 0.0;
    double phi2 = 0.0;
    double phi2_alt = 0.0;

    bool operator==(const ChshAngles&) const = default;
};

/// CHSH built from the fringe correlation E(phi1, phi2) = V cos(phi1 - phi2 + theta).
struct ScaledChsh {
    double visibility;
    double theta;
    ChshAngles angles;
    double s_value;
    double m_scale;  ///< coincidence-rate scale; carried along, does not enter S
};

double scaled_correlation(double visibility, double theta, double phi1, double phi2);

/// S = E(a, b) + E(a', b) + E(a, b') - E(a', b'). Rejects visibility outside [0, 1].
ScaledChsh scaled_chsh(double visibility, double theta, const ChshAngles& angles,
                       double m_scale = 1.0);

/// Searches analyzer phases for the largest S. The optimum is 2 sqrt(2) V
/// for every theta; theta only moves the optimal phases.
ScaledChsh optimize_scaled_chsh(double visibility, double theta, double m_scale = 1.0);

}  // namespace cvtele
