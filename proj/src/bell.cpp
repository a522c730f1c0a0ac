#include "cvtele/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cvtele/golden_section.hpp"

namespace cvtele {

double pi_corr(const GaussianEprState& state, const TwoModePoint& pt) {
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double u = pt.x1 + pt.x2;
    const double v = pt.p1 - pt.p2;
    const double s = pt.x1 - pt.x2;
    const double t = pt.p1 + pt.p2;
    return std::exp(-(u * u + v * v) / sp - (s * s + t * t) / sm) / (sp * sm);
}

double b_of_j(const GaussianEprState& state, double j) {
    if (!(j >= 0.0) || !std::isfinite(j))
        throw DomainError("j", "displacement parameter must be finite and >= 0");
    const double d = std::sqrt(j);
    return pi_corr(state, {0.0, 0.0, 0.0, 0.0})
         + pi_corr(state, {d, 0.0, 0.0, 0.0})
         + pi_corr(state, {0.0, 0.0, -d, 0.0})
         - pi_corr(state, {d, 0.0, -d, 0.0});
}

double b_of_j_closed_form(const GaussianEprState& state, double j) {
    if (!(j >= 0.0) || !std::isfinite(j))
        throw DomainError("j", "displacement parameter must be finite and >= 0");
    const double sp = state.sigma_plus_sq();
    const double sm = state.sigma_minus_sq();
    const double mixed = std::exp(-j * (1.0 / sp + 1.0 / sm));
    const double anti = std::exp(-4.0 * j / sm);
    return (1.0 + 2.0 * mixed - anti) / (sp * sm);
}

double bell_search_limit(const GaussianEprState& state) {
    return 30.0 * state.sigma_minus_sq();
}

BellResult maximize_b(const GaussianEprState& state, double tol) {
    if (!(tol > 0.0))
        throw DomainError("tol", "must be > 0");

    auto b = [&state](double j) { return b_of_j(state, j); };
    const double j_hi = bell_search_limit(state);
    const double step = j_hi / (kBellGridPoints - 1);

    int best = 0;
    double best_value = b(0.0);
    for (int k = 1; k < kBellGridPoints; ++k) {
        const double value = b(k * step);
        if (value > best_value) {
            best_value = value;
            best = k;
        }
    }

    const double lo = std::max(best - 1, 0) * step;
    const double hi = std::min(best + 1, kBellGridPoints - 1) * step;
    const ScalarMax<double> refined = golden_section_maximize(b, lo, hi, tol);

    double j_max = best * step;
    double b_max = best_value;
    if (refined.value > b_max) {
        j_max = refined.arg;
        b_max = refined.value;
    }
    // B(0) wins ties so that boundary maxima report J = 0 exactly.
    const double b0 = b(0.0);
    if (b0 >= b_max) {
        j_max = 0.0;
        b_max = b0;
    }
    return BellResult{j_max, b_max, b_max > kChshLocalBound};
}

bool loss_bound_ok(const EprParams& params) {
    validate(params);
    return 2.0 * (1.0 - params.eta) * std::cosh(2.0 * params.r) < 1.0;
}

double scaled_correlation(double visibility, double theta, double phi1, double phi2) {
    return visibility * std::cos(phi1 - phi2 + theta);
}

namespace {

void require_visibility(double v) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw DomainError("visibility", "must lie in [0, 1]");
}

double chsh_value(double v, double theta, const ChshAngles& a) {
    return scaled_correlation(v, theta, a.phi1, a.phi2)
         + scaled_correlation(v, theta, a.phi1_alt, a.phi2)
         + scaled_correlation(v, theta, a.phi1, a.phi2_alt)
         - scaled_correlation(v, theta, a.phi1_alt, a.phi2_alt);
}

// S is sinusoidal in each single phase, S(t) = c + A cos t + B sin t, so the
// exact coordinate-wise maximizer is atan2(B, A). Three probes recover A and B.
void maximize_coordinate(double v, double theta, ChshAngles& angles, double ChshAngles::*coord) {
    auto at = [&](double t) {
        ChshAngles probe = angles;
        probe.*coord = t;
        return chsh_value(v, theta, probe);
    };
    const double s0 = at(0.0);
    const double s_half = at(std::numbers::pi / 2.0);
    const double s_pi = at(std::numbers::pi);
    const double cos_coeff = (s0 - s_pi) / 2.0;
    const double sin_coeff = s_half - (s0 + s_pi) / 2.0;
    angles.*coord = std::atan2(sin_coeff, cos_coeff);
}

}  // namespace

ScaledChsh scaled_chsh(double visibility, double theta, const ChshAngles& angles,
                       double m_scale) {
    require_visibility(visibility);
    if (!std::isfinite(theta))
        throw DomainError("theta", "must be finite");
    return ScaledChsh{visibility, theta, angles, chsh_value(visibility, theta, angles), m_scale};
}

ScaledChsh optimize_scaled_chsh(double visibility, double theta, double m_scale) {
    require_visibility(visibility);
    if (!std::isfinite(theta))
        throw DomainError("theta", "must be finite");

    // S only depends on phase differences, so phi1 stays pinned at 0. The
    // search runs at unit visibility; S scales linearly in V afterwards.
    const std::array<ChshAngles, 3> starts{{
        {0.0, 1.1, 0.4, -0.9},
        {0.0, -2.0, 1.7, 0.3},
        {0.0, 2.6, -1.2, 2.2},
    }};

    ChshAngles best_angles = starts[0];
    double best = chsh_value(1.0, theta, best_angles);
    for (ChshAngles angles : starts) {
        double current = chsh_value(1.0, theta, angles);
        for (int sweep = 0; sweep < 2000; ++sweep) {
            maximize_coordinate(1.0, theta, angles, &ChshAngles::phi2);
            maximize_coordinate(1.0, theta, angles, &ChshAngles::phi2_alt);
            maximize_coordinate(1.0, theta, angles, &ChshAngles::phi1_alt);
            const double next = chsh_value(1.0, theta, angles);
            const bool stalled = next - current <= 1e-16;
            current = next;
            if (stalled)
                break;
        }
        if (current > best) {
            best = current;
            best_angles = angles;
        }
    }
    return scaled_chsh(visibility, theta, best_angles, m_scale);
}

}  // namespace cvtele
