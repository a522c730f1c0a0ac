#pragma once

#include <stdexcept>
#include <string>

namespace cvtele {

// Quadratures follow alpha = x + i p, so the vacuum has <x^2> = <p^2> = 1/4.
// Every threshold used elsewhere in the library (1/16, 1/2, 1) assumes this.

/// Raised for parameters outside their physical range. what() names the field.
class DomainError : public std::invalid_argument {
public:
    DomainError(std::string field, const std::string& detail)
        : std::invalid_argument(field + ": " + detail), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Physical knobs of the lossy EPR source.
struct EprParams {
    double r = 0.0;     ///< squeezing parameter, >= 0
    double eta = 1.0;   ///< beam-splitter transmission, in [0, 1]
    double nbar = 0.0;  ///< thermal occupancy of the loss ancillas, >= 0
};

/// Throws DomainError if any field is non-finite or out of range.
void validate(const EprParams& params);

/// Two-mode Gaussian state of the EPR beams after loss.
///
/// The state is fully described by two variance scales: sigma_plus_sq for the
/// (x1 + x2, p1 - p2) pair and sigma_minus_sq for the (x1 - x2, p1 + p2) pair.
/// Each of those combinations has variance sigma_sq / 2.
class GaussianEprState {
public:
    /// Builds a state from raw variance scales; both must be finite and > 0.
    static GaussianEprState from_variances(double sigma_plus_sq, double sigma_minus_sq);

    double sigma_plus_sq() const noexcept { return sigma_plus_sq_; }
    double sigma_minus_sq() const noexcept { return sigma_minus_sq_; }

    bool operator==(const GaussianEprState&) const = default;

private:
    GaussianEprState(double sp, double sm) : sigma_plus_sq_(sp), sigma_minus_sq_(sm) {}

    double sigma_plus_sq_;
    double sigma_minus_sq_;
};

/// Phase-space point for both modes.
struct TwoModePoint {
    double x1 = 0.0;
    double p1 = 0.0;
    double x2 = 0.0;
    double p2 = 0.0;

    bool operator==(const TwoModePoint&) const = default;
};

/// Second moments of the (zero-mean, symmetric) two-mode state.
struct SecondMoments {
    double var_x;   ///< <x1^2> = <x2^2>
    double var_p;   ///< <p1^2> = <p2^2>
    double cov_xx;  ///< <x1 x2>
    double cov_pp;  ///< <p1 p2> = -cov_xx
};

/// sigma_pm^2 = eta e^{+-2r} + (1 - eta)(1 + 2 nbar).
GaussianEprState make_state(const EprParams& params);

/// Wigner density of the lossy EPR state. Always strictly positive.
double wigner(const GaussianEprState& state, const TwoModePoint& pt);

SecondMoments second_moments(const GaussianEprState& state);

/// Optimal linear-estimator gain <x1 x2> / <x1^2>.
double mu_opt(const GaussianEprState& state);

/// Closed form of the optimal gain for nbar = 0:
///   eta sinh 2r / ((1 - eta) + eta cosh 2r).
double mu_opt_pure_loss(double r, double eta);

}  // namespace cvtele
