#pragma once

#include <optional>
#include <string>

#include "cvtele/epr_model.hpp"

namespace cvtele {

/// Critical thermal occupancy, or "no constraint" at full transmission.
class NbarThreshold {
public:
    static NbarThreshold finite(double value) { return NbarThreshold(value); }
    static NbarThreshold unbounded() { return NbarThreshold(std::nullopt); }

    bool is_unbounded() const noexcept { return !value_; }
    /// Precondition: !is_unbounded().
    double value() const { return value_.value(); }
    /// True when nbar lies strictly below the threshold (state nonseparable).
    bool admits(double nbar) const noexcept { return !value_ || nbar < *value_; }

    bool operator==(const NbarThreshold&) const = default;

private:
    explicit NbarThreshold(std::optional<double> v) : value_(v) {}
    std::optional<double> value_;
};

/// <(x1 - x2)^2> + <(p1 + p2)^2>, which equals sigma_minus_sq.
double duan_sum(const GaussianEprState& state);

/// Duan-Simon criterion with a = 1: strictly below 1 means nonseparable.
inline bool duan_nonseparable(double sum) { return sum < 1.0; }

/// Largest nbar for which the lossy state stays nonseparable:
/// eta (1 - e^{-2r}) / (2 (1 - eta)). Unbounded at eta = 1.
NbarThreshold nbar_threshold(double r, double eta);

struct MuVariances {
    double dx_mu_sq;  ///< <(x1 - mu x2)^2>
    double dp_mu_sq;  ///< <(p1 + mu p2)^2>
};

MuVariances mu_variances(const GaussianEprState& state, double mu);

struct ConditionalVariances {
    double x;  ///< V_{x2|x1} = V_{x1|x2}
    double p;  ///< V_{p2|p1} = V_{p1|p2}
};

ConditionalVariances conditional_variances(const GaussianEprState& state);

/// Every inequality evaluated at one estimator gain.
struct MuCriteria {
    double mu;
    double dx_mu_sq;
    double dp_mu_sq;
    double gg_product;           ///< dx_mu_sq * dp_mu_sq
    bool gg_hi_satisfied;        ///< product < 1/16
    bool gg_sum_satisfied;       ///< sum < 1/2
    bool simon_mu_nonseparable;  ///< sum < (1 + mu^2) / 2
};

MuCriteria evaluate_at_mu(const GaussianEprState& state, double mu);

/// All boundary predicates for one parameter point.
///
/// The flat fields (mu, dx_mu_sq, ...) are evaluated at the requested gain,
/// which defaults to mu_opt. `at_unit_mu` repeats the evaluation at mu = 1,
/// the gain used by the unit-gain teleportation protocol.
struct CriteriaReport {
    EprParams params;
    double duan_sum;
    bool duan_nonseparable;
    double mu;
    double dx_mu_sq;
    double dp_mu_sq;
    double cond_var_x;
    double cond_var_p;
    double gg_product;
    bool gg_hi_satisfied;
    bool gg_sum_satisfied;
    bool simon_mu_nonseparable;
    NbarThreshold nbar_threshold;
    MuCriteria at_unit_mu;
    /// Information-exchange criterion: holds whenever the mu = 1 sum is < 1/2.
    bool gg_info_exchange_satisfied;
};

CriteriaReport classify(const EprParams& params, std::optional<double> mu = std::nullopt);

}  // namespace cvtele
