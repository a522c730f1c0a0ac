#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cvtele/epr_model.hpp"

namespace cvtele {

// Monte-Carlo cross-check of the analytic teleportation fidelity.
//
// Random numbers: each block of kOracleBlockSize samples draws from its own
// std::mt19937_64 seeded with splitmix64(seed + block * 0x9E3779B97F4A7C15).
// Uniforms take the top 53 bits of an engine word; normals come from the
// Marsaglia polar method. Block statistics merge in block order, so estimates
// do not depend on how blocks are spread across workers. The only
// platform-dependent step is std::log/std::sqrt rounding in the polar
// transform (documented tolerance 1e-12 on the estimates).

inline constexpr std::uint64_t kOracleBlockSize = 1u << 16;

struct OracleConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

struct OracleEstimate {
    std::uint64_t samples;
    double fidelity_hat;
    double std_error;       ///< standard error of fidelity_hat
    double duan_sum_hat;    ///< sampled <(x1 - x2)^2> + <(p1 + p2)^2>
    double duan_std_error;

    /// |fidelity_hat - analytic| <= k * std_error.
    bool agrees_with(double analytic, double k = 3.0) const;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Standard normal variates from a seeded 64-bit Mersenne Twister.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();  ///< in [0, 1), 53-bit resolution
    double next();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Draws phase-space points from the EPR Wigner density by sampling the
/// independent sum/difference quadratures and solving for (x1, p1, x2, p2).
class EprSampler {
public:
    EprSampler(const GaussianEprState& state, std::uint64_t seed, std::uint64_t block = 0);

    TwoModePoint next();

private:
    double sd_plus_;
    double sd_minus_;
    NormalStream normals_;
};

/// The first config.samples points of the block-structured stream.
std::vector<TwoModePoint> sample_epr(const GaussianEprState& state, const OracleConfig& config);

/// Unit-gain teleportation noise (n_x, n_p) = (x2 - x1, p2 + p1) per sample;
/// the fidelity estimate averages exp(-(n_x^2 + n_p^2)), the overlap of a
/// coherent state with its displaced copy. Requires samples >= 2.
OracleEstimate mc_fidelity(const GaussianEprState& state, const OracleConfig& config,
                           unsigned workers = 1);

}  // namespace cvtele
