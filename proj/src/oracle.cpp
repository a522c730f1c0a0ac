#include "cvtele/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "cvtele/parallel.hpp"

namespace cvtele {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    return splitmix64(seed + block * kGoldenGamma);
}

std::uint64_t block_count(std::uint64_t samples) {
    return (samples + kOracleBlockSize - 1) / kOracleBlockSize;
}

std::uint64_t block_length(std::uint64_t samples, std::uint64_t block) {
    const std::uint64_t begin = block * kOracleBlockSize;
    return std::min(kOracleBlockSize, samples - begin);
}

// Running mean and sum of squared deviations (Welford / Chan et al.).
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.n == 0.0)
            return;
        const double total = n + other.n;
        const double delta = other.mean - mean;
        mean += delta * other.n / total;
        m2 += other.m2 + delta * delta * n * other.n / total;
        n = total;
    }

    double std_error() const { return std::sqrt(m2 / (n - 1.0) / n); }
};

struct BlockStats {
    Moments fidelity;
    Moments duan;
};

}  // namespace

bool OracleEstimate::agrees_with(double analytic, double k) const {
    return std::abs(fidelity_hat - analytic) <= k * std_error;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGoldenGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double NormalStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

EprSampler::EprSampler(const GaussianEprState& state, std::uint64_t seed, std::uint64_t block)
    : sd_plus_(std::sqrt(state.sigma_plus_sq() / 2.0)),
      sd_minus_(std::sqrt(state.sigma_minus_sq() / 2.0)),
      normals_(block_seed(seed, block)) {}

TwoModePoint EprSampler::next() {
    const double sum_x = sd_plus_ * normals_.next();   // x1 + x2
    const double dif_p = sd_plus_ * normals_.next();   // p1 - p2
    const double dif_x = sd_minus_ * normals_.next();  // x1 - x2
    const double sum_p = sd_minus_ * normals_.next();  // p1 + p2
    return TwoModePoint{
        (sum_x + dif_x) / 2.0,
        (sum_p + dif_p) / 2.0,
        (sum_x - dif_x) / 2.0,
        (sum_p - dif_p) / 2.0,
    };
}

std::vector<TwoModePoint> sample_epr(const GaussianEprState& state, const OracleConfig& config) {
    std::vector<TwoModePoint> points;
    points.reserve(config.samples);
    for (std::uint64_t block = 0; block < block_count(config.samples); ++block) {
        EprSampler sampler(state, config.seed, block);
        const std::uint64_t len = block_length(config.samples, block);
        for (std::uint64_t i = 0; i < len; ++i)
            points.push_back(sampler.next());
    }
    return points;
}

OracleEstimate mc_fidelity(const GaussianEprState& state, const OracleConfig& config,
                           unsigned workers) {
    if (config.samples < 2)
        throw DomainError("samples", "need at least 2 samples for a standard error");

    const std::uint64_t blocks = block_count(config.samples);
    std::vector<BlockStats> stats(blocks);
    parallel_for(blocks, workers, [&](std::size_t block) {
        EprSampler sampler(state, config.seed, block);
        BlockStats& out = stats[block];
        const std::uint64_t len = block_length(config.samples, block);
        for (std::uint64_t i = 0; i < len; ++i) {
            const TwoModePoint pt = sampler.next();
            const double noise_x = pt.x2 - pt.x1;
            const double noise_p = pt.p2 + pt.p1;
            const double noise_sq = noise_x * noise_x + noise_p * noise_p;
            out.fidelity.add(std::exp(-noise_sq));
            out.duan.add(noise_sq);
        }
    });

    BlockStats total;
    for (const BlockStats& s : stats) {
        total.fidelity.merge(s.fidelity);
        total.duan.merge(s.duan);
    }
    return OracleEstimate{
        config.samples,
        total.fidelity.mean,
        total.fidelity.std_error(),
        total.duan.mean,
        total.duan.std_error(),
    };
}

}  // namespace cvtele
