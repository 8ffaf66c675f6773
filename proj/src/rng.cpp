#include "besseldrift/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "besseldrift/specfun.hpp"

namespace besseldrift {

namespace {

constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) : key_{seed, stream_id} {}

void RngStream::refill() {
    std::uint64_t c0 = block_, c1 = 0, c2 = 0, c3 = 0;
    std::uint64_t k0 = key_[0], k1 = key_[1];
    for (int round = 0;; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c0, hi0, lo0);
        mulhilo(kPhiloxM1, c2, hi1, lo1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        if (round == 9) break;
        k0 += kWeyl0;
        k1 += kWeyl1;
    }
    buf_[0] = c0;
    buf_[1] = c1;
    buf_[2] = c2;
    buf_[3] = c3;
    pos_ = 0;
    ++block_;
}

std::uint64_t RngStream::next_u64() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
}

double RngStream::next_u01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_u01()));
    const double theta = 2.0 * std::numbers::pi * next_u01();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

double RngStream::next_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("next_exponential: rate must be positive");
    return -std::log(next_u01()) / rate;
}

double RngStream::next_gamma(double shape, double rate) {
    if (shape < 0.0) throw std::invalid_argument("next_gamma: shape must be nonnegative");
    if (!(rate > 0.0)) throw std::invalid_argument("next_gamma: rate must be positive");
    if (shape == 0.0) return 0.0;
    if (shape < 1.0) {
        // Boost the shape by one, then thin with U^(1/shape).
        const double u = next_u01();
        return next_gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = next_normal();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = next_u01();
        const double z2 = z * z;
        if (u < 1.0 - 0.0331 * z2 * z2) return d * v / rate;
        if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

std::uint64_t RngStream::next_poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean))
        throw std::invalid_argument("next_poisson: mean must be finite and nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        // Knuth: count uniforms until their product falls below e^{-mean}.
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = next_u01();
        while (prod > limit) {
            prod *= next_u01();
            ++k;
        }
        return k;
    }
    // Hormann's PTRS transformed rejection.
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = next_u01() - 0.5;
        const double v = next_u01();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (kf < 0.0) continue;
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (us < 0.013 && v > us) continue;
        const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
        const double rhs = -mean + kf * log_mean - specfun::log_gamma(kf + 1.0);
        if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
    }
}

double RngStream::next_beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("next_beta: shapes must be positive");
    const double x = next_gamma(a, 1.0);
    const double y = next_gamma(b, 1.0);
    return x / (x + y);
}

}  // namespace besseldrift
