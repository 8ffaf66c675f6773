#pragma once

#include <cstdint>

namespace besseldrift {

/// Counter-based random stream (Philox4x64-10) keyed by (seed, stream_id).
/// Identical keys reproduce identical draw sequences bit for bit; distinct
/// stream_ids index disjoint keys and are independent by construction, so
/// Monte Carlo loops can hand one stream to each draw or worker and the
/// results do not depend on how work is sharded.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t next_u64();

    /// Uniform draw strictly inside (0,1).
    double next_u01();

    /// Standard normal (Box-Muller, spare cached).
    double next_normal();

    double next_exponential(double rate);

    /// Gamma(shape, rate) for any shape >= 0; shape 0 is the unit mass at 0.
    double next_gamma(double shape, double rate);

    std::uint64_t next_poisson(double mean);

    double next_beta(double a, double b);

    std::uint64_t seed() const { return key_[0]; }
    std::uint64_t stream_id() const { return key_[1]; }

private:
    void refill();

    std::uint64_t key_[2];
    std::uint64_t block_ = 0;
    std::uint64_t buf_[4] = {0, 0, 0, 0};
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace besseldrift
