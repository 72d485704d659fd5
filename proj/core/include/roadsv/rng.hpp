#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace roadsv {

/// Identifies the generator, the stream derivation and the normal transform.
/// Golden outputs in the test suite are tied to this string; bump it whenever
/// any of the three changes.
inline constexpr std::string_view kRngAlgorithm =
    "xoshiro256++; state = splitmix64(mix(master_seed) ^ mix(stream_id)); "
    "uniform = top 53 bits; normal = AS241 inverse CDF; v1";

/// Deterministic random stream identified by (master_seed, stream_id).
///
/// Every draw is computed with integer arithmetic plus a fixed inverse-CDF
/// polynomial, so sequences do not depend on the standard library's
/// distribution implementations.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Standard normal; consumes exactly one 64-bit word.
    double normal() noexcept;

    /// Uniform integer on [lo, hi] inclusive (unbiased, may consume several words).
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
};

/// Inverse of the standard normal CDF (Wichura's AS241, ~1e-16 relative accuracy).
/// Requires 0 < p < 1.
double inverse_normal_cdf(double p) noexcept;

/// Standard normal CDF via erfc.
double normal_cdf(double x) noexcept;

} // namespace roadsv
