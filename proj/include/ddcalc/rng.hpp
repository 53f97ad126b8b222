#pragma once

#include <array>
#include <cstdint>
#include <limits>

#include "ddcalc/distkit.hpp"

namespace ddcalc {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al. counter-based generator).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// Uniform random bit generator over the Philox block sequence keyed by
/// (seed, replication, stream). Distinct triples never share a block, so the
/// draws of one replication or one voter do not depend on evaluation order.
class CounterStream {
public:
    using result_type = std::uint64_t;

    CounterStream(std::uint64_t seed, std::uint64_t replication, std::uint32_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform();

private:
    PhiloxKey key_;
    PhiloxCounter ctr_;
    PhiloxCounter buf_{};
    int used_ = 4;
};

double sample_normal(CounterStream& s, double scale);
double sample_logistic(CounterStream& s, double scale);
double sample(const DistributionSpec& d, CounterStream& s);
/// Inverse-cdf draw from the truncated distribution.
double sample(const TruncatedSpec& d, CounterStream& s);

}  // namespace ddcalc
