#include "ddcalc/rng.hpp"

#include <cmath>

namespace ddcalc {

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += W0;
            k[1] += W1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
        c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
    }
    return c;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint64_t replication, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      ctr_{0u, stream, static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32)} {}

CounterStream::result_type CounterStream::operator()() {
    if (used_ >= 4) {
        buf_ = philox4x32_10(ctr_, key_);
        ++ctr_[0];
        used_ = 0;
    }
    const std::uint64_t hi = buf_[used_];
    const std::uint64_t lo = buf_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
}

double CounterStream::uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double sample_normal(CounterStream& s, double scale) {
    const double u1 = s.uniform();
    const double u2 = s.uniform();
    return scale * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sample_logistic(CounterStream& s, double scale) {
    const double u = s.uniform();
    return scale * std::log(u / (1.0 - u));
}

double sample(const DistributionSpec& d, CounterStream& s) {
    return d.family == Family::Normal ? sample_normal(s, d.scale) : sample_logistic(s, d.scale);
}

double sample(const TruncatedSpec& d, CounterStream& s) {
    return quantile(d, s.uniform());
}

}  // namespace ddcalc
