#ifndef RCLA_RNG_HPP
#define RCLA_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace rcla {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Output is a pure function of (counter, key), which is what lets Monte
/// Carlo paths be assigned to fixed substreams independent of threading.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Deterministic stream of standard normals addressed by (seed, stream, index).
/// Each Philox block yields two open-interval uniforms and hence two normals
/// through Box-Muller, so normal(i) and normal(i ^ 1) share one block.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::pair<double, double> normal_pair(std::uint64_t pair_index) const {
        const auto [u1, u2] = uniform_pair(pair_index);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    /// Two uniforms in (0, 1) with 53-bit resolution.
    std::pair<double, double> uniform_pair(std::uint64_t pair_index) const {
        const Philox4x32::Counter ctr{
            static_cast<std::uint32_t>(pair_index), static_cast<std::uint32_t>(pair_index >> 32),
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        const auto out = Philox4x32::generate(ctr, key_);
        return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
    }

private:
    static double to_unit(std::uint32_t lo, std::uint32_t hi) {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    Philox4x32::Key key_;
    std::uint64_t stream_;
};

/// Sequential normal draws on top of NormalStream: draw k uses pair k/2.
class SequentialNormals {
public:
    SequentialNormals(std::uint64_t seed, std::uint64_t stream) : stream_(seed, stream) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const auto [z0, z1] = stream_.normal_pair(pair_++);
        spare_ = z1;
        has_spare_ = true;
        return z0;
    }

private:
    NormalStream stream_;
    std::uint64_t pair_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rcla

#endif // RCLA_RNG_HPP
