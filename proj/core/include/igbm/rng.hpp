#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace igbm {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A block of four 32-bit outputs is a pure function of (key, counter), so
/// any path can be regenerated independently of every other path.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Block ctr, Key key)
    {
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

/// Standard normal stream for one Monte Carlo path, keyed by (seed, path).
/// Each Philox block yields two uniforms and, via Box-Muller, two normals.
class PathStream {
public:
    PathStream(std::uint64_t seed, std::uint64_t path)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          path_(path)
    {
    }

    double next_normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const auto out = Philox4x32::generate(
            {static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
             static_cast<std::uint32_t>(path_), static_cast<std::uint32_t>(path_ >> 32)},
            key_);
        ++block_;
        const double u1 = to_open_unit(out[0], out[1]);
        const double u2 = to_open_unit(out[2], out[3]);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform on (0, 1) with 53 random bits.
    static double to_open_unit(std::uint32_t hi, std::uint32_t lo)
    {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

private:
    Philox4x32::Key key_;
    std::uint64_t path_;
    std::uint64_t block_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace igbm
