#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace mcplaque {

// Philox4x32-10 counter-based generator.  A 128-bit counter and a 64-bit key
// map to four independent 32-bit words through ten bumped-key rounds; any
// (counter, key) block can be generated in isolation, which is what makes
// per-particle random streams order- and scheduling-independent.
namespace philox {

inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1
inline constexpr std::uint32_t kMult0 = 0xD2511F53u;
inline constexpr std::uint32_t kMult1 = 0xCD9E8D57u;

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline void round_once(Block& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    c = Block{hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Block generate(Block counter, Key key) {
    for (int r = 0; r < 10; ++r) {
        round_once(counter, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

// Block for one (seed, stream, draw) triple.  Streams index particles; draws
// count the blocks a particle has consumed (0 = release, 1 + k = step k).
inline Block block_at(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t draw) {
    const Block counter{static_cast<std::uint32_t>(draw),
                        static_cast<std::uint32_t>(draw >> 32),
                        static_cast<std::uint32_t>(stream),
                        static_cast<std::uint32_t>(stream >> 32)};
    const Key key{static_cast<std::uint32_t>(seed),
                  static_cast<std::uint32_t>(seed >> 32)};
    return generate(counter, key);
}

// map a 32-bit word to (0, 1); the half-offset keeps log() finite
inline double to_unit(std::uint32_t x) {
    return (static_cast<double>(x) + 0.5) * 0x1.0p-32;
}

struct UniformQuad {
    double u0, u1, u2, u3;
};

inline UniformQuad uniform_quad(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t draw) {
    const Block b = block_at(seed, stream, draw);
    return {to_unit(b[0]), to_unit(b[1]), to_unit(b[2]), to_unit(b[3])};
}

struct NormalTriple {
    double n0, n1, n2;
};

// three standard normals from one block, via Box-Muller
inline NormalTriple normal_triple(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t draw) {
    const UniformQuad u = uniform_quad(seed, stream, draw);
    const double r0 = std::sqrt(-2.0 * std::log(u.u0));
    const double a0 = 2.0 * std::numbers::pi * u.u1;
    const double r1 = std::sqrt(-2.0 * std::log(u.u2));
    const double a1 = 2.0 * std::numbers::pi * u.u3;
    return {r0 * std::cos(a0), r0 * std::sin(a0), r1 * std::cos(a1)};
}

}  // namespace philox
}  // namespace mcplaque
