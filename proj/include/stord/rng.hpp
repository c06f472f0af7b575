#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace stord
{
//---------------------------------------------------------------------------//
/*!
 * xoshiro256** pseudo-random generator.
 *
 * Satisfies UniformRandomBitGenerator so it can drive the Boost.Random
 * distributions, whose algorithms are fixed across platforms. This keeps the
 * variates bit-identical for a given seed regardless of standard library.
 */
class Xoshiro256
{
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept
    {
        result_type const result = rotl(s_[1] * 5, 7) * 9;
        result_type const t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    bool operator==(Xoshiro256 const&) const = default;

  private:
    static constexpr result_type rotl(result_type x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<result_type, 4> s_{};
};

//! One SplitMix64 step: advances state and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

//! Stateless 64-bit finalizer (the SplitMix64 output function).
std::uint64_t mix64(std::uint64_t x) noexcept;

//! Independent roles consumed within one replicate.
enum class StreamPurpose : std::uint64_t
{
    pattern = 1,
    interferer_fading = 2,
    desired_link = 3,
    redraw = 4,
    bootstrap = 5,
};

//---------------------------------------------------------------------------//
/*!
 * Derive the random stream for (master seed, index, purpose).
 *
 * Splitting rule: key = master ^ mix64(index + φ) ^ mix64(purpose · 2^56 + ψ)
 * with φ = 0x9E3779B97F4A7C15 and ψ = 0xD1B54A32D192ED03; the four xoshiro
 * state words are the first four SplitMix64 outputs started from mix64(key).
 * Streams depend only on these three values, never on scheduling.
 */
Xoshiro256 make_stream(std::uint64_t master_seed,
                       std::uint64_t index,
                       StreamPurpose purpose = StreamPurpose::pattern) noexcept;

//! Child seed for a named sub-computation (scenario slot, pair index, ...).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept;

//! Uniform double on [0, 1) with 53 random bits.
inline double uniform01(Xoshiro256& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

//! Uniform double on (0, 1).
inline double uniform_open01(Xoshiro256& rng) noexcept
{
    return (static_cast<double>(rng() >> 12) + 0.5) * 0x1.0p-52;
}

//! Uniform index in [0, n) without modulo bias (Lemire's method).
std::uint64_t uniform_index(Xoshiro256& rng, std::uint64_t n) noexcept;

}  // namespace stord
