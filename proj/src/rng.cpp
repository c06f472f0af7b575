#include "stord/rng.hpp"

namespace stord
{
namespace
{
constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t purpose_salt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept
{
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    state += golden;
    return mix64(state);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept
{
    std::uint64_t state = seed;
    for (auto& word : s_)
    {
        word = splitmix64(state);
    }
    // All-zero state is a fixed point; SplitMix64 cannot emit four zeros in a
    // row, but guard anyway.
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0)
    {
        s_[0] = golden;
    }
}

Xoshiro256 make_stream(std::uint64_t master_seed,
                       std::uint64_t index,
                       StreamPurpose purpose) noexcept
{
    auto const code = static_cast<std::uint64_t>(purpose);
    std::uint64_t const key = master_seed ^ mix64(index + golden)
                              ^ mix64((code << 56) + purpose_salt);
    return Xoshiro256{mix64(key)};
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept
{
    return mix64(master_seed + mix64(salt ^ purpose_salt));
}

std::uint64_t uniform_index(Xoshiro256& rng, std::uint64_t n) noexcept
{
    // 128-bit multiply-shift with rejection of the biased low band.
    __extension__ using wide = unsigned __int128;
    wide m = static_cast<wide>(rng()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n)
    {
        std::uint64_t const threshold = (0 - n) % n;
        while (low < threshold)
        {
            m = static_cast<wide>(rng()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace stord
