#pragma once

#include <cstdint>

namespace gtcoef {

namespace detail {

// SplitMix64 finalizer; bijective 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

}  // namespace detail

/// Counter-based random stream: stream number `index` under `master_seed` is
/// a SplitMix64 sequence whose starting state is derived by mixing the seed
/// with the index. Streams with distinct indices are independent for
/// Monte-Carlo purposes, and a stream's output depends only on
/// (master_seed, index), never on which thread runs it.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t index)
        : state_(detail::mix64(master_seed + detail::golden_gamma * (index + 1)) ^
                 detail::mix64(index + 0x632BE59BD9B4E019ULL)) {}

    std::uint64_t next_u64() {
        state_ += detail::golden_gamma;
        return detail::mix64(state_);
    }

    /// Uniform draw strictly inside (0, 1), 53-bit resolution.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). n must be nonzero.
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

  private:
    std::uint64_t state_;
};

}  // namespace gtcoef
