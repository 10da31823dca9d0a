#pragma once

// Seeded instance generation.
//
// PRNG: SplitMix64 (Steele, Lea, Flood 2014). state += 0x9E3779B97F4A7C15;
// z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
// z = (z ^ (z >> 27)) * 0x94D049BB133111EB; return z ^ (z >> 31).
//
// Instance k of a run with master seed s is drawn from a fresh SplitMix64
// seeded with derive_seed(s, k) = first output of SplitMix64(s + k * golden).
// Coefficients are drawn in the order d_1..d_{m+1}, n_1..n_{m+1}; a draw that
// fails validation is discarded and the same stream continues.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "builders.hpp"
#include "error.hpp"
#include "numeric.hpp"

namespace toepsyl {

inline constexpr std::string_view generator_version = "splitmix64-v1";
inline constexpr std::size_t max_consecutive_rejections = 10'000;

class splitmix64 {
public:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

    explicit splitmix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += golden);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, bound) by rejection; bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform on [-range, range] \ {0}.
    long nonzero_in(long range) noexcept {
        const auto v = static_cast<long>(below(static_cast<std::uint64_t>(2 * range)));
        return v < range ? v - range : v - range + 1;
    }

    /// Uniform on [-range, range].
    long in(long range) noexcept {
        return static_cast<long>(below(static_cast<std::uint64_t>(2 * range + 1))) - range;
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master + index * splitmix64::golden).next();
}

struct gen_config {
    std::size_t m = 1;
    std::size_t count = 1;
    std::uint64_t seed = 0;
    long range = 9;
    validation_mode mode = validation_mode::strict;
};

struct generated_instance {
    instance<rational> inst;
    std::uint64_t seed;
};

/// Draws integer coefficients from `stream` until the instance validates in
/// `mode` (checked in field T). Throws generation_exhausted after
/// `max_rejections` consecutive failures.
template <field_scalar T = rational>
instance<rational> draw_instance(splitmix64& stream, std::size_t m, long range,
                                 validation_mode mode,
                                 std::size_t max_rejections = max_consecutive_rejections) {
    if (m < 1) {
        throw input_error("m must be at least 1");
    }
    if (range < 1) {
        throw input_error("coefficient range must be at least 1");
    }
    for (std::size_t attempt = 0; attempt < max_rejections; ++attempt) {
        std::vector<rational> d, n;
        d.reserve(m + 1);
        n.reserve(m + 1);
        const auto draw = [&] {
            return mode == validation_mode::strict ? stream.nonzero_in(range) : stream.in(range);
        };
        for (std::size_t h = 0; h <= m; ++h) {
            d.emplace_back(draw());
        }
        for (std::size_t h = 0; h <= m; ++h) {
            n.emplace_back(draw());
        }
        instance<rational> inst(std::move(d), std::move(n));
        if (validate(convert<T>(inst)).ok(mode)) {
            return inst;
        }
    }
    throw generation_exhausted("no valid instance after " +
                               std::to_string(max_rejections) +
                               " consecutive draws (m=" + std::to_string(m) +
                               ", range=" + std::to_string(range) + ")");
}

/// Instance k uses the stream seeded with derive_seed(config.seed, k).
template <field_scalar T = rational>
std::vector<generated_instance> generate_instances(const gen_config& config) {
    std::vector<generated_instance> out;
    out.reserve(config.count);
    for (std::size_t k = 0; k < config.count; ++k) {
        const std::uint64_t seed = derive_seed(config.seed, k);
        splitmix64 stream(seed);
        out.push_back({draw_instance<T>(stream, config.m, config.range, config.mode), seed});
    }
    return out;
}

} // namespace toepsyl
