#ifndef GPBTHETA_RANDOM_HPP
#define GPBTHETA_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <random>

#include "field.hpp"

namespace gpbtheta {

/*
 * Reproducible randomness.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Bounded integers are drawn by rejection sampling on the raw
 * 64-bit output (std::uniform_int_distribution is implementation-defined and
 * would break cross-platform reproducibility). Per-instance streams are
 * seeded with splitmix64(seed + instance_id).
 */
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static Rng for_instance(std::uint64_t seed, std::uint64_t instance) {
        return Rng(splitmix64(seed + instance));
    }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Uniform over a prime field; integers in [-height, height] over Q.
template <Field F>
typename F::value_type random_element(const F& field, Rng& rng, long long height) {
    if (field.size() != 0) return field.from_int(static_cast<long long>(rng.below(field.size())));
    return field.from_int(rng.between(-height, height));
}

template <Field F>
typename F::value_type random_nonzero(const F& field, Rng& rng, long long height) {
    for (;;) {
        auto x = random_element(field, rng, height);
        if (!field.is_zero(x)) return x;
    }
}

}  // namespace gpbtheta

#endif  // GPBTHETA_RANDOM_HPP
