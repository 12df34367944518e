#ifndef GPBTHETA_GENERATE_HPP
#define GPBTHETA_GENERATE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bundles.hpp"
#include "field.hpp"
#include "gpb.hpp"
#include "matrix.hpp"
#include "random.hpp"

namespace gpbtheta {

/// Inclusive integer range parsed from "n" or "lo-hi".
struct IntRange {
    int lo = 0;
    int hi = 0;

    static IntRange parse(const std::string& text) {
        IntRange r;
        try {
            std::size_t used = 0;
            r.lo = std::stoi(text, &used);
            if (used == text.size()) {
                r.hi = r.lo;
            } else {
                if (text[used] != '-') throw std::invalid_argument("");
                std::size_t rest = 0;
                r.hi = std::stoi(text.substr(used + 1), &rest);
                if (used + 1 + rest != text.size()) throw std::invalid_argument("");
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed range '" + text + "' (expected n or lo-hi)");
        }
        if (r.lo > r.hi) throw std::invalid_argument("empty range '" + text + "'");
        return r;
    }

    std::string str() const { return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi); }
};

struct GenParams {
    int max_twist = 1;        ///< |d_j| bound for splitting types
    long long height = 10;    ///< coordinate box over Q for marked points
    long long glue_height = 5;  ///< entry box over Q for glue matrices
    /// 0: glue matrices uniform. n > 0: glue matrices P D P^-1 with the
    /// eigenvalues in D drawn from {1..n}, so that small gluing scalars hit them.
    int spectrum = 0;
};

/// 2g pairwise distinct affine points, drawn in order a_1, b_1, a_2, ...
template <Field F>
MarkedLine<F> random_marked_line(const F& k, Rng& rng, int g, const GenParams& p = {}) {
    const std::uint64_t available = k.size() != 0 ? k.size() : static_cast<std::uint64_t>(2 * p.height + 1);
    if (available < static_cast<std::uint64_t>(2 * g))
        throw std::invalid_argument("cannot place " + std::to_string(2 * g) + " distinct marked points: only " +
                                    std::to_string(available) + " affine points available");
    std::vector<typename F::value_type> pts;
    while (pts.size() < static_cast<std::size_t>(2 * g)) {
        auto x = random_element(k, rng, p.height);
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    std::vector<typename MarkedLine<F>::Pair> pairs;
    for (int i = 0; i < g; ++i) pairs.emplace_back(pts[2 * i], pts[2 * i + 1]);
    return MarkedLine<F>(k, std::move(pairs));
}

/// Non-increasing splitting type of rank r with entries in [-t, t] summing to deg.
inline SplitBundle random_splitting_type(Rng& rng, int r, int deg, int t) {
    if (r * t < std::abs(deg)) throw std::invalid_argument("degree unreachable within the twist bound");
    for (;;) {
        std::vector<int> d;
        int sum = 0;
        for (int j = 0; j + 1 < r; ++j) {
            d.push_back(static_cast<int>(rng.between(-t, t)));
            sum += d.back();
        }
        const int last = deg - sum;
        if (last < -t || last > t) continue;
        d.push_back(last);
        std::sort(d.begin(), d.end(), std::greater<>());
        return SplitBundle(std::move(d));
    }
}

/// Uniform invertible matrix by rejection on det != 0.
template <Field F>
Matrix<F> random_invertible(const F& k, Rng& rng, std::size_t r, long long height) {
    for (;;) {
        Matrix<F> a(k, r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) a(i, j) = random_element(k, rng, height);
        if (!k.is_zero(det(a))) return a;
    }
}

/// P diag(eigenvalues) P^-1 for a random invertible P.
template <Field F>
Matrix<F> random_with_spectrum(const F& k, Rng& rng, std::size_t r, int n, long long height) {
    const Matrix<F> p = random_invertible(k, rng, r, height);
    Matrix<F> d(k, r, r);
    for (std::size_t i = 0; i < r; ++i) d(i, i) = k.from_int(rng.between(1, n));
    return p * d * inverse(p);
}

template <Field F>
Gpb<F> random_type_b(const F& k, Rng& rng, int g, int r, int deg, const GenParams& p = {}) {
    MarkedLine<F> line = random_marked_line(k, rng, g, p);
    SplitBundle b = random_splitting_type(rng, r, deg, p.max_twist);
    std::vector<Matrix<F>> glue;
    for (int i = 0; i < g; ++i) {
        const auto n = static_cast<std::size_t>(r);
        glue.push_back(p.spectrum > 0 ? random_with_spectrum(k, rng, n, p.spectrum, p.glue_height)
                                      : random_invertible(k, rng, n, p.glue_height));
    }
    return Gpb<F>::type_b(std::move(b), std::move(line), TypeBGlue<F>(std::move(glue)));
}

/// Arbitrary structure: each F_i a random subspace of random dimension 0..2r.
template <Field F>
Gpb<F> random_gpb(const F& k, Rng& rng, int g, int r, int deg, const GenParams& p = {}) {
    MarkedLine<F> line = random_marked_line(k, rng, g, p);
    SplitBundle b = random_splitting_type(rng, r, deg, p.max_twist);
    std::vector<Matrix<F>> subspaces;
    for (int i = 0; i < g; ++i) {
        const std::size_t dim = static_cast<std::size_t>(rng.between(0, 2 * r));
        Matrix<F> m(k, dim, 2 * static_cast<std::size_t>(r));
        for (std::size_t x = 0; x < m.rows(); ++x)
            for (std::size_t y = 0; y < m.cols(); ++y) m(x, y) = random_element(k, rng, p.glue_height);
        subspaces.push_back(std::move(m));
    }
    return Gpb<F>(std::move(b), std::move(line), GpbStructure<F>(std::move(subspaces)));
}

struct GenConfig {
    std::uint64_t seed = 1;
    FieldSpec field;
    IntRange genus{2, 2};
    IntRange rank{2, 2};
    std::size_t count = 1;
    GenParams params;
};

/// Instance `id` of a generated family: degree-0 type-B GPB with genus and
/// rank drawn from the configured ranges, all from the instance's own stream.
template <Field F>
Gpb<F> generate_instance(const F& k, const GenConfig& c, std::uint64_t id) {
    Rng rng = Rng::for_instance(c.seed, id);
    const int g = static_cast<int>(rng.between(c.genus.lo, c.genus.hi));
    const int r = static_cast<int>(rng.between(c.rank.lo, c.rank.hi));
    return random_type_b(k, rng, g, r, 0, c.params);
}

/// Rejects configurations that cannot produce valid instances.
template <Field F>
void check_gen_config(const F& k, const GenConfig& c) {
    if (c.genus.lo < 1) throw std::invalid_argument("genus must be at least 1");
    if (c.rank.lo < 1) throw std::invalid_argument("rank must be at least 1");
    const std::uint64_t need = 2 * static_cast<std::uint64_t>(c.genus.hi);
    const std::uint64_t available = k.size() != 0 ? k.size() : static_cast<std::uint64_t>(2 * c.params.height + 1);
    if (available < need)
        throw std::invalid_argument("genus " + std::to_string(c.genus.hi) + " needs " + std::to_string(need) +
                                    " distinct affine points but " + k.spec() + " offers " + std::to_string(available));
    if (c.params.max_twist < 0) throw std::invalid_argument("max twist must be nonnegative");
    if (c.params.spectrum < 0) throw std::invalid_argument("spectrum bound must be nonnegative");
    if (k.size() != 0 && static_cast<std::uint64_t>(c.params.spectrum) >= k.size())
        throw std::invalid_argument("spectrum bound would reach 0 in the prime field");
}

}  // namespace gpbtheta

#endif  // GPBTHETA_GENERATE_HPP
