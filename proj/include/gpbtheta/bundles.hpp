#ifndef GPBTHETA_BUNDLES_HPP
#define GPBTHETA_BUNDLES_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace gpbtheta {

class BundleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The projective line with g marked pairs (a_i, b_i), all in the affine chart.
/// Gluing a_i to b_i for every i yields a rational curve with g nodes.
template <Field F>
class MarkedLine {
public:
    using value_type = typename F::value_type;
    using Pair = std::pair<value_type, value_type>;

    MarkedLine(F field, std::vector<Pair> pairs) : field_(std::move(field)), pairs_(std::move(pairs)) {
        if (pairs_.empty()) throw BundleError("a marked line needs at least one pair");
        std::vector<value_type> pts = points();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j]) throw BundleError("marked points must be pairwise distinct");
    }

    static MarkedLine from_ints(const F& field, std::initializer_list<std::pair<long long, long long>> pairs) {
        std::vector<Pair> v;
        for (auto [a, b] : pairs) v.emplace_back(field.from_int(a), field.from_int(b));
        return MarkedLine(field, std::move(v));
    }

    const F& field() const { return field_; }
    std::size_t genus() const { return pairs_.size(); }
    const std::vector<Pair>& pairs() const { return pairs_; }
    const value_type& a(std::size_t i) const { return pairs_.at(i).first; }
    const value_type& b(std::size_t i) const { return pairs_.at(i).second; }

    /// a_1, b_1, a_2, b_2, ...
    std::vector<value_type> points() const {
        std::vector<value_type> pts;
        for (const auto& [a, b] : pairs_) {
            pts.push_back(a);
            pts.push_back(b);
        }
        return pts;
    }

    friend bool operator==(const MarkedLine& x, const MarkedLine& y) {
        return x.field_ == y.field_ && x.pairs_ == y.pairs_;
    }

private:
    F field_;
    std::vector<Pair> pairs_;
};

/// A marked point named by its pair index and side.
struct MarkedPoint {
    std::size_t pair = 0;
    bool is_b = false;

    friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
    friend auto operator<=>(const MarkedPoint&, const MarkedPoint&) = default;
};

/// O(d_1) + ... + O(d_r) on the line with d_1 >= ... >= d_r.
class SplitBundle {
public:
    explicit SplitBundle(std::vector<int> splitting_type) : degrees_(std::move(splitting_type)) {
        if (degrees_.empty()) throw BundleError("splitting type must have rank >= 1");
        if (!std::is_sorted(degrees_.begin(), degrees_.end(), std::greater<>()))
            throw BundleError("splitting type must be non-increasing");
    }

    /// The line bundle O(e).
    static SplitBundle twist(int e) { return SplitBundle({e}); }

    const std::vector<int>& splitting_type() const { return degrees_; }
    std::size_t rank() const { return degrees_.size(); }
    int degree() const {
        int d = 0;
        for (int x : degrees_) d += x;
        return d;
    }
    int operator[](std::size_t j) const { return degrees_.at(j); }

    friend bool operator==(const SplitBundle&, const SplitBundle&) = default;

private:
    std::vector<int> degrees_;
};

/// h^0(O(d) (-e)) summed over the summands: sum_j max(0, d_j - e + 1).
inline int hom_dimension(int e, const SplitBundle& b) {
    int n = 0;
    for (int d : b.splitting_type()) n += std::max(0, d - e + 1);
    return n;
}

/// Riemann-Roch on the line: chi(B(e)) = sum_j (d_j + e) + r.
inline int euler_char(const SplitBundle& b, int twist) {
    return b.degree() + twist * static_cast<int>(b.rank()) + static_cast<int>(b.rank());
}

/// A morphism W -> V of split bundles: entry (j, k) is a polynomial in the
/// affine coordinate of degree at most d_j(V) - d_k(W), zero when negative.
template <Field F>
class PolyMatrixHom {
public:
    using value_type = typename F::value_type;

    PolyMatrixHom(F field, SplitBundle source, SplitBundle target)
        : field_(std::move(field)), source_(std::move(source)), target_(std::move(target)) {
        entries_.assign(target_.rank() * source_.rank(), UniPoly<F>(field_));
    }

    PolyMatrixHom(F field, SplitBundle source, SplitBundle target, std::vector<UniPoly<F>> entries)
        : field_(std::move(field)), source_(std::move(source)), target_(std::move(target)),
          entries_(std::move(entries)) {
        if (entries_.size() != target_.rank() * source_.rank())
            throw BundleError("morphism entry count does not match ranks");
        for (std::size_t j = 0; j < target_.rank(); ++j)
            for (std::size_t k = 0; k < source_.rank(); ++k)
                if (!entry(j, k).is_zero() && entry(j, k).degree() > degree_bound(j, k))
                    throw BundleError("morphism entry (" + std::to_string(j) + "," + std::to_string(k) +
                                      ") exceeds its degree bound " + std::to_string(degree_bound(j, k)));
    }

    static PolyMatrixHom identity(const F& field, const SplitBundle& b) {
        PolyMatrixHom f(field, b, b);
        for (std::size_t j = 0; j < b.rank(); ++j) f.entries_[j * b.rank() + j] = UniPoly<F>::constant(field, field.one());
        return f;
    }

    /// Inverse of coefficients(): unknowns ordered by (target row, source
    /// column, ascending degree).
    static PolyMatrixHom from_coefficients(const F& field, const SplitBundle& source, const SplitBundle& target,
                                           const std::vector<value_type>& coeffs) {
        if (coeffs.size() != static_cast<std::size_t>(unknown_count(source, target)))
            throw BundleError("coefficient vector has the wrong length");
        std::vector<UniPoly<F>> entries;
        std::size_t pos = 0;
        for (std::size_t j = 0; j < target.rank(); ++j)
            for (std::size_t k = 0; k < source.rank(); ++k) {
                int n = std::max(0, target[j] - source[k] + 1);
                entries.emplace_back(field, std::vector<value_type>(coeffs.begin() + pos, coeffs.begin() + pos + n));
                pos += n;
            }
        return PolyMatrixHom(field, source, target, std::move(entries));
    }

    /// Dimension of Hom(W, V) on the line.
    static int unknown_count(const SplitBundle& source, const SplitBundle& target) {
        int n = 0;
        for (int dk : source.splitting_type()) n += hom_dimension(dk, target);
        return n;
    }

    const F& field() const { return field_; }
    const SplitBundle& source() const { return source_; }
    const SplitBundle& target() const { return target_; }
    const UniPoly<F>& entry(std::size_t j, std::size_t k) const { return entries_.at(j * source_.rank() + k); }
    const std::vector<UniPoly<F>>& entries() const { return entries_; }
    int degree_bound(std::size_t j, std::size_t k) const { return target_[j] - source_[k]; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const auto& p) { return p.is_zero(); });
    }

    std::vector<value_type> coefficients() const {
        std::vector<value_type> out;
        for (std::size_t j = 0; j < target_.rank(); ++j)
            for (std::size_t k = 0; k < source_.rank(); ++k)
                for (int m = 0; m <= degree_bound(j, k); ++m) out.push_back(entry(j, k).coeff(m));
        return out;
    }

    /// The induced map on fibres at an affine point.
    Matrix<F> fiber_map(const value_type& p) const {
        Matrix<F> m(field_, target_.rank(), source_.rank());
        for (std::size_t j = 0; j < target_.rank(); ++j)
            for (std::size_t k = 0; k < source_.rank(); ++k) m(j, k) = entry(j, k).eval(p);
        return m;
    }

    /// this o h
    PolyMatrixHom compose(const PolyMatrixHom& h) const {
        if (!(h.target_ == source_)) throw BundleError("composition of non-composable morphisms");
        std::vector<UniPoly<F>> out;
        for (std::size_t j = 0; j < target_.rank(); ++j)
            for (std::size_t k = 0; k < h.source_.rank(); ++k) {
                UniPoly<F> acc(field_);
                for (std::size_t m = 0; m < source_.rank(); ++m) acc = acc + entry(j, m) * h.entry(m, k);
                out.push_back(std::move(acc));
            }
        return PolyMatrixHom(field_, h.source_, target_, std::move(out));
    }

    PolyMatrixHom operator+(const PolyMatrixHom& o) const {
        std::vector<UniPoly<F>> out;
        for (std::size_t i = 0; i < entries_.size(); ++i) out.push_back(entries_[i] + o.entries_.at(i));
        return PolyMatrixHom(field_, source_, target_, std::move(out));
    }

    PolyMatrixHom scaled(const value_type& s) const {
        std::vector<UniPoly<F>> out;
        for (const auto& e : entries_) out.push_back(e.scaled(s));
        return PolyMatrixHom(field_, source_, target_, std::move(out));
    }

    /// Rank over the function field k(t), by fraction-free elimination.
    std::size_t generic_rank() const {
        const std::size_t rows = target_.rank(), cols = source_.rank();
        std::vector<UniPoly<F>> m = entries_;
        auto at = [&](std::size_t i, std::size_t j) -> UniPoly<F>& { return m[i * cols + j]; };
        UniPoly<F> prev = UniPoly<F>::constant(field_, field_.one());
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols && rk < rows; ++col) {
            std::size_t p = rk;
            while (p < rows && at(p, col).is_zero()) ++p;
            if (p == rows) continue;
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(rk, j));
            for (std::size_t i = rk + 1; i < rows; ++i) {
                for (std::size_t j = col + 1; j < cols; ++j)
                    at(i, j) = (at(rk, col) * at(i, j) - at(i, col) * at(rk, j)).divmod(prev).first;
                at(i, col) = UniPoly<F>(field_);
            }
            prev = at(rk, col);
            ++rk;
        }
        return rk;
    }

    /// Injective as a sheaf map iff full column rank over k(t).
    bool is_injective() const { return generic_rank() == source_.rank(); }

    /// Divides every entry by the product of (t - p) over `roots`, i.e. the
    /// factorisation W -> W(D) -> V through the twist by the divisor D.
    PolyMatrixHom divide_out(const std::vector<value_type>& roots) const {
        UniPoly<F> d = UniPoly<F>::constant(field_, field_.one());
        for (const auto& r : roots) d = d * UniPoly<F>::linear_factor(field_, r);
        std::vector<int> src = source_.splitting_type();
        for (int& x : src) x += static_cast<int>(roots.size());
        std::vector<UniPoly<F>> out;
        for (const auto& e : entries_) {
            auto [q, rem] = e.divmod(d);
            if (!rem.is_zero()) throw BundleError("morphism does not vanish on the requested divisor");
            out.push_back(std::move(q));
        }
        return PolyMatrixHom(field_, SplitBundle(std::move(src)), target_, std::move(out));
    }

    friend bool operator==(const PolyMatrixHom& a, const PolyMatrixHom& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.entries_ == b.entries_;
    }

private:
    F field_;
    SplitBundle source_;
    SplitBundle target_;
    std::vector<UniPoly<F>> entries_;
};

/// Basis of Hom(O(e), B): one monomial t^m in a single row j, ordered by
/// (j, m ascending).
template <Field F>
std::vector<PolyMatrixHom<F>> hom_basis(const F& field, int e, const SplitBundle& b) {
    std::vector<PolyMatrixHom<F>> basis;
    const SplitBundle src = SplitBundle::twist(e);
    for (std::size_t j = 0; j < b.rank(); ++j)
        for (int m = 0; m <= b[j] - e; ++m) {
            std::vector<UniPoly<F>> entries(b.rank(), UniPoly<F>(field));
            entries[j] = UniPoly<F>::monomial(field, m, field.one());
            basis.emplace_back(field, src, b, std::move(entries));
        }
    return basis;
}

template <Field F>
Matrix<F> fiber_map(const PolyMatrixHom<F>& f, const typename F::value_type& p) {
    return f.fiber_map(p);
}

/// Marked points at which a nonzero morphism out of a line bundle vanishes.
template <Field F>
std::vector<MarkedPoint> vanishing_points(const PolyMatrixHom<F>& f, const MarkedLine<F>& line) {
    if (f.source().rank() != 1) throw BundleError("vanishing_points needs a rank-1 source");
    if (f.is_zero()) throw BundleError("the zero morphism vanishes everywhere");
    std::vector<MarkedPoint> out;
    for (std::size_t i = 0; i < line.genus(); ++i) {
        if (f.fiber_map(line.a(i)).is_zero()) out.push_back({i, false});
        if (f.fiber_map(line.b(i)).is_zero()) out.push_back({i, true});
    }
    return out;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_BUNDLES_HPP
