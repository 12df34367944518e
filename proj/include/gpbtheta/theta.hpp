#ifndef GPBTHETA_THETA_HPP
#define GPBTHETA_THETA_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bundles.hpp"
#include "field.hpp"
#include "gpb.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"

namespace gpbtheta {

/// Gluing scalars of a rank-1 type-B GPB on O(1-g).
template <Field F>
struct ThetaLineSpec {
    std::vector<typename F::value_type> lambda;
    int degree = 0;
};

/// prod_i det(A_i - lambda_i I), kept both factored and expanded.
template <Field F>
struct ThetaPolynomial {
    std::vector<UniPoly<F>> factors;
    MultiPoly<F> expanded;
};

/// det(A - x I) as a polynomial in x, recovered from r + 1 evaluations.
template <Field F>
UniPoly<F> shifted_determinant(const Matrix<F>& a) {
    const F& k = a.field();
    const std::size_t r = a.rows();
    if (k.size() != 0 && k.size() <= r) throw FieldError("field too small to interpolate a degree-r determinant");
    std::vector<typename F::value_type> xs, ys;
    for (std::size_t t = 0; t <= r; ++t) {
        const auto x = k.from_int(static_cast<long long>(t));
        xs.push_back(x);
        ys.push_back(det(a - Matrix<F>::identity(k, r).scaled(x)));
    }
    return interpolate(k, xs, ys);
}

template <Field F>
ThetaPolynomial<F> product_theta(const Gpb<F>& v) {
    const TypeBGlue<F> glue = glue_of(v);  // throws for type T
    const std::size_t g = v.genus();
    ThetaPolynomial<F> out{{}, MultiPoly<F>::constant(v.field(), g, v.field().one())};
    for (std::size_t i = 0; i < g; ++i) {
        out.factors.push_back(shifted_determinant(glue[i]));
        out.expanded = out.expanded * MultiPoly<F>::from_univariate(out.factors.back(), g, i);
    }
    return out;
}

/// For each pair, the first of 1, 2, 3, ... that is not an eigenvalue of A_i.
template <Field F>
ThetaLineSpec<F> choose_theta_glue(const Gpb<F>& v) {
    const F& k = v.field();
    const std::size_t r = v.rank();
    if (k.size() != 0 && k.characteristic() <= 2 * r + 1)
        throw FieldError("prime field too small: need p > 2r+1 = " + std::to_string(2 * r + 1));
    const TypeBGlue<F> glue = glue_of(v);
    ThetaLineSpec<F> out;
    out.degree = 1 - static_cast<int>(v.genus());
    for (std::size_t i = 0; i < v.genus(); ++i) {
        for (long long t = 1;; ++t) {
            const auto lam = k.from_int(t);
            if (!k.is_zero(det(glue[i] - Matrix<F>::identity(k, r).scaled(lam)))) {
                out.lambda.push_back(lam);
                break;
            }
        }
    }
    return out;
}

template <Field F>
Gpb<F> theta_line(const ThetaLineSpec<F>& l, const MarkedLine<F>& line) {
    return Gpb<F>::line_bundle(l.degree, line, l.lambda);
}

template <Field F>
std::size_t theta_hom_dimension(const ThetaLineSpec<F>& l, const Gpb<F>& v) {
    return hom_space(theta_line(l, v.line()), v).dimension;
}

/// Hom(L, V) == 0 for the rank-1 type-B GPB L described by l.
template <Field F>
bool verify_theta(const ThetaLineSpec<F>& l, const Gpb<F>& v) {
    return theta_hom_dimension(l, v) == 0;
}

/// The Hom((O(1-g), lambda), V) coefficient matrix; square exactly when V is
/// type B of degree 0 with every d_j >= -g.
template <Field F>
Matrix<F> theta_system(const Gpb<F>& v, const std::vector<typename F::value_type>& lambda) {
    return hom_system(Gpb<F>::line_bundle(1 - static_cast<int>(v.genus()), v.line(), lambda), v);
}

template <Field F>
void require_square_theta_system(const Gpb<F>& v) {
    if (classify_type(v) != GpbType::B) throw ClassificationError("hom determinant needs a type-B GPB");
    if (v.bundle().degree() != 0) throw BundleError("hom determinant needs deg(V) = 0");
    const int g = static_cast<int>(v.genus());
    const int unknowns = PolyMatrixHom<F>::unknown_count(SplitBundle::twist(1 - g), v.bundle());
    if (unknowns != g * static_cast<int>(v.rank()))
        throw BundleError("Hom system is not square (a summand has degree below -g)");
}

template <Field F>
typename F::value_type hom_determinant_at(const Gpb<F>& v, const std::vector<typename F::value_type>& lambda) {
    require_square_theta_system(v);
    return det(theta_system(v, lambda));
}

/// The determinant of the square Hom system as a polynomial in
/// (lambda_1, ..., lambda_g), by interpolation on the grid {1..n}^g with
/// n = nodes (default r + 1, enough since each lambda_i enters r rows).
template <Field F>
MultiPoly<F> hom_determinant(const Gpb<F>& v, std::size_t nodes = 0) {
    require_square_theta_system(v);
    const F& k = v.field();
    if (nodes == 0) nodes = v.rank() + 1;
    if (k.size() != 0 && k.size() <= nodes) throw FieldError("prime field too small for the interpolation grid");
    std::vector<typename F::value_type> xs;
    for (std::size_t t = 1; t <= nodes; ++t) xs.push_back(k.from_int(static_cast<long long>(t)));
    return interpolate_grid<F>(k, v.genus(), xs, [&](const std::vector<typename F::value_type>& lam) {
        return det(theta_system(v, lam));
    });
}

/*
 * A gluing with Hom(L, V) = 0 found by search rather than by avoiding
 * eigenvalues: the constructed lambda first, then the grid {1..r+1}^g. When
 * the Hom system is square its determinant has degree <= r in each lambda_i,
 * so it cannot vanish on that whole grid unless it is identically zero; an
 * empty result then proves that no theta line exists.
 */
template <Field F>
std::optional<ThetaLineSpec<F>> find_theta_line(const Gpb<F>& v) {
    const F& k = v.field();
    ThetaLineSpec<F> l = choose_theta_glue(v);
    if (verify_theta(l, v)) return l;
    const std::size_t g = v.genus();
    const long long n = static_cast<long long>(v.rank()) + 1;
    std::vector<long long> idx(g, 1);
    for (;;) {
        for (std::size_t i = 0; i < g; ++i) l.lambda[i] = k.from_int(idx[i]);
        if (verify_theta(l, v)) return l;
        std::size_t pos = 0;
        while (pos < g && ++idx[pos] > n) idx[pos++] = 1;
        if (pos == g) return std::nullopt;
    }
}

struct VanishingReport {
    int d = 0;
    int bound = 0;
    bool ok = false;
    /// Every pair is either vanishing at both ends or at neither, and at
    /// least one pair is non-vanishing.
    bool nonvanishing_contains_pair = false;
    bool pairs_all_or_nothing = false;
    mpq_class factored_slope;
};

/*
 * Vanishing count of a nonzero morphism L -> V at the 2g marked points,
 * with the bound 2g - 1. The morphism is also factored through
 * O(1 - g + d) and the slope of that sub-GPB with its induced structure is
 * reported, so callers can re-check 1 - g + d <= slope <= mu(V).
 */
template <Field F>
VanishingReport vanishing_bound_check(const GpbMorphism<F>& f, const Gpb<F>& v) {
    const auto& u = f.underlying;
    if (u.source().rank() != 1) throw BundleError("vanishing bound applies to morphisms out of a line bundle");
    const auto pts = vanishing_points(u, v.line());  // throws on zero
    VanishingReport out;
    const int g = static_cast<int>(v.genus());
    out.d = static_cast<int>(pts.size());
    out.bound = 2 * g - 1;
    out.ok = out.d <= out.bound;

    std::vector<int> hits(v.genus(), 0);
    for (const auto& p : pts) ++hits[p.pair];
    out.pairs_all_or_nothing = true;
    for (std::size_t i = 0; i < v.genus(); ++i) {
        if (hits[i] == 1) out.pairs_all_or_nothing = false;
        if (hits[i] == 0) out.nonvanishing_contains_pair = true;
    }

    std::vector<typename F::value_type> roots;
    for (const auto& p : pts) roots.push_back(p.is_b ? v.line().b(p.pair) : v.line().a(p.pair));
    const PolyMatrixHom<F> m = u.divide_out(roots);
    const GpbStructure<F> induced = induced_structure(m, v);
    long long deg = m.source().degree();
    for (std::size_t i = 0; i < induced.pairs(); ++i) deg += static_cast<long long>(induced.dim(i));
    out.factored_slope = mpq_class(static_cast<long>(deg));
    return out;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_THETA_HPP
