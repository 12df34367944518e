#ifndef GPBTHETA_POLYNOMIAL_HPP
#define GPBTHETA_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace gpbtheta {

/// Dense univariate polynomial, coefficients in ascending degree. The
/// coefficient vector never ends in a zero; the zero polynomial is empty.
template <Field F>
class UniPoly {
public:
    using value_type = typename F::value_type;

    explicit UniPoly(F field) : field_(std::move(field)) {}
    UniPoly(F field, std::vector<value_type> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        normalize();
    }

    static UniPoly constant(const F& field, const value_type& c) { return UniPoly(field, {c}); }
    static UniPoly monomial(const F& field, std::size_t degree, const value_type& c) {
        std::vector<value_type> v(degree + 1, field.zero());
        v[degree] = c;
        return UniPoly(field, std::move(v));
    }
    /// t - root
    static UniPoly linear_factor(const F& field, const value_type& root) {
        return UniPoly(field, {-root, field.one()});
    }
    static UniPoly from_ints(const F& field, std::initializer_list<long long> coeffs) {
        std::vector<value_type> v;
        for (long long c : coeffs) v.push_back(field.from_int(c));
        return UniPoly(field, std::move(v));
    }

    const F& field() const { return field_; }
    const std::vector<value_type>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    value_type coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : field_.zero(); }
    value_type leading() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

    value_type operator()(const value_type& t) const { return eval(t); }

    value_type eval(const value_type& t) const {
        value_type acc = field_.zero();
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<value_type> c(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field_.zero());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
        return UniPoly(a.field_, std::move(c));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
        std::vector<value_type> c(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_.zero());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return UniPoly(a.field_, std::move(c));
    }
    UniPoly scaled(const value_type& s) const {
        std::vector<value_type> c = coeffs_;
        for (auto& x : c) x *= s;
        return UniPoly(field_, std::move(c));
    }

    /// Euclidean division: returns (quotient, remainder).
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        UniPoly q(field_), r = *this;
        if (r.degree() < d.degree()) return {q, r};
        std::vector<value_type> qc(r.degree() - d.degree() + 1, field_.zero());
        const value_type lead_inv = field_.inverse(d.leading());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const std::size_t shift = r.degree() - d.degree();
            const value_type c = r.leading() * lead_inv;
            qc[shift] = c;
            std::vector<value_type> rc = r.coeffs_;
            for (std::size_t i = 0; i < d.coeffs_.size(); ++i) rc[i + shift] -= c * d.coeffs_[i];
            rc.pop_back();
            r = UniPoly(field_, std::move(rc));
        }
        return {UniPoly(field_, std::move(qc)), r};
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void normalize() {
        while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    F field_;
    std::vector<value_type> coeffs_;
};

/// Sparse multivariate polynomial in variables x_0 .. x_{n-1}; exponent tuples
/// map to nonzero coefficients.
template <Field F>
class MultiPoly {
public:
    using value_type = typename F::value_type;
    using Exponents = std::vector<unsigned>;

    MultiPoly(F field, std::size_t variables) : field_(std::move(field)), nvars_(variables) {}

    static MultiPoly constant(const F& field, std::size_t variables, const value_type& c) {
        MultiPoly p(field, variables);
        p.add_term(Exponents(variables, 0), c);
        return p;
    }
    /// Embeds a univariate polynomial as a polynomial in variable `var`.
    static MultiPoly from_univariate(const UniPoly<F>& u, std::size_t variables, std::size_t var) {
        MultiPoly p(u.field(), variables);
        for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
            Exponents e(variables, 0);
            e[var] = static_cast<unsigned>(k);
            p.add_term(e, u.coeffs()[k]);
        }
        return p;
    }

    const F& field() const { return field_; }
    std::size_t variables() const { return nvars_; }
    const std::map<Exponents, value_type>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponents& e, const value_type& c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent tuple length mismatch");
        if (field_.is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (field_.is_zero(it->second)) terms_.erase(it);
        }
    }

    value_type coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Highest exponent of `var` among the stored terms (-1 for zero).
    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
        return d;
    }

    value_type eval(const std::vector<value_type>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong number of variables");
        value_type acc = field_.zero();
        for (const auto& [e, c] : terms_) {
            value_type term = c;
            for (std::size_t v = 0; v < nvars_; ++v)
                for (unsigned k = 0; k < e[v]; ++k) term *= point[v];
            acc += term;
        }
        return acc;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        a.require_compatible(b);
        MultiPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.require_compatible(b);
        MultiPoly r(a.field_, a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (std::size_t v = 0; v < a.nvars_; ++v) e[v] = ea[v] + eb[v];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void require_compatible(const MultiPoly& b) const {
        if (nvars_ != b.nvars_) throw std::invalid_argument("polynomials in different variable sets");
    }

    F field_;
    std::size_t nvars_;
    std::map<Exponents, value_type> terms_;
};

/// Horner evaluation; free-function spelling used by the CLI layer.
template <Field F>
typename F::value_type poly_eval(const UniPoly<F>& p, const typename F::value_type& t) {
    return p.eval(t);
}

template <Field F>
typename F::value_type multi_eval(const MultiPoly<F>& q, const std::vector<typename F::value_type>& point) {
    return q.eval(point);
}

/// Newton interpolation through (xs[k], ys[k]); nodes must be distinct.
template <Field F>
UniPoly<F> interpolate(const F& field, const std::vector<typename F::value_type>& xs,
                       std::vector<typename F::value_type> ys) {
    using E = typename F::value_type;
    const std::size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("interpolation node/value count mismatch");
    // divided differences in place
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            const E den = xs[i] - xs[i - level];
            if (field.is_zero(den)) throw FieldError("interpolation nodes are not distinct");
            ys[i] = (ys[i] - ys[i - 1]) / den;
        }
    UniPoly<F> result(field);
    UniPoly<F> basis = UniPoly<F>::constant(field, field.one());
    for (std::size_t k = 0; k < n; ++k) {
        result = result + basis.scaled(ys[k]);
        basis = basis * UniPoly<F>::linear_factor(field, xs[k]);
    }
    return result;
}

/// Recovers a polynomial in `variables` variables of degree < nodes.size() in
/// each variable from its values on the tensor grid nodes^variables.
template <Field F>
MultiPoly<F> interpolate_grid(const F& field, std::size_t variables,
                              const std::vector<typename F::value_type>& nodes,
                              const std::function<typename F::value_type(const std::vector<typename F::value_type>&)>& value) {
    using E = typename F::value_type;
    const std::size_t n = nodes.size();
    std::size_t total = 1;
    for (std::size_t v = 0; v < variables; ++v) total *= n;

    // flat index: digit v (base n) is the node index of variable v
    std::vector<E> table;
    table.reserve(total);
    std::vector<E> point(variables, field.zero());
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t v = 0; v < variables; ++v) {
            point[v] = nodes[rest % n];
            rest /= n;
        }
        table.push_back(value(point));
    }

    // interpolate along each axis in turn; afterwards digit v is an exponent
    std::size_t stride = 1;
    for (std::size_t v = 0; v < variables; ++v, stride *= n) {
        for (std::size_t base = 0; base < total; ++base) {
            if ((base / stride) % n != 0) continue;
            std::vector<E> line;
            for (std::size_t k = 0; k < n; ++k) line.push_back(table[base + k * stride]);
            UniPoly<F> u = interpolate(field, nodes, line);
            for (std::size_t k = 0; k < n; ++k) table[base + k * stride] = u.coeff(k);
        }
    }

    MultiPoly<F> result(field, variables);
    for (std::size_t idx = 0; idx < total; ++idx) {
        typename MultiPoly<F>::Exponents e(variables);
        std::size_t rest = idx;
        for (std::size_t v = 0; v < variables; ++v) {
            e[v] = static_cast<unsigned>(rest % n);
            rest /= n;
        }
        result.add_term(e, table[idx]);
    }
    return result;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_POLYNOMIAL_HPP
