#ifndef GPBTHETA_GPB_HPP
#define GPBTHETA_GPB_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bundles.hpp"
#include "field.hpp"
#include "matrix.hpp"

namespace gpbtheta {

class ClassificationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Per pair i, the subspace F_i of V_{a_i} + V_{b_i} = k^r + k^r, stored as an
/// RREF basis (rows of length 2r, a-fibre coordinates first).
template <Field F>
class GpbStructure {
public:
    explicit GpbStructure(std::vector<Matrix<F>> subspaces) {
        subspaces_.reserve(subspaces.size());
        for (auto& s : subspaces) {
            if (s.cols() % 2 != 0) throw BundleError("structure subspace must live in an even-dimensional fibre sum");
            subspaces_.push_back(row_space(s));
        }
    }

    std::size_t pairs() const { return subspaces_.size(); }
    const Matrix<F>& subspace(std::size_t i) const { return subspaces_.at(i); }
    const std::vector<Matrix<F>>& subspaces() const { return subspaces_; }
    std::size_t dim(std::size_t i) const { return subspaces_.at(i).rows(); }
    std::size_t fibre_rank() const { return subspaces_.empty() ? 0 : subspaces_.front().cols() / 2; }

    friend bool operator==(const GpbStructure&, const GpbStructure&) = default;

private:
    std::vector<Matrix<F>> subspaces_;
};

/// Type-B data: per pair an invertible A_i : V_{a_i} -> V_{b_i}.
template <Field F>
class TypeBGlue {
public:
    explicit TypeBGlue(std::vector<Matrix<F>> glue) : glue_(std::move(glue)) {
        for (const auto& a : glue_) {
            if (!a.is_square()) throw BundleError("glue matrix must be square");
            if (a.field().is_zero(det(a))) throw BundleError("glue matrix must be invertible");
        }
    }

    std::size_t pairs() const { return glue_.size(); }
    const Matrix<F>& operator[](std::size_t i) const { return glue_.at(i); }
    const std::vector<Matrix<F>>& matrices() const { return glue_; }

    friend bool operator==(const TypeBGlue&, const TypeBGlue&) = default;

private:
    std::vector<Matrix<F>> glue_;
};

/// Graph {(v, A v)} of each A_i as an RREF subspace: rows [e_k | A e_k].
template <Field F>
GpbStructure<F> graph_to_subspace(const TypeBGlue<F>& glue) {
    std::vector<Matrix<F>> subs;
    for (const auto& a : glue.matrices()) {
        const std::size_t r = a.rows();
        Matrix<F> g(a.field(), r, 2 * r);
        for (std::size_t k = 0; k < r; ++k) {
            g(k, k) = a.field().one();
            for (std::size_t j = 0; j < r; ++j) g(k, r + j) = a(j, k);
        }
        subs.push_back(std::move(g));
    }
    return GpbStructure<F>(std::move(subs));
}

enum class GpbType { B, T };

inline const char* to_string(GpbType t) { return t == GpbType::B ? "B" : "T"; }

template <Field F>
bool is_graph_of_isomorphism(const Matrix<F>& subspace) {
    const std::size_t r = subspace.cols() / 2;
    if (subspace.rows() != r) return false;
    return rank(subspace.block(0, 0, r, r)) == r && rank(subspace.block(0, r, r, r)) == r;
}

/// Inverse of graph_to_subspace; every subspace must be the graph of an
/// isomorphism.
template <Field F>
TypeBGlue<F> subspace_to_graph(const GpbStructure<F>& s) {
    std::vector<Matrix<F>> glue;
    for (std::size_t i = 0; i < s.pairs(); ++i) {
        const Matrix<F>& sub = s.subspace(i);
        if (!is_graph_of_isomorphism(sub))
            throw ClassificationError("structure at pair " + std::to_string(i) + " is not the graph of an isomorphism");
        const std::size_t r = sub.cols() / 2;
        // canonical RREF of a graph is [I | A^T]
        glue.push_back(sub.block(0, r, r, r).transpose());
    }
    return TypeBGlue<F>(std::move(glue));
}

/// A generalized parabolic bundle (V, F_i(V)) on the marked line.
template <Field F>
class Gpb {
public:
    Gpb(SplitBundle bundle, MarkedLine<F> line, GpbStructure<F> structure)
        : bundle_(std::move(bundle)), line_(std::move(line)), structure_(std::move(structure)) {
        if (structure_.pairs() != line_.genus())
            throw BundleError("structure must have one subspace per marked pair");
        for (const auto& s : structure_.subspaces())
            if (s.cols() != 2 * bundle_.rank()) throw BundleError("structure subspace has the wrong ambient dimension");
    }

    static Gpb type_b(SplitBundle bundle, MarkedLine<F> line, const TypeBGlue<F>& glue) {
        for (const auto& a : glue.matrices())
            if (a.rows() != bundle.rank()) throw BundleError("glue matrix size must equal the bundle rank");
        return Gpb(std::move(bundle), std::move(line), graph_to_subspace(glue));
    }

    /// The rank-1 type-B GPB O(e) glued by the scalars lambda_i.
    static Gpb line_bundle(int e, MarkedLine<F> line, const std::vector<typename F::value_type>& lambda) {
        if (lambda.size() != line.genus()) throw BundleError("need one gluing scalar per marked pair");
        const F& k = line.field();
        std::vector<Matrix<F>> glue;
        for (const auto& l : lambda) {
            if (k.is_zero(l)) throw BundleError("gluing scalar must be nonzero");
            Matrix<F> a(k, 1, 1);
            a(0, 0) = l;
            glue.push_back(std::move(a));
        }
        return type_b(SplitBundle::twist(e), std::move(line), TypeBGlue<F>(std::move(glue)));
    }

    /// O glued by the identity at every pair; it descends to the structure sheaf.
    static Gpb trivial(MarkedLine<F> line) {
        std::vector<typename F::value_type> ones(line.genus(), line.field().one());
        return line_bundle(0, std::move(line), ones);
    }

    const F& field() const { return line_.field(); }
    const SplitBundle& bundle() const { return bundle_; }
    const MarkedLine<F>& line() const { return line_; }
    const GpbStructure<F>& structure() const { return structure_; }
    std::size_t rank() const { return bundle_.rank(); }
    std::size_t genus() const { return line_.genus(); }

    friend bool operator==(const Gpb&, const Gpb&) = default;

private:
    SplitBundle bundle_;
    MarkedLine<F> line_;
    GpbStructure<F> structure_;
};

template <Field F>
GpbType classify_type(const Gpb<F>& v) {
    for (const auto& s : v.structure().subspaces())
        if (!is_graph_of_isomorphism(s)) return GpbType::T;
    return GpbType::B;
}

template <Field F>
TypeBGlue<F> glue_of(const Gpb<F>& v) {
    return subspace_to_graph(v.structure());
}

/// deg(V) + sum_i dim F_i
template <Field F>
int gpb_degree(const Gpb<F>& v) {
    int d = v.bundle().degree();
    for (std::size_t i = 0; i < v.genus(); ++i) d += static_cast<int>(v.structure().dim(i));
    return d;
}

template <Field F>
mpq_class gpb_slope(const Gpb<F>& v) {
    mpq_class s(gpb_degree(v), static_cast<unsigned long>(v.rank()));
    s.canonicalize();
    return s;
}

/// Rows q with q . x = 0 exactly for x in the subspace; the coordinates of
/// the quotient fibre-sum / F.
template <Field F>
Matrix<F> annihilator(const Matrix<F>& subspace) {
    auto ker = kernel_basis(subspace);
    return Matrix<F>::from_rows(subspace.field(), subspace.cols(), ker);
}

namespace detail {

template <Field F>
Matrix<F> fibre_sum_map(const PolyMatrixHom<F>& f, const typename F::value_type& a, const typename F::value_type& b) {
    const std::size_t r = f.target().rank(), s = f.source().rank();
    Matrix<F> phi(f.field(), 2 * r, 2 * s);
    const Matrix<F> fa = f.fiber_map(a), fb = f.fiber_map(b);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < s; ++k) {
            phi(j, k) = fa(j, k);
            phi(r + j, s + k) = fb(j, k);
        }
    return phi;
}

}  // namespace detail

/// Does the underlying map carry every F_i(w) into F_i(v)?
template <Field F>
bool is_gpb_morphism(const PolyMatrixHom<F>& f, const Gpb<F>& w, const Gpb<F>& v) {
    if (!(f.source() == w.bundle()) || !(f.target() == v.bundle())) return false;
    for (std::size_t i = 0; i < v.genus(); ++i) {
        const Matrix<F> phi = detail::fibre_sum_map(f, v.line().a(i), v.line().b(i));
        const Matrix<F> check = annihilator(v.structure().subspace(i)) * phi * w.structure().subspace(i).transpose();
        if (!check.is_zero()) return false;
    }
    return true;
}

/// A GPB morphism is determined by its underlying sheaf map: F_i(target)
/// embeds in the fibre sum, so the F_i-level map is forced when it exists.
template <Field F>
struct GpbMorphism {
    PolyMatrixHom<F> underlying;

    static GpbMorphism checked(PolyMatrixHom<F> f, const Gpb<F>& w, const Gpb<F>& v) {
        if (!is_gpb_morphism(f, w, v)) throw BundleError("map does not respect the parabolic structures");
        return {std::move(f)};
    }
};

/// Induced (equaliser) structure on the source of an injective sheaf map:
/// F_i^ind = preimage of F_i(target) under f(a_i) + f(b_i).
template <Field F>
GpbStructure<F> induced_structure(const PolyMatrixHom<F>& f, const Gpb<F>& target) {
    if (!(f.target() == target.bundle())) throw BundleError("inclusion does not land in the target bundle");
    if (!f.is_injective()) throw BundleError("induced structure needs an injective sheaf map");
    std::vector<Matrix<F>> subs;
    for (std::size_t i = 0; i < target.genus(); ++i) {
        const Matrix<F> phi = detail::fibre_sum_map(f, target.line().a(i), target.line().b(i));
        const Matrix<F> cond = annihilator(target.structure().subspace(i)) * phi;
        subs.push_back(Matrix<F>::from_rows(f.field(), phi.cols(), kernel_basis(cond)));
    }
    return GpbStructure<F>(std::move(subs));
}

template <Field F>
void require_same_line(const Gpb<F>& w, const Gpb<F>& v) {
    if (!(w.line() == v.line())) throw BundleError("GPBs live on different marked lines or fields");
}

/*
 * The linear system whose kernel is Hom((W,F(W)), (V,F(V))).
 *
 * Columns: the polynomial coefficients of f, ordered by (target row j,
 * source column k, ascending degree).
 * Rows: for each pair i, each basis vector u of F_i(w), each quotient
 * coordinate q of (V_a + V_b) / F_i(v):  q . (f(a_i) u_a, f(b_i) u_b) = 0.
 */
template <Field F>
Matrix<F> hom_system(const Gpb<F>& w, const Gpb<F>& v) {
    require_same_line(w, v);
    using E = typename F::value_type;
    const F& k = v.field();
    const SplitBundle& src = w.bundle();
    const SplitBundle& tgt = v.bundle();
    const std::size_t r = tgt.rank(), s = src.rank();
    const int unknowns = PolyMatrixHom<F>::unknown_count(src, tgt);

    // column offset of the coefficient block for entry (j, k)
    std::vector<std::size_t> offset(r * s + 1, 0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t c = 0; c < s; ++c)
            offset[j * s + c + 1] = offset[j * s + c] + std::max(0, tgt[j] - src[c] + 1);

    std::vector<std::vector<E>> rows;
    for (std::size_t i = 0; i < v.genus(); ++i) {
        const E a = v.line().a(i), b = v.line().b(i);
        const Matrix<F>& basis = w.structure().subspace(i);
        const Matrix<F> quot = annihilator(v.structure().subspace(i));
        for (std::size_t ub = 0; ub < basis.rows(); ++ub)
            for (std::size_t qi = 0; qi < quot.rows(); ++qi) {
                std::vector<E> row(unknowns, k.zero());
                for (std::size_t j = 0; j < r; ++j)
                    for (std::size_t c = 0; c < s; ++c) {
                        const E ca = quot(qi, j) * basis(ub, c);
                        const E cb = quot(qi, r + j) * basis(ub, s + c);
                        E pa = k.one(), pb = k.one();
                        for (std::size_t col = offset[j * s + c]; col < offset[j * s + c + 1]; ++col) {
                            row[col] = ca * pa + cb * pb;
                            pa *= a;
                            pb *= b;
                        }
                    }
                rows.push_back(std::move(row));
            }
    }
    return Matrix<F>::from_rows(k, unknowns, rows);
}

template <Field F>
struct HomSpace {
    std::size_t dimension = 0;
    std::vector<GpbMorphism<F>> basis;
};

template <Field F>
HomSpace<F> hom_space(const Gpb<F>& w, const Gpb<F>& v) {
    const Matrix<F> system = hom_system(w, v);
    HomSpace<F> out;
    for (const auto& vec : kernel_basis(system))
        out.basis.push_back({PolyMatrixHom<F>::from_coefficients(v.field(), w.bundle(), v.bundle(), vec)});
    out.dimension = out.basis.size();
    return out;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_GPB_HPP
