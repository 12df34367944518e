#include <gtest/gtest.h>

#include <gpbtheta/generate.hpp>
#include <gpbtheta/gpb.hpp>
#include <gpbtheta/theta.hpp>

using namespace gpbtheta;

namespace {

const RationalField Q;
const PrimeField F7(7);

template <Field F>
using M = Matrix<F>;

template <Field F>
Gpb<F> glued(const F& k, std::vector<int> d, std::initializer_list<std::pair<long long, long long>> pairs,
             std::vector<Matrix<F>> glue) {
    return Gpb<F>::type_b(SplitBundle(std::move(d)), MarkedLine<F>::from_ints(k, pairs), TypeBGlue<F>(std::move(glue)));
}

/*
 * Oracle for dim Hom((O(e), lambda), V) over a tiny prime field: count every
 * coefficient vector with A_i f(a_i) = lambda_i f(b_i) and take log_p.
 */
std::size_t brute_force_line_hom_dim(const Gpb<PrimeField>& v, int e, const std::vector<Residue>& lambda) {
    const PrimeField& k = v.field();
    const SplitBundle src = SplitBundle::twist(e);
    const int n = PolyMatrixHom<PrimeField>::unknown_count(src, v.bundle());
    const auto glue = glue_of(v);
    std::vector<Residue> c(n, k.zero());
    std::vector<std::uint64_t> idx(n, 0);
    std::uint64_t hits = 0;
    for (;;) {
        for (int t = 0; t < n; ++t) c[t] = k.from_int(static_cast<long long>(idx[t]));
        const auto f = PolyMatrixHom<PrimeField>::from_coefficients(k, src, v.bundle(), c);
        bool ok = true;
        for (std::size_t i = 0; i < v.genus() && ok; ++i) {
            const auto fa = f.fiber_map(v.line().a(i)).column(0);
            const auto fb = f.fiber_map(v.line().b(i)).column(0);
            const auto lhs = glue[i].apply(fa);
            for (std::size_t j = 0; j < lhs.size(); ++j) ok &= lhs[j] == lambda[i] * fb[j];
        }
        hits += ok;
        int pos = 0;
        while (pos < n && ++idx[pos] == k.size()) idx[pos++] = 0;
        if (pos == n) break;
    }
    std::size_t dim = 0;
    for (std::uint64_t q = 1; q < hits; q *= k.size()) ++dim;
    return dim;
}

}  // namespace

TEST(ClassifyType, Examples) {
    const auto v = glued(Q, {0, 0}, {{0, 2}, {1, 3}}, {M<RationalField>::identity(Q, 2), M<RationalField>::identity(Q, 2)});
    EXPECT_EQ(classify_type(v), GpbType::B);

    const auto line = MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 3}});
    const Gpb<RationalField> t(SplitBundle({0}), line,
                               GpbStructure<RationalField>({M<RationalField>::identity(Q, 2),
                                                            M<RationalField>::from_ints(Q, {{1, 1}})}));
    EXPECT_EQ(classify_type(t), GpbType::T);
    EXPECT_THROW(glue_of(t), ClassificationError);

    // a 2-dim subspace that is not a graph: F = V_a + 0
    const Gpb<RationalField> u(SplitBundle({0}), line,
                               GpbStructure<RationalField>({M<RationalField>::from_ints(Q, {{1, 0}}),
                                                            M<RationalField>::from_ints(Q, {{1, 2}})}));
    EXPECT_EQ(classify_type(u), GpbType::T);
}

TEST(GpbDegree, Examples) {
    const auto v = glued(Q, {1, -1}, {{0, 2}, {1, 3}}, {M<RationalField>::identity(Q, 2), M<RationalField>::identity(Q, 2)});
    EXPECT_EQ(gpb_degree(v), 4);
    EXPECT_EQ(gpb_slope(v), mpq_class(2));

    const auto line = MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 3}});
    const Gpb<RationalField> t(SplitBundle({0}), line,
                               GpbStructure<RationalField>({M<RationalField>::identity(Q, 2),
                                                            M<RationalField>::from_ints(Q, {{1, 1}})}));
    EXPECT_EQ(gpb_degree(t), 3);

    const Gpb<RationalField> w(SplitBundle({1, 0}), line,
                               GpbStructure<RationalField>({M<RationalField>(Q, 0, 4), M<RationalField>(Q, 0, 4)}));
    EXPECT_EQ(gpb_slope(w), mpq_class(1, 2));
}

TEST(TypeBGlue, GraphRoundTrip) {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = rng.between(1, 4);
        std::vector<Matrix<PrimeField>> g;
        for (int i = 0; i < 3; ++i) g.push_back(random_invertible(F7, rng, r, 0));
        const TypeBGlue<PrimeField> glue(g);
        EXPECT_EQ(subspace_to_graph(graph_to_subspace(glue)), glue);
    }
    EXPECT_THROW(TypeBGlue<RationalField>({M<RationalField>::from_ints(Q, {{1, 2}, {2, 4}})}), BundleError);
}

TEST(InducedStructure, Examples) {
    const auto line = MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 3}});
    const PolyMatrixHom<RationalField> first(Q, SplitBundle({0}), SplitBundle({0, 0}),
                                             {UniPoly<RationalField>::from_ints(Q, {1}), UniPoly<RationalField>(Q)});

    const auto id = glued(Q, {0, 0}, {{0, 2}, {1, 3}}, {M<RationalField>::identity(Q, 2), M<RationalField>::identity(Q, 2)});
    const auto s = induced_structure(first, id);
    EXPECT_EQ(s.dim(0), 1u);
    EXPECT_EQ(s.subspace(0), M<RationalField>::from_ints(Q, {{1, 1}}));

    const auto swap = M<RationalField>::from_ints(Q, {{0, 1}, {1, 0}});
    const auto sw = glued(Q, {0, 0}, {{0, 2}, {1, 3}}, {swap, swap});
    EXPECT_EQ(induced_structure(first, sw).dim(0), 0u);
    EXPECT_EQ(induced_structure(first, sw).dim(1), 0u);

    EXPECT_THROW(induced_structure(PolyMatrixHom<RationalField>(Q, SplitBundle({0}), SplitBundle({0, 0})), id),
                 BundleError);
    (void)line;
}

TEST(HomSpace, ThetaExamples) {
    const auto id = glued(Q, {0, 0}, {{0, 2}, {1, 3}}, {M<RationalField>::identity(Q, 2), M<RationalField>::identity(Q, 2)});
    const auto two = std::vector<mpq_class>{2, 2};
    const auto one = std::vector<mpq_class>{1, 1};
    EXPECT_EQ(hom_space(Gpb<RationalField>::line_bundle(-1, id.line(), two), id).dimension, 0u);
    // lambda = 1 matches the identity: both coordinate sections of O(1) glue
    EXPECT_EQ(hom_space(Gpb<RationalField>::line_bundle(-1, id.line(), one), id).dimension, 2u);
    EXPECT_EQ(hom_space(Gpb<RationalField>::trivial(id.line()), id).dimension, 2u);
}

TEST(HomSpace, MatchesBruteForceOverF7) {
    Rng rng(12);
    GenParams p;
    p.spectrum = 3;  // eigenvalues 1..3 so small lambda hits them
    for (int t = 0; t < 30; ++t) {
        const int r = static_cast<int>(rng.between(1, 2));
        const auto v = random_type_b(F7, rng, 2, r, 0, p);
        std::vector<Residue> lambda{F7.from_int(rng.between(1, 3)), F7.from_int(rng.between(1, 3))};
        const auto l = Gpb<PrimeField>::line_bundle(-1, v.line(), lambda);
        EXPECT_EQ(hom_space(l, v).dimension, brute_force_line_hom_dim(v, -1, lambda)) << "trial " << t;
    }
}

TEST(HomSpace, BasisElementsAndCombinationsAreMorphisms) {
    Rng rng(13);
    for (int t = 0; t < 60; ++t) {
        const auto v = random_gpb(F7, rng, 2, static_cast<int>(rng.between(1, 3)), 0);
        const auto w = random_gpb(F7, rng, 2, static_cast<int>(rng.between(1, 2)), -1);
        const auto wl = Gpb<PrimeField>(w.bundle(), v.line(), w.structure());
        const auto h = hom_space(wl, v);
        std::vector<Residue> combo(PolyMatrixHom<PrimeField>::unknown_count(wl.bundle(), v.bundle()), F7.zero());
        for (const auto& f : h.basis) {
            EXPECT_TRUE(is_gpb_morphism(f.underlying, wl, v));
            const Residue c = random_element(F7, rng, 0);
            const auto cf = f.underlying.coefficients();
            for (std::size_t x = 0; x < combo.size(); ++x) combo[x] += c * cf[x];
        }
        const auto sum = PolyMatrixHom<PrimeField>::from_coefficients(F7, wl.bundle(), v.bundle(), combo);
        EXPECT_TRUE(is_gpb_morphism(sum, wl, v));
        EXPECT_EQ(h.dimension, h.basis.size());
    }
}

TEST(HomSpace, InvariantUnderConstantConjugation) {
    // For splitting type (0, ..., 0) a constant P is an automorphism of V.
    Rng rng(14);
    for (int t = 0; t < 40; ++t) {
        const std::size_t r = rng.between(1, 3);
        const auto line = random_marked_line(F7, rng, 2);
        std::vector<Matrix<PrimeField>> g, h;
        const auto p = random_invertible(F7, rng, r, 0);
        const auto pinv = inverse(p);
        for (int i = 0; i < 2; ++i) {
            g.push_back(random_with_spectrum(F7, rng, r, 2, 0));
            h.push_back(p * g.back() * pinv);
        }
        const SplitBundle b(std::vector<int>(r, 0));
        const auto v = Gpb<PrimeField>::type_b(b, line, TypeBGlue<PrimeField>(g));
        const auto u = Gpb<PrimeField>::type_b(b, line, TypeBGlue<PrimeField>(h));
        for (int a = 1; a <= 2; ++a)
            for (int c = 1; c <= 2; ++c) {
                const auto l = Gpb<PrimeField>::line_bundle(-1, line, {F7.from_int(a), F7.from_int(c)});
                EXPECT_EQ(hom_space(l, v).dimension, hom_space(l, u).dimension);
            }
    }
}

TEST(HomSystem, SquareForDegreeZeroTypeB) {
    Rng rng(15);
    for (int t = 0; t < 50; ++t) {
        const int g = static_cast<int>(rng.between(2, 3));
        const int r = static_cast<int>(rng.between(1, 3));
        const auto v = random_type_b(F7, rng, g, r, 0);
        const auto sys = theta_system(v, std::vector<Residue>(g, F7.one()));
        EXPECT_EQ(sys.rows(), static_cast<std::size_t>(g * r));
        EXPECT_EQ(sys.cols(), static_cast<std::size_t>(g * r));
    }
}

TEST(HomSystem, RejectsDifferentLines) {
    const auto a = MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 3}});
    const auto b = MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 4}});
    EXPECT_THROW(hom_system(Gpb<RationalField>::trivial(a), Gpb<RationalField>::trivial(b)), BundleError);
}
