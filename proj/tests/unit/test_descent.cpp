#include <gtest/gtest.h>

#include <gpbtheta/descent.hpp>
#include <gpbtheta/generate.hpp>

using namespace gpbtheta;

namespace {

const RationalField Q;
const PrimeField F101(101);

using QM = Matrix<RationalField>;

MarkedLine<RationalField> line2() { return MarkedLine<RationalField>::from_ints(Q, {{0, 2}, {1, 3}}); }

Gpb<RationalField> identity_rank2(std::vector<int> d = {0, 0}) {
    return Gpb<RationalField>::type_b(SplitBundle(std::move(d)), line2(),
                                      TypeBGlue<RationalField>({QM::identity(Q, 2), QM::identity(Q, 2)}));
}

}  // namespace

TEST(DescendedInvariants, Examples) {
    const CastelnuovoCurve<RationalField> x(line2());
    EXPECT_EQ(x.arithmetic_genus(), 2u);

    const auto a = descended_invariants(identity_rank2(), x);
    EXPECT_EQ(a.euler_char_X, -2);
    EXPECT_EQ(a.euler_char_rr, -2);
    EXPECT_TRUE(a.locally_free);

    // the theta line bundle: degree 1 - g, chi 2 - 2g
    const auto l = descended_invariants(Gpb<RationalField>::line_bundle(-1, line2(), {mpq_class(2), mpq_class(2)}), x);
    EXPECT_EQ(l.euler_char_X, -2);
    EXPECT_EQ(l.degree_on_X, -1);

    const Gpb<RationalField> t(SplitBundle({-1}), line2(),
                               GpbStructure<RationalField>({QM::identity(Q, 2), QM::from_ints(Q, {{1, 1}})}));
    const auto ti = descended_invariants(t, x);
    EXPECT_FALSE(ti.locally_free);
    EXPECT_EQ(ti.degree_on_X, 0);
    EXPECT_EQ(ti.euler_char_X, -1);
    EXPECT_EQ(ti.euler_char_rr, -1);

    const CastelnuovoCurve<RationalField> other(MarkedLine<RationalField>::from_ints(Q, {{0, 5}, {1, 3}}));
    EXPECT_THROW(descended_invariants(identity_rank2(), other), BundleError);
}

TEST(DescendedInvariants, ChiAgreesOnRandomGpbs) {
    Rng rng(41);
    for (int t = 0; t < 300; ++t) {
        const int g = static_cast<int>(rng.between(1, 4));
        const int r = static_cast<int>(rng.between(1, 3));
        const int deg = static_cast<int>(rng.between(-r, r));
        const auto v = rng.below(2) ? random_type_b(F101, rng, g, r, deg) : random_gpb(F101, rng, g, r, deg);
        const auto inv = descended_invariants(v, CastelnuovoCurve<PrimeField>(v.line()));
        EXPECT_EQ(inv.euler_char_X, inv.euler_char_rr);
        EXPECT_EQ(inv.locally_free, classify_type(v) == GpbType::B);
    }
}

TEST(H0OnCurve, Examples) {
    EXPECT_EQ(h0_on_curve(Gpb<RationalField>::trivial(line2())), 1u);
    const auto one = MarkedLine<RationalField>::from_ints(Q, {{0, 1}});
    EXPECT_EQ(h0_on_curve(Gpb<RationalField>::line_bundle(0, one, {mpq_class(2)})), 0u);
    EXPECT_EQ(h0_on_curve(identity_rank2()), 2u);
    const auto generic = Gpb<RationalField>::type_b(
        SplitBundle({0, 0}), line2(),
        TypeBGlue<RationalField>({QM::from_ints(Q, {{1, 0}, {0, 2}}), QM::from_ints(Q, {{1, 1}, {1, 2}})}));
    EXPECT_EQ(h0_on_curve(generic), 0u);
    // O(1) + O(-1) glued by I: only the constants in O(1) agree at both pairs
    EXPECT_EQ(h0_on_curve(identity_rank2({1, -1})), 1u);
}

TEST(ThetaOnCurve, TranscriptForSemistable) {
    const auto v = identity_rank2();
    const CastelnuovoCurve<RationalField> x(v.line());
    const auto verdict = is_semistable(v, StabilityMode::exhaustive);
    const auto t = theta_on_curve(v, x, verdict);
    EXPECT_TRUE(t.verified);
    EXPECT_EQ(t.hom_dimension, 0u);
    EXPECT_EQ(t.product_value, 1);
    EXPECT_EQ(t.line_bundle.degree, -1);
    EXPECT_EQ(t.stability, StabilityStatus::semistable_exhaustive);
    EXPECT_EQ(t.invariants.euler_char_X, -2);
}

TEST(ThetaOnCurve, Refusals) {
    const auto un = identity_rank2({1, -1});
    const CastelnuovoCurve<RationalField> x(un.line());
    EXPECT_THROW(theta_on_curve(un, x, is_semistable(un, StabilityMode::exhaustive)), std::invalid_argument);

    // a verdict that lies: claims semistable but carries a destabilizer
    auto forged = is_semistable(un, StabilityMode::exhaustive);
    forged.status = StabilityStatus::semistable_exhaustive;
    EXPECT_THROW(theta_on_curve(un, x, forged), std::invalid_argument);

    const Gpb<RationalField> t(SplitBundle({0}), line2(),
                               GpbStructure<RationalField>({QM::from_ints(Q, {{1, 0}}), QM::from_ints(Q, {{1, 1}})}));
    StabilityVerdict<RationalField> ok;
    ok.status = StabilityStatus::stable_exhaustive;
    EXPECT_THROW(theta_on_curve(t, x, ok), ClassificationError);

    const auto one = MarkedLine<RationalField>::from_ints(Q, {{0, 1}});
    EXPECT_THROW(theta_on_curve(Gpb<RationalField>::trivial(one), CastelnuovoCurve<RationalField>(one), ok), BundleError);

    const auto deg1 = Gpb<RationalField>::line_bundle(1, line2(), {mpq_class(1), mpq_class(1)});
    EXPECT_THROW(theta_on_curve(deg1, x, ok), BundleError);
}
