#ifndef GPBTHETA_DESCENT_HPP
#define GPBTHETA_DESCENT_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bundles.hpp"
#include "field.hpp"
#include "gpb.hpp"
#include "stability.hpp"
#include "theta.hpp"

namespace gpbtheta {

/// The rational curve with g nodes obtained by gluing a_i to b_i.
template <Field F>
class CastelnuovoCurve {
public:
    explicit CastelnuovoCurve(MarkedLine<F> line) : line_(std::move(line)) {}

    const MarkedLine<F>& line() const { return line_; }
    std::size_t arithmetic_genus() const { return line_.genus(); }

private:
    MarkedLine<F> line_;
};

struct DescentInvariants {
    int rank = 0;
    /// deg(V) for type B. For type T this is the GPB degree minus g*r, a
    /// normalisation that agrees with the type-B value.
    int degree_on_X = 0;
    /// chi(pi_* V) - sum_i (2r - dim F_i), from the defining exact sequence.
    int euler_char_X = 0;
    /// degree_on_X + r (1 - g), Riemann-Roch on the curve.
    int euler_char_rr = 0;
    bool locally_free = false;
};

template <Field F>
DescentInvariants descended_invariants(const Gpb<F>& v, const CastelnuovoCurve<F>& x) {
    if (!(v.line() == x.line())) throw BundleError("GPB and curve have different marked lines");
    const int r = static_cast<int>(v.rank());
    const int g = static_cast<int>(x.arithmetic_genus());
    DescentInvariants out;
    out.rank = r;
    out.locally_free = classify_type(v) == GpbType::B;
    out.degree_on_X = out.locally_free ? v.bundle().degree() : gpb_degree(v) - g * r;

    int chi = v.bundle().degree() + r;  // chi of the pushforward
    for (std::size_t i = 0; i < v.genus(); ++i) chi -= 2 * r - static_cast<int>(v.structure().dim(i));
    out.euler_char_X = chi;
    out.euler_char_rr = out.degree_on_X + r * (1 - g);
    return out;
}

/// dim Hom(O_X-GPB, V): global sections of the descended sheaf on X.
template <Field F>
std::size_t h0_on_curve(const Gpb<F>& v) {
    return hom_space(Gpb<F>::trivial(v.line()), v).dimension;
}

template <Field F>
struct ThetaTranscript {
    ThetaLineSpec<F> line_bundle;
    std::size_t hom_dimension = 0;
    typename F::value_type product_value;
    DescentInvariants invariants;
    StabilityStatus stability;
    std::vector<VanishingReport> vanishing;
    bool verified = false;
};

/*
 * The curve-side theta statement: picks the gluing scalars, checks that the
 * descended degree-(1-g) line bundle has no maps to V, and records the
 * evidence. Requires an attached semistability verdict.
 */
template <Field F>
ThetaTranscript<F> theta_on_curve(const Gpb<F>& v, const CastelnuovoCurve<F>& x, const StabilityVerdict<F>& verdict) {
    if (verdict.unstable()) throw std::invalid_argument("theta_on_curve refuses an unstable GPB");
    if (verdict.witness && check_certificate(*verdict.witness, v) == CertificateStatus::destabilizing)
        throw std::invalid_argument("attached verdict carries a destabilizing witness");
    if (classify_type(v) != GpbType::B) throw ClassificationError("theta_on_curve needs a type-B GPB");
    if (v.bundle().degree() != 0) throw BundleError("theta_on_curve needs deg(V) = 0");
    if (x.arithmetic_genus() < 2) throw BundleError("theta_on_curve needs genus >= 2");

    ThetaTranscript<F> t{choose_theta_glue(v), 0, v.field().zero(), descended_invariants(v, x), verdict.status, {}, false};
    const Gpb<F> l = theta_line(t.line_bundle, v.line());
    const HomSpace<F> homs = hom_space(l, v);
    t.hom_dimension = homs.dimension;
    t.product_value = product_theta(v).expanded.eval(t.line_bundle.lambda);
    for (const auto& f : homs.basis) t.vanishing.push_back(vanishing_bound_check(f, v));
    t.verified = homs.dimension == 0;
    return t;
}

}  // namespace gpbtheta

#endif  // GPBTHETA_DESCENT_HPP
