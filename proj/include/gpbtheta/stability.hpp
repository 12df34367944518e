#ifndef GPBTHETA_STABILITY_HPP
#define GPBTHETA_STABILITY_HPP

#include <algorithm>
#include <cstdint>
#include <future>
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
#include "random.hpp"

namespace gpbtheta {

class CertificateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a requested search or decision is outside what can be done
/// exactly (enumeration too large, unsupported rank/field combination).
class SearchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sub-GPB (W, F^ind) of V given by an injective sheaf map W -> V together
/// with its induced structure and slope; re-checkable without trusting the
/// producer.
template <Field F>
struct SubGpbCertificate {
    PolyMatrixHom<F> inclusion;
    GpbStructure<F> induced;
    mpq_class claimed_slope;
};

template <Field F>
mpq_class sub_slope(const PolyMatrixHom<F>& inclusion, const GpbStructure<F>& induced) {
    long long d = inclusion.source().degree();
    for (std::size_t i = 0; i < induced.pairs(); ++i) d += static_cast<long long>(induced.dim(i));
    mpq_class s(static_cast<long>(d), static_cast<unsigned long>(inclusion.source().rank()));
    s.canonicalize();
    return s;
}

template <Field F>
SubGpbCertificate<F> make_certificate(PolyMatrixHom<F> inclusion, const Gpb<F>& v) {
    GpbStructure<F> induced = induced_structure(inclusion, v);
    mpq_class slope = sub_slope(inclusion, induced);
    return {std::move(inclusion), std::move(induced), std::move(slope)};
}

enum class CertificateStatus { destabilizing, boundary, below };

/// Full integrity check of a certificate against v; throws CertificateError
/// on anything malformed, otherwise compares the slope with mu(v).
template <Field F>
CertificateStatus check_certificate(const SubGpbCertificate<F>& c, const Gpb<F>& v) {
    const auto& f = c.inclusion;
    if (!(f.field() == v.field())) throw CertificateError("certificate is over a different field");
    if (!(f.target() == v.bundle())) throw CertificateError("certificate does not map into the GPB's bundle");
    if (c.induced.pairs() != v.genus()) throw CertificateError("certificate has the wrong number of pairs");
    if (!f.is_injective()) throw CertificateError("certificate inclusion is not injective");
    if (f.source().rank() == v.rank() && f.source().degree() >= v.bundle().degree())
        throw CertificateError("certificate is not a proper subsheaf");
    if (!(induced_structure(f, v) == c.induced))
        throw CertificateError("certificate's induced structure does not recompute");
    if (sub_slope(f, c.induced) != c.claimed_slope)
        throw CertificateError("certificate's claimed slope does not recompute");
    const mpq_class mu = gpb_slope(v);
    if (c.claimed_slope > mu) return CertificateStatus::destabilizing;
    if (c.claimed_slope == mu) return CertificateStatus::boundary;
    return CertificateStatus::below;
}

template <Field F>
bool verify_destabilizer(const SubGpbCertificate<F>& c, const Gpb<F>& v) {
    return check_certificate(c, v) == CertificateStatus::destabilizing;
}

struct DegreeWindow {
    int lo = 0;
    int hi = 0;
};

/// [ceil(mu) - 2g, max d_j]. A rank-1 sub of degree e has slope at most
/// e + 2g, so nothing below the window reaches mu; nothing above it maps in.
template <Field F>
DegreeWindow default_window(const Gpb<F>& v) {
    const mpq_class mu = gpb_slope(v);
    mpz_class ceil_mu;
    mpz_cdiv_q(ceil_mu.get_mpz_t(), mu.get_num_mpz_t(), mu.get_den_mpz_t());
    return {static_cast<int>(ceil_mu.get_si()) - 2 * static_cast<int>(v.genus()), v.bundle()[0]};
}

/// Coefficient domain for line-subsheaf enumeration. Prime fields default to
/// the whole field; over Q a height bound is mandatory.
struct EnumerationDomain {
    std::optional<long long> height;
    std::uint64_t max_candidates = 20'000'000;

    std::string describe() const {
        return height ? "box[-" + std::to_string(*height) + "," + std::to_string(*height) + "]" : "full-field";
    }
};

namespace detail {

template <Field F>
std::vector<typename F::value_type> domain_values(const F& field, const EnumerationDomain& domain) {
    std::vector<typename F::value_type> vals;
    if (!domain.height) {
        if (field.size() == 0) throw SearchError("enumeration over Q needs a coefficient height bound");
        for (std::uint64_t x = 0; x < field.size(); ++x) vals.push_back(field.from_int(static_cast<long long>(x)));
        return vals;
    }
    auto push = [&](long long n) {
        auto x = field.from_int(n);
        if (std::find(vals.begin(), vals.end(), x) == vals.end()) vals.push_back(x);
    };
    push(0);
    for (long long n = 1; n <= *domain.height; ++n) {
        push(n);
        push(-n);
    }
    if (vals.size() < 2) throw SearchError("enumeration domain must contain a nonzero value");
    return vals;
}

/// Number of projective points (first nonzero coordinate = 1) with n
/// coordinates drawn from a set of size q, saturating at `cap`.
inline std::uint64_t projective_count(std::uint64_t q, int n, std::uint64_t cap) {
    std::uint64_t total = 0, power = 1;
    for (int k = 0; k < n; ++k) {
        total += power;
        if (total > cap) return cap + 1;
        if (power > cap / q + 1) power = cap + 1;
        else power *= q;
    }
    return total;
}

/// rank of the m x 2 matrix [c1 c2]
template <Field F>
int rank_two_columns(const F& k, const std::vector<typename F::value_type>& c1,
                     const std::vector<typename F::value_type>& c2) {
    bool z1 = std::all_of(c1.begin(), c1.end(), [&](const auto& x) { return k.is_zero(x); });
    bool z2 = std::all_of(c2.begin(), c2.end(), [&](const auto& x) { return k.is_zero(x); });
    if (z1 && z2) return 0;
    if (z1 || z2) return 1;
    for (std::size_t x = 0; x < c1.size(); ++x)
        for (std::size_t y = x + 1; y < c1.size(); ++y)
            if (!k.is_zero(c1[x] * c2[y] - c1[y] * c2[x])) return 2;
    return 1;
}

/// Fast scorer e + sum_i dim F_i^ind for rank-1 subs O(e) -> V.
template <Field F>
class LineSubScorer {
public:
    using E = typename F::value_type;

    explicit LineSubScorer(const Gpb<F>& v) : v_(v) {
        const std::size_t r = v.rank();
        for (std::size_t i = 0; i < v.genus(); ++i) {
            Matrix<F> q = annihilator(v.structure().subspace(i));
            quot_a_.push_back(q.block(0, 0, q.rows(), r));
            quot_b_.push_back(q.block(0, r, q.rows(), r));
        }
    }

    /// Sum of induced dimensions for the section with the given coefficient
    /// layout (row j, ascending degree up to d_j - e).
    int induced_total(int e, const std::vector<E>& coeffs) const {
        const F& k = v_.field();
        const std::size_t r = v_.rank();
        int total = 0;
        std::vector<E> sa(r, k.zero()), sb(r, k.zero());
        for (std::size_t i = 0; i < v_.genus(); ++i) {
            const E& a = v_.line().a(i);
            const E& b = v_.line().b(i);
            std::size_t pos = 0;
            for (std::size_t j = 0; j < r; ++j) {
                const int n = std::max(0, v_.bundle()[j] - e + 1);
                E acc_a = k.zero(), acc_b = k.zero();
                for (int m = n - 1; m >= 0; --m) {
                    acc_a = acc_a * a + coeffs[pos + m];
                    acc_b = acc_b * b + coeffs[pos + m];
                }
                sa[j] = acc_a;
                sb[j] = acc_b;
                pos += n;
            }
            total += 2 - rank_two_columns(k, quot_a_[i].apply(sa), quot_b_[i].apply(sb));
        }
        return total;
    }

private:
    const Gpb<F>& v_;
    std::vector<Matrix<F>> quot_a_, quot_b_;
};

template <Field F>
struct PartitionBest {
    int score = 0;
    int e = 0;
    std::optional<std::vector<typename F::value_type>> coeffs;
};

template <Field F>
PartitionBest<F> scan_degree(const Gpb<F>& v, const LineSubScorer<F>& scorer, int e,
                             const std::vector<typename F::value_type>& vals) {
    using E = typename F::value_type;
    const F& k = v.field();
    const int n = hom_dimension(e, v.bundle());
    PartitionBest<F> best;
    best.e = e;
    if (n == 0) return best;
    std::vector<std::size_t> idx(n, 0);
    std::vector<E> coeffs(n, k.zero());
    for (int lead = 0; lead < n; ++lead) {
        std::fill(idx.begin(), idx.end(), 0);
        for (int t = 0; t < n; ++t) coeffs[t] = k.zero();
        coeffs[lead] = k.one();
        for (;;) {
            const int score = e + scorer.induced_total(e, coeffs);
            if (!best.coeffs || score > best.score) {
                best.score = score;
                best.coeffs = coeffs;
            }
            // odometer over positions lead+1 .. n-1
            int pos = n - 1;
            while (pos > lead) {
                if (++idx[pos] < vals.size()) {
                    coeffs[pos] = vals[idx[pos]];
                    break;
                }
                idx[pos] = 0;
                coeffs[pos] = vals[0];
                --pos;
            }
            if (pos <= lead) break;
        }
    }
    return best;
}

}  // namespace detail

/// Exhaustive scan over projective line-subsheaf maps O(e) -> V for e in the
/// window and coefficients in the domain; returns the certificate maximising
/// e + sum_i dim F_i^ind (ties: lowest e, then enumeration order), or nothing
/// when no degree in the window admits a nonzero map.
template <Field F>
std::optional<SubGpbCertificate<F>> line_subsheaf_search(const Gpb<F>& v, DegreeWindow window,
                                                         const EnumerationDomain& domain) {
    if (window.lo > window.hi) throw SearchError("empty degree window");
    const F& k = v.field();
    const auto vals = detail::domain_values(k, domain);

    std::uint64_t total = 0;
    for (int e = window.lo; e <= window.hi; ++e) {
        total += detail::projective_count(vals.size(), hom_dimension(e, v.bundle()), domain.max_candidates);
        if (total > domain.max_candidates)
            throw SearchError("line-subsheaf enumeration exceeds " + std::to_string(domain.max_candidates) +
                              " candidates");
    }

    detail::LineSubScorer<F> scorer(v);
    std::vector<std::future<detail::PartitionBest<F>>> parts;
    for (int e = window.lo; e <= window.hi; ++e)
        parts.push_back(std::async(std::launch::async, [&, e] { return detail::scan_degree(v, scorer, e, vals); }));

    std::optional<detail::PartitionBest<F>> best;
    for (auto& p : parts) {
        auto r = p.get();
        if (!r.coeffs) continue;
        if (!best || r.score > best->score) best = std::move(r);
    }
    if (!best) return std::nullopt;

    auto f = PolyMatrixHom<F>::from_coefficients(k, SplitBundle::twist(best->e), v.bundle(), *best->coeffs);
    auto cert = make_certificate(std::move(f), v);
    if (cert.claimed_slope != mpq_class(best->score))
        throw std::logic_error("line-subsheaf scorer disagrees with the induced-structure computation");
    return cert;
}

enum class StabilityStatus {
    unstable_with_certificate,
    semistable_exhaustive,
    stable_exhaustive,
    no_destabilizer_found_randomized,
};

inline const char* to_string(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::unstable_with_certificate: return "unstable-with-certificate";
        case StabilityStatus::semistable_exhaustive: return "semistable-exhaustive";
        case StabilityStatus::stable_exhaustive: return "stable-exhaustive";
        case StabilityStatus::no_destabilizer_found_randomized: return "no-destabilizer-found-randomized";
    }
    return "?";
}

enum class StabilityMode { exhaustive, randomized };

template <Field F>
struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::no_destabilizer_found_randomized;
    /// Strict destabilizer for unstable verdicts; an equality witness (if
    /// one was found) for semistable-but-not-stable verdicts.
    std::optional<SubGpbCertificate<F>> witness;
    std::string method;
    DegreeWindow window;
    std::string domain;
    std::string note;

    bool semistable() const {
        return status == StabilityStatus::semistable_exhaustive || status == StabilityStatus::stable_exhaustive;
    }
    bool unstable() const { return status == StabilityStatus::unstable_with_certificate; }
};

struct StabilityOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 2000;
    long long sample_height = 5;
    EnumerationDomain domain;
};

namespace detail {

/// a + b*w in k(w), w^2 = disc. Used only to test a common eigenvector whose
/// eigenvalue is irrational over the base field.
template <Field F>
struct QuadraticElement {
    typename F::value_type x, y;
};

inline bool is_square(const RationalField&, const mpq_class& a) {
    if (sgn(a) < 0) return false;
    return mpz_perfect_square_p(a.get_num_mpz_t()) && mpz_perfect_square_p(a.get_den_mpz_t());
}

inline mpq_class square_root(const RationalField&, const mpq_class& a) {
    mpz_class n, d;
    mpz_sqrt(n.get_mpz_t(), a.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), a.get_den_mpz_t());
    mpq_class r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_square(const PrimeField& k, const Residue& a) {
    if (k.is_zero(a)) return true;
    if (k.characteristic() == 2) return true;
    Residue acc = k.one(), base = a;
    for (std::uint64_t e = (k.characteristic() - 1) / 2; e; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc == k.one();
}

inline Residue square_root(const PrimeField& k, const Residue& a) {
    for (std::uint64_t x = 0; x < k.size(); ++x) {
        Residue r = k.from_int(static_cast<long long>(x));
        if (r * r == a) return r;
    }
    throw FieldError("no square root");
}

/// Is v (2-vector) an eigenvector of every matrix? det[v, A v] == 0.
template <Field F>
bool common_eigenvector(const std::vector<Matrix<F>>& mats, const std::vector<typename F::value_type>& v) {
    for (const auto& a : mats) {
        auto av = a.apply(v);
        if (!a.field().is_zero(v[0] * av[1] - v[1] * av[0])) return false;
    }
    return true;
}

struct EigenlineSearch {
    bool exists = false;      // over the algebraic closure
    bool rational = false;    // a witness over the base field exists
};

/// Common invariant line of 2x2 matrices over the algebraic closure, with a
/// base-field witness when one exists.
template <Field F>
EigenlineSearch common_eigenline(const std::vector<Matrix<F>>& mats, std::vector<typename F::value_type>& witness) {
    using E = typename F::value_type;
    if (mats.empty()) return {};
    const F& k = mats.front().field();
    const Matrix<F>* pick = nullptr;
    for (const auto& a : mats)
        if (!(k.is_zero(a(0, 1)) && k.is_zero(a(1, 0)) && a(0, 0) == a(1, 1))) {
            pick = &a;
            break;
        }
    if (!pick) {
        witness = {k.one(), k.zero()};
        return {true, true};
    }
    if (k.characteristic() == 2) throw SearchError("common eigenline test needs characteristic != 2");
    const Matrix<F>& a = *pick;
    const E tr = a(0, 0) + a(1, 1);
    const E dt = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const E disc = tr * tr - k.from_int(4) * dt;
    const E half = k.inverse(k.from_int(2));

    // eigenvector of a for eigenvalue mu, from whichever row of a - mu I is nonzero
    auto eigvec = [&](const E& mu) -> std::vector<E> {
        const E p = a(0, 0) - mu, q = a(0, 1);
        if (!k.is_zero(p) || !k.is_zero(q)) return {q, -p};
        return {a(1, 1) - mu, -a(1, 0)};
    };

    if (is_square(k, disc)) {
        const E root = square_root(k, disc);
        const std::vector<E> eigenvalues{E((tr + root) * half), E((tr - root) * half)};
        for (const E& mu : eigenvalues) {
            auto v = eigvec(mu);
            if (common_eigenvector(mats, v)) {
                witness = v;
                return {true, true};
            }
        }
        return {};
    }

    // mu = tr/2 + w/2 with w^2 = disc; conjugate lines behave identically
    using Q = QuadraticElement<F>;
    auto mul = [&](const Q& u, const Q& v) { return Q{u.x * v.x + disc * u.y * v.y, u.x * v.y + u.y * v.x}; };
    auto sub = [](const Q& u, const Q& v) { return Q{u.x - v.x, u.y - v.y}; };
    auto add = [](const Q& u, const Q& v) { return Q{u.x + v.x, u.y + v.y}; };
    auto lift = [&](const E& x) { return Q{x, k.zero()}; };
    const Q mu{tr * half, half};
    Q v0, v1;
    {
        const Q p = sub(lift(a(0, 0)), mu);
        const Q q = lift(a(0, 1));
        if (!k.is_zero(q.x)) {
            v0 = q;
            v1 = Q{-p.x, -p.y};
        } else {
            // a(0,1) == 0 forces a rational eigenvalue, unreachable here
            v0 = sub(lift(a(1, 1)), mu);
            v1 = lift(-a(1, 0));
        }
    }
    for (const auto& m : mats) {
        const Q w0 = add(mul(lift(m(0, 0)), v0), mul(lift(m(0, 1)), v1));
        const Q w1 = add(mul(lift(m(1, 0)), v0), mul(lift(m(1, 1)), v1));
        const Q d = sub(mul(v0, w1), mul(v1, w0));
        if (!k.is_zero(d.x) || !k.is_zero(d.y)) return {};
    }
    return {true, false};
}

template <Field F>
PolyMatrixHom<F> constant_section(const F& k, const SplitBundle& b, int e, const std::vector<typename F::value_type>& v) {
    std::vector<UniPoly<F>> entries;
    for (const auto& x : v) entries.push_back(UniPoly<F>::constant(k, x));
    return PolyMatrixHom<F>(k, SplitBundle::twist(e), b, std::move(entries));
}

template <Field F>
StabilityVerdict<F> decide_rank_one(const Gpb<F>& v) {
    StabilityVerdict<F> out;
    out.method = "rank-1 decision";
    out.window = default_window(v);
    out.domain = "exact";
    if (classify_type(v) == GpbType::B) {
        out.status = StabilityStatus::stable_exhaustive;
        return out;
    }
    // Proper subsheaves are V(-D). Per pair the best local trade of degree
    // against induced dimension is zero only for F_i = 0, 0+k or k+0.
    const F& k = v.field();
    for (std::size_t i = 0; i < v.genus(); ++i) {
        const Matrix<F>& s = v.structure().subspace(i);
        std::vector<typename F::value_type> roots;
        if (s.rows() == 0) roots = {v.line().a(i), v.line().b(i)};
        else if (s.rows() == 1 && k.is_zero(s(0, 0))) roots = {v.line().a(i)};
        else if (s.rows() == 1 && k.is_zero(s(0, 1))) roots = {v.line().b(i)};
        if (roots.empty()) continue;
        UniPoly<F> p = UniPoly<F>::constant(k, k.one());
        for (const auto& r : roots) p = p * UniPoly<F>::linear_factor(k, r);
        const int e = v.bundle()[0] - static_cast<int>(roots.size());
        PolyMatrixHom<F> f(k, SplitBundle::twist(e), v.bundle(), {p});
        out.status = StabilityStatus::semistable_exhaustive;
        out.witness = make_certificate(std::move(f), v);
        return out;
    }
    out.status = StabilityStatus::stable_exhaustive;
    return out;
}

/*
 * Rank-2 type B. A saturated line subbundle O(e) -> O(d1)+O(d2) with e > d2
 * must be the first summand (e = d1); one with e <= d2 has slope at most
 * d2 + g <= mu. Full-rank proper subsheaves of a type-B GPB always have
 * strictly smaller slope. So the first summand is the only possible strict
 * destabilizer, and when d1 == d2 equality happens exactly for a common
 * eigenvector of all A_i.
 */
template <Field F>
StabilityVerdict<F> decide_rank_two_type_b(const Gpb<F>& v) {
    const F& k = v.field();
    StabilityVerdict<F> out;
    out.method = "rank-2 type-B decision";
    out.window = default_window(v);
    out.domain = "algebraic closure";
    const int d1 = v.bundle()[0], d2 = v.bundle()[1];
    if (d1 > d2) {
        auto cert = make_certificate(constant_section(k, v.bundle(), d1, {k.one(), k.zero()}), v);
        switch (check_certificate(cert, v)) {
            case CertificateStatus::destabilizing:
                out.status = StabilityStatus::unstable_with_certificate;
                out.witness = std::move(cert);
                break;
            case CertificateStatus::boundary:
                out.status = StabilityStatus::semistable_exhaustive;
                out.witness = std::move(cert);
                break;
            case CertificateStatus::below:
                out.status = StabilityStatus::stable_exhaustive;
                break;
        }
        return out;
    }
    std::vector<typename F::value_type> vec;
    auto found = common_eigenline(glue_of(v).matrices(), vec);
    if (!found.exists) {
        out.status = StabilityStatus::stable_exhaustive;
    } else if (found.rational) {
        out.status = StabilityStatus::semistable_exhaustive;
        out.witness = make_certificate(constant_section(k, v.bundle(), d1, vec), v);
    } else {
        out.status = StabilityStatus::semistable_exhaustive;
        out.note = "equality subbundle exists only over a quadratic extension; no base-field witness";
    }
    return out;
}

template <Field F>
StabilityVerdict<F> decide_by_enumeration(const Gpb<F>& v, const EnumerationDomain& domain) {
    StabilityVerdict<F> out;
    out.method = "line-subsheaf enumeration";
    out.window = default_window(v);
    out.domain = domain.describe();
    out.note = "statement about base-field points; full-rank boundary subsheaves are not searched";
    auto best = line_subsheaf_search(v, out.window, domain);
    out.status = StabilityStatus::semistable_exhaustive;
    if (!best) return out;
    switch (check_certificate(*best, v)) {
        case CertificateStatus::destabilizing:
            out.status = StabilityStatus::unstable_with_certificate;
            out.witness = std::move(best);
            break;
        case CertificateStatus::boundary:
            out.witness = std::move(best);
            break;
        case CertificateStatus::below:
            break;
    }
    return out;
}

/// Inclusion of the coordinate subbundle spanned by the summands in `keep`.
template <Field F>
PolyMatrixHom<F> coordinate_inclusion(const F& k, const SplitBundle& b, const std::vector<std::size_t>& keep) {
    std::vector<int> src;
    for (auto j : keep) src.push_back(b[j]);
    std::vector<UniPoly<F>> entries(b.rank() * keep.size(), UniPoly<F>(k));
    for (std::size_t c = 0; c < keep.size(); ++c)
        entries[keep[c] * keep.size() + c] = UniPoly<F>::constant(k, k.one());
    return PolyMatrixHom<F>(k, SplitBundle(std::move(src)), b, std::move(entries));
}

template <Field F>
StabilityVerdict<F> randomized_search(const Gpb<F>& v, const StabilityOptions& opt) {
    const F& k = v.field();
    StabilityVerdict<F> out;
    out.method = "randomized";
    out.window = default_window(v);
    out.domain = "random samples=" + std::to_string(opt.samples) + " seed=" + std::to_string(opt.seed);
    out.note = "absence of a destabilizer found by sampling is not a proof of semistability";
    out.status = StabilityStatus::no_destabilizer_found_randomized;

    std::optional<SubGpbCertificate<F>> best;
    auto consider = [&](PolyMatrixHom<F> f) {
        if (f.is_zero() || !f.is_injective()) return;
        auto cert = make_certificate(std::move(f), v);
        if (!best || cert.claimed_slope > best->claimed_slope) best = std::move(cert);
    };

    // every coordinate subbundle
    const std::size_t r = v.rank();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << r); ++mask) {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < r; ++j)
            if (mask >> j & 1) keep.push_back(j);
        consider(coordinate_inclusion(k, v.bundle(), keep));
    }

    // random line subsheaves across the window
    Rng rng(opt.seed);
    const DegreeWindow w = out.window;
    for (std::size_t s = 0; s < opt.samples; ++s) {
        const int e = static_cast<int>(rng.between(w.lo, w.hi));
        const int n = hom_dimension(e, v.bundle());
        if (n == 0) continue;
        std::vector<typename F::value_type> c;
        for (int t = 0; t < n; ++t) c.push_back(random_element(k, rng, opt.sample_height));
        consider(PolyMatrixHom<F>::from_coefficients(k, SplitBundle::twist(e), v.bundle(), c));
    }

    if (best && check_certificate(*best, v) == CertificateStatus::destabilizing) {
        out.status = StabilityStatus::unstable_with_certificate;
        out.witness = std::move(best);
    }
    return out;
}

}  // namespace detail

/*
 * Semistability verdicts.
 *
 * exhaustive: rank 1 and rank-2 type B are decided exactly (over the
 * algebraic closure); rank-2 type T over a prime field is decided on
 * base-field points by full enumeration. Anything else is refused.
 * randomized: coordinate subbundles plus random line subsheaves; finding
 * nothing is reported as such, never as semistable.
 */
template <Field F>
StabilityVerdict<F> is_semistable(const Gpb<F>& v, StabilityMode mode, const StabilityOptions& opt = {}) {
    if (mode == StabilityMode::randomized) return detail::randomized_search(v, opt);
    if (v.rank() == 1) return detail::decide_rank_one(v);
    if (v.rank() == 2) {
        if (classify_type(v) == GpbType::B) return detail::decide_rank_two_type_b(v);
        if (v.field().size() != 0) return detail::decide_by_enumeration(v, opt.domain);
        throw SearchError("exhaustive stability for rank-2 type-T GPBs needs a prime field");
    }
    throw SearchError("exhaustive stability is only supported for rank <= 2");
}

}  // namespace gpbtheta

#endif  // GPBTHETA_STABILITY_HPP
