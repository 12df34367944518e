#ifndef GPBTHETA_FIELD_HPP
#define GPBTHETA_FIELD_HPP

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace gpbtheta {

/// Raised when an operation is asked to mix incompatible fields or the field
/// cannot support the request (too few elements, non-prime modulus, ...).
class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Exact base fields.
 *
 * Every algorithm in the library is written against the Field concept below:
 * a small policy object that can manufacture constants, while the element type
 * itself carries the usual arithmetic operators. Two models are provided:
 *
 *   RationalField  - unbounded rationals (GMP mpq_class), characteristic 0
 *   PrimeField     - residues modulo a prime p < 2^31
 *
 * No floating point is used anywhere: all zero tests are exact.
 */
template <class F>
concept Field = requires(const F& f, const typename F::value_type& a, long long n) {
    typename F::value_type;
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.from_int(n) } -> std::same_as<typename F::value_type>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.inverse(a) } -> std::same_as<typename F::value_type>;
    { f.characteristic() } -> std::convertible_to<std::uint64_t>;
    { f.spec() } -> std::convertible_to<std::string>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
};

class RationalField {
public:
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(long long n) const { return value_type(static_cast<long>(n)); }
    value_type from_ratio(long long num, long long den) const {
        if (den == 0) throw FieldError("rational with zero denominator");
        value_type q(static_cast<long>(num), static_cast<long>(den));
        q.canonicalize();
        return q;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    value_type inverse(const value_type& a) const {
        if (is_zero(a)) throw FieldError("inverse of zero");
        return value_type(1) / a;
    }
    std::uint64_t characteristic() const { return 0; }
    /// Number of elements; zero marks an infinite field.
    std::uint64_t size() const { return 0; }
    std::string spec() const { return "q"; }
    std::string to_string(const value_type& a) const { return a.get_str(); }
    value_type parse(const std::string& text) const {
        value_type q;
        if (q.set_str(text, 10) != 0) throw FieldError("malformed rational '" + text + "'");
        if (q.get_den() == 0) throw FieldError("rational with zero denominator");
        q.canonicalize();
        return q;
    }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Residue class modulo a prime. The modulus travels with the value so the
/// arithmetic operators need no field object.
class Residue {
public:
    Residue() = default;

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return modulus_; }

    friend Residue operator+(Residue a, Residue b) {
        check(a, b);
        std::uint64_t s = std::uint64_t(a.value_) + b.value_;
        if (s >= a.modulus_) s -= a.modulus_;
        return Residue(static_cast<std::uint32_t>(s), a.modulus_);
    }
    friend Residue operator-(Residue a, Residue b) {
        check(a, b);
        return Residue(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_,
                       a.modulus_);
    }
    friend Residue operator*(Residue a, Residue b) {
        check(a, b);
        return Residue(static_cast<std::uint32_t>(std::uint64_t(a.value_) * b.value_ % a.modulus_),
                       a.modulus_);
    }
    friend Residue operator/(Residue a, Residue b) { return a * b.inverse(); }
    Residue operator-() const { return Residue(value_ == 0 ? 0 : modulus_ - value_, modulus_); }
    Residue& operator+=(Residue b) { return *this = *this + b; }
    Residue& operator-=(Residue b) { return *this = *this - b; }
    Residue& operator*=(Residue b) { return *this = *this * b; }
    Residue& operator/=(Residue b) { return *this = *this / b; }

    friend bool operator==(Residue a, Residue b) {
        return a.value_ == b.value_ && a.modulus_ == b.modulus_;
    }
    friend auto operator<=>(Residue a, Residue b) {
        return std::pair(a.modulus_, a.value_) <=> std::pair(b.modulus_, b.value_);
    }

    Residue inverse() const {
        if (value_ == 0) throw FieldError("inverse of zero");
        // extended Euclid on (value, modulus)
        std::int64_t r0 = modulus_, r1 = value_, s0 = 0, s1 = 1;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::tie(r0, r1) = std::pair(r1, r0 - q * r1);
            std::tie(s0, s1) = std::pair(s1, s0 - q * s1);
        }
        std::int64_t inv = s0 % static_cast<std::int64_t>(modulus_);
        if (inv < 0) inv += modulus_;
        return Residue(static_cast<std::uint32_t>(inv), modulus_);
    }

private:
    friend class PrimeField;
    Residue(std::uint32_t v, std::uint32_t p) : value_(v), modulus_(p) {}

    static void check(Residue a, Residue b) {
        if (a.modulus_ != b.modulus_ || a.modulus_ == 0)
            throw FieldError("residues from different prime fields");
    }

    std::uint32_t value_ = 0;
    std::uint32_t modulus_ = 0;
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

class PrimeField {
public:
    using value_type = Residue;

    explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
        if (p >= (std::uint64_t(1) << 31)) throw FieldError("prime modulus must be below 2^31");
        if (!is_prime(p)) throw FieldError("modulus " + std::to_string(p) + " is not prime");
    }

    value_type zero() const { return Residue(0, p_); }
    value_type one() const { return Residue(1 % p_, p_); }
    value_type from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return Residue(static_cast<std::uint32_t>(r), p_);
    }
    bool is_zero(const value_type& a) const { return a.value() == 0; }
    value_type inverse(const value_type& a) const { return a.inverse(); }
    std::uint64_t characteristic() const { return p_; }
    std::uint64_t size() const { return p_; }
    std::string spec() const { return "p:" + std::to_string(p_); }
    std::string to_string(const value_type& a) const { return std::to_string(a.value()); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint32_t p_;
};

/// Parsed form of a field descriptor string: "q" or "p:<prime>".
struct FieldSpec {
    enum class Kind { rationals, prime };
    Kind kind = Kind::rationals;
    std::uint64_t characteristic = 0;

    static FieldSpec parse(const std::string& text) {
        if (text == "q" || text == "Q") return {};
        if (text.size() > 2 && (text[0] == 'p' || text[0] == 'P') && text[1] == ':') {
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(text.substr(2), &used);
                if (used != text.size() - 2) throw FieldError("");
            } catch (const std::exception&) {
                throw FieldError("malformed field spec '" + text + "'");
            }
            if (!is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
            if (p >= (std::uint64_t(1) << 31)) throw FieldError("prime modulus must be below 2^31");
            return {Kind::prime, p};
        }
        throw FieldError("malformed field spec '" + text + "' (expected q or p:<prime>)");
    }

    std::string str() const {
        return kind == Kind::rationals ? "q" : "p:" + std::to_string(characteristic);
    }
};

/// Calls fn with the concrete field described by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::rationals) return std::forward<Fn>(fn)(RationalField{});
    return std::forward<Fn>(fn)(PrimeField(spec.characteristic));
}

}  // namespace gpbtheta

#endif  // GPBTHETA_FIELD_HPP
