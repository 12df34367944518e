#ifndef GPBTHETA_SERIALIZATION_HPP
#define GPBTHETA_SERIALIZATION_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "bundles.hpp"
#include "descent.hpp"
#include "field.hpp"
#include "gpb.hpp"
#include "matrix.hpp"
#include "polynomial.hpp"
#include "stability.hpp"
#include "theta.hpp"

namespace gpbtheta {

/*
 * JSON encodings. Rationals are integers when integral and strings
 * "num/den" otherwise; residues are plain integers. Readers accept either
 * form for both fields.
 * Every top-level document carries "schema": "gpb-theta/1".
 */
using json = nlohmann::json;

inline constexpr const char* kSchema = "gpb-theta/1";

class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline json to_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

inline json to_json(const RationalField&, const mpq_class& x) { return to_json(x); }
inline json to_json(const PrimeField&, const Residue& x) { return x.value(); }

template <Field F>
typename F::value_type element_from_json(const F& field, const json& j) {
    if (j.is_number_integer()) return field.from_int(j.get<long long>());
    if (!j.is_string()) throw FormatError("field element must be an integer or a string");
    const std::string s = j.get<std::string>();
    if constexpr (std::is_same_v<F, RationalField>) {
        try {
            return field.parse(s);
        } catch (const std::exception&) {
            throw FormatError("malformed rational '" + s + "'");
        }
    } else {
        try {
            std::size_t used = 0;
            long long n = std::stoll(s, &used);
            if (used != s.size()) throw FormatError("");
            return field.from_int(n);
        } catch (const std::exception&) {
            throw FormatError("malformed residue '" + s + "'");
        }
    }
}

template <Field F>
json to_json(const F& field, const std::vector<typename F::value_type>& xs) {
    json out = json::array();
    for (const auto& x : xs) out.push_back(to_json(field, x));
    return out;
}

template <Field F>
std::vector<typename F::value_type> vector_from_json(const F& field, const json& j) {
    if (!j.is_array()) throw FormatError("expected an array of field elements");
    std::vector<typename F::value_type> out;
    for (const auto& x : j) out.push_back(element_from_json(field, x));
    return out;
}

template <Field F>
json to_json(const Matrix<F>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m.field(), m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Rows of a matrix. An empty array needs the column count from context.
template <Field F>
Matrix<F> matrix_from_json(const F& field, const json& j, std::size_t cols) {
    if (!j.is_array()) throw FormatError("matrix must be an array of rows");
    Matrix<F> m(field, j.size(), cols);
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw FormatError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = element_from_json(field, j[i][c]);
    }
    return m;
}

inline json to_json(const SplitBundle& b) { return b.splitting_type(); }

inline SplitBundle bundle_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw FormatError("splitting type must be a nonempty integer array");
    try {
        return SplitBundle(j.get<std::vector<int>>());
    } catch (const json::exception&) {
        throw FormatError("splitting type must contain integers");
    }
}

template <Field F>
json pairs_to_json(const MarkedLine<F>& line) {
    json pairs = json::array();
    for (const auto& [a, b] : line.pairs()) pairs.push_back({to_json(line.field(), a), to_json(line.field(), b)});
    return pairs;
}

template <Field F>
json to_json(const MarkedLine<F>& line) {
    return {{"field", line.field().spec()}, {"pairs", pairs_to_json(line)}};
}

template <Field F>
MarkedLine<F> line_from_json(const F& field, const json& pairs) {
    if (!pairs.is_array()) throw FormatError("pairs must be an array of [a, b]");
    std::vector<typename MarkedLine<F>::Pair> out;
    for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) throw FormatError("each pair must be [a, b]");
        out.emplace_back(element_from_json(field, p[0]), element_from_json(field, p[1]));
    }
    return MarkedLine<F>(field, std::move(out));
}

template <Field F>
json to_json(const GpbStructure<F>& s) {
    json data = json::array();
    for (const auto& m : s.subspaces()) data.push_back(to_json(m));
    return {{"kind", "subspaces"}, {"data", std::move(data)}};
}

template <Field F>
GpbStructure<F> structure_from_json(const F& field, const json& j, std::size_t rank) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("data")) throw FormatError("structure needs kind and data");
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<Matrix<F>> mats;
    if (kind == "graphs") {
        for (const auto& m : j.at("data")) mats.push_back(matrix_from_json(field, m, rank));
        for (const auto& m : mats)
            if (m.rows() != rank) throw FormatError("glue matrices must be square of size rank");
        return graph_to_subspace(TypeBGlue<F>(std::move(mats)));
    }
    if (kind == "subspaces") {
        for (const auto& m : j.at("data")) mats.push_back(matrix_from_json(field, m, 2 * rank));
        return GpbStructure<F>(std::move(mats));
    }
    throw FormatError("unknown structure kind '" + kind + "'");
}

/// Type-B GPBs are written in graph form, others as subspaces.
template <Field F>
json to_json(const Gpb<F>& v) {
    json structure;
    if (classify_type(v) == GpbType::B) {
        const TypeBGlue<F> glue = glue_of(v);
        json data = json::array();
        for (const auto& a : glue.matrices()) data.push_back(to_json(a));
        structure = {{"kind", "graphs"}, {"data", std::move(data)}};
    } else {
        structure = to_json(v.structure());
    }
    return {{"schema", kSchema},
            {"field", v.field().spec()},
            {"splitting_type", to_json(v.bundle())},
            {"pairs", pairs_to_json(v.line())},
            {"structure", std::move(structure)}};
}

inline FieldSpec field_of(const json& j) {
    if (!j.is_object() || !j.contains("field")) throw FormatError("document has no field");
    return FieldSpec::parse(j.at("field").get<std::string>());
}

template <Field F>
Gpb<F> gpb_from_json(const F& field, const json& j) {
    if (!j.is_object()) throw FormatError("GPB must be a JSON object");
    for (const char* key : {"splitting_type", "pairs", "structure"})
        if (!j.contains(key)) throw FormatError(std::string("GPB is missing '") + key + "'");
    if (j.contains("field") && FieldSpec::parse(j.at("field").get<std::string>()).str() != field.spec())
        throw FormatError("GPB field does not match");
    SplitBundle b = bundle_from_json(j.at("splitting_type"));
    MarkedLine<F> line = line_from_json(field, j.at("pairs"));
    GpbStructure<F> s = structure_from_json(field, j.at("structure"), b.rank());
    return Gpb<F>(std::move(b), std::move(line), std::move(s));
}

/// entries[j][k] = ascending coefficients of the (j, k) entry.
template <Field F>
json to_json(const PolyMatrixHom<F>& f) {
    json rows = json::array();
    for (std::size_t j = 0; j < f.target().rank(); ++j) {
        json row = json::array();
        for (std::size_t k = 0; k < f.source().rank(); ++k) row.push_back(to_json(f.field(), f.entry(j, k).coeffs()));
        rows.push_back(std::move(row));
    }
    return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"entries", std::move(rows)}};
}

template <Field F>
PolyMatrixHom<F> hom_from_json(const F& field, const json& j) {
    SplitBundle src = bundle_from_json(j.at("source"));
    SplitBundle tgt = bundle_from_json(j.at("target"));
    const json& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != tgt.rank()) throw FormatError("entries must have one row per target summand");
    std::vector<UniPoly<F>> entries;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != src.rank()) throw FormatError("entry row has the wrong length");
        for (const auto& e : row) entries.emplace_back(field, vector_from_json(field, e));
    }
    return PolyMatrixHom<F>(field, std::move(src), std::move(tgt), std::move(entries));
}

inline mpq_class rational_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    return RationalField{}.parse(j.get<std::string>());
}

template <Field F>
json to_json(const SubGpbCertificate<F>& c) {
    json induced = json::array();
    for (const auto& m : c.induced.subspaces()) induced.push_back(to_json(m));
    return {{"schema", kSchema},
            {"field", c.inclusion.field().spec()},
            {"inclusion", to_json(c.inclusion)},
            {"induced", std::move(induced)},
            {"claimed_slope", to_json(c.claimed_slope)}};
}

template <Field F>
SubGpbCertificate<F> certificate_from_json(const F& field, const json& j) {
    PolyMatrixHom<F> f = hom_from_json(field, j.at("inclusion"));
    std::vector<Matrix<F>> induced;
    for (const auto& m : j.at("induced")) induced.push_back(matrix_from_json(field, m, 2 * f.source().rank()));
    return {std::move(f), GpbStructure<F>(std::move(induced)), rational_from_json(j.at("claimed_slope"))};
}

template <Field F>
json to_json(const StabilityVerdict<F>& v) {
    json out = {{"status", to_string(v.status)},
                {"method", v.method},
                {"window", {v.window.lo, v.window.hi}},
                {"domain", v.domain}};
    if (!v.note.empty()) out["note"] = v.note;
    out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
    return out;
}

template <Field F>
json to_json(const MultiPoly<F>& p) {
    json vars = json::array();
    for (std::size_t i = 0; i < p.variables(); ++i) vars.push_back("lambda" + std::to_string(i + 1));
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({e, to_json(p.field(), c)});
    return {{"variables", std::move(vars)}, {"terms", std::move(terms)}};
}

template <Field F>
MultiPoly<F> multipoly_from_json(const F& field, const json& j) {
    MultiPoly<F> p(field, j.at("variables").size());
    for (const auto& t : j.at("terms")) p.add_term(t.at(0).get<std::vector<unsigned>>(), element_from_json(field, t.at(1)));
    return p;
}

template <Field F>
json to_json(const ThetaPolynomial<F>& t) {
    json factors = json::array();
    for (const auto& u : t.factors) factors.push_back(to_json(u.field(), u.coeffs()));
    json out = to_json(t.expanded);
    out["factors"] = std::move(factors);
    return out;
}

template <Field F>
json to_json(const ThetaLineSpec<F>& l, const F& field) {
    return {{"lambda", to_json(field, l.lambda)}, {"degree", l.degree}};
}

inline json to_json(const DescentInvariants& d) {
    return {{"rank", d.rank},
            {"degree_on_X", d.degree_on_X},
            {"euler_char_X", d.euler_char_X},
            {"euler_char_rr", d.euler_char_rr},
            {"locally_free", d.locally_free}};
}

inline json to_json(const VanishingReport& r) {
    return {{"d", r.d},
            {"bound", r.bound},
            {"ok", r.ok},
            {"nonvanishing_contains_pair", r.nonvanishing_contains_pair},
            {"pairs_all_or_nothing", r.pairs_all_or_nothing},
            {"factored_slope", to_json(r.factored_slope)}};
}

template <Field F>
json to_json(const ThetaTranscript<F>& t, const Gpb<F>& v) {
    json vanishing = json::array();
    for (const auto& r : t.vanishing) vanishing.push_back(to_json(r));
    return {{"schema", kSchema},
            {"instance", to_json(v)},
            {"line_bundle", to_json(t.line_bundle, v.field())},
            {"hom_dim", t.hom_dimension},
            {"product_value", to_json(v.field(), t.product_value)},
            {"invariants", to_json(t.invariants)},
            {"degree_convention", t.invariants.locally_free ? "deg of the underlying bundle"
                                                            : "GPB degree minus g*r"},
            {"stability", to_string(t.stability)},
            {"vanishing", std::move(vanishing)},
            {"verified", t.verified}};
}

}  // namespace gpbtheta

#endif  // GPBTHETA_SERIALIZATION_HPP
