#pragma once

/// @file json_io.hpp
/// @brief JSON encoding of ring elements, residues, matrices and chains.
///
/// Integer elements are emitted as JSON numbers while they fit a double
/// exactly (|v| < 2^53) and as decimal strings beyond that; readers accept
/// both. Polynomial elements are coefficient arrays, low degree first, with
/// the field prime carried as "p" next to the modulus. Object layouts:
///   residue  {"rep": e, "mod": e}
///   matrix   {"mod": e, "n": N, "rows": [[e, ...], ...]}
///   chain    {"mod": e, "diag": [e, ...]}
/// Key order in dumps is alphabetical, so output is deterministic.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zel/errors.hpp"
#include "zel/matrix.hpp"

namespace zel {

using nlohmann::json;

inline json element_to_json(const IntegerDomain&, const IntegerDomain::Elem& v) {
    static const IntegerDomain::Elem safe = IntegerDomain::Elem(1) << 53;
    if (v > -safe && v < safe) return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

inline IntegerDomain::Elem element_from_json(const IntegerDomain& dom, const json& j) {
    if (j.is_number_integer() || j.is_number_unsigned())
        return IntegerDomain::Elem(j.get<std::int64_t>());
    if (j.is_string()) return dom.parse(j.get<std::string>());
    throw MalformedInput("expected an integer or a decimal string, got " + j.dump());
}

inline json element_to_json(const PolyDomain&, const PolyDomain::Elem& v) {
    json arr = json::array();
    for (auto c : v) arr.push_back(c);
    return arr;
}

inline PolyDomain::Elem element_from_json(const PolyDomain& dom, const json& j) {
    if (!j.is_array()) throw MalformedInput("expected a coefficient array, got " + j.dump());
    PolyDomain::Elem v;
    for (const auto& c : j) {
        if (!c.is_number_integer() && !c.is_number_unsigned())
            throw MalformedInput("polynomial coefficients must be integers");
        auto raw = c.get<std::int64_t>();
        if (raw < 0 || raw >= static_cast<std::int64_t>(dom.characteristic()))
            throw MalformedInput("coefficient out of range for F_" +
                                 std::to_string(dom.characteristic()));
        v.push_back(static_cast<std::uint32_t>(raw));
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

inline void tag_domain(const IntegerDomain&, json&) {}
inline void tag_domain(const PolyDomain& dom, json& j) { j["p"] = dom.characteristic(); }

inline bool is_poly_json(const json& j) { return j.is_object() && j.contains("p"); }

inline std::uint32_t prime_from_json(const json& j) {
    if (!j.contains("p") || (!j["p"].is_number_integer() && !j["p"].is_number_unsigned()))
        throw MalformedInput("missing or non-integer field \"p\"");
    auto raw = j["p"].get<std::int64_t>();
    if (raw < 2 || raw > 0x7fffffff) throw MalformedInput("field \"p\" out of range");
    return static_cast<std::uint32_t>(raw);
}

namespace detail {

inline const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw MalformedInput(std::string("missing field \"") + name + "\"");
    return j[name];
}

} // namespace detail

template <EuclideanDomain D>
ResidueRing<D> ring_from_json(const D& dom, const json& j) {
    return ResidueRing<D>(dom, element_from_json(dom, detail::field(j, "mod")));
}

template <EuclideanDomain D>
json residue_to_json(const Residue<D>& r) {
    json j;
    j["rep"] = element_to_json(r.ring().domain(), r.rep());
    j["mod"] = element_to_json(r.ring().domain(), r.ring().modulus());
    tag_domain(r.ring().domain(), j);
    return j;
}

template <EuclideanDomain D>
Residue<D> residue_from_json(const D& dom, const json& j) {
    auto ring = ring_from_json(dom, j);
    return ring.reduce(element_from_json(dom, detail::field(j, "rep")));
}

template <EuclideanDomain D>
json matrix_to_json(const ResidueMatrix<D>& m) {
    const auto& dom = m.ring().domain();
    json j;
    j["mod"] = element_to_json(dom, m.ring().modulus());
    j["n"] = m.size();
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t jj = 0; jj < m.size(); ++jj)
            row.push_back(element_to_json(dom, m.rep_at(i, jj)));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    tag_domain(dom, j);
    return j;
}

template <EuclideanDomain D>
ResidueMatrix<D> matrix_from_json(const D& dom, const json& j) {
    auto ring = ring_from_json(dom, j);
    const auto& nf = detail::field(j, "n");
    if (!nf.is_number_integer() && !nf.is_number_unsigned())
        throw MalformedInput("field \"n\" must be an integer");
    auto n = nf.get<std::int64_t>();
    if (n < 1 || n > 64) throw MalformedInput("field \"n\" out of range");
    const auto& rows = detail::field(j, "rows");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
        throw MalformedInput("field \"rows\" must hold exactly n rows");
    ResidueMatrix<D> m(ring, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != m.size())
            throw MalformedInput("row " + std::to_string(i) + " must hold exactly n entries");
        for (std::size_t jj = 0; jj < m.size(); ++jj)
            m.set(i, jj, ring.reduce(element_from_json(dom, row[jj])));
    }
    return m;
}

template <EuclideanDomain D>
json chain_to_json(const DivisorChain<D>& phi) {
    const auto& dom = phi.ring().domain();
    json j;
    j["mod"] = element_to_json(dom, phi.ring().modulus());
    json diag = json::array();
    for (std::size_t i = 0; i < phi.size(); ++i)
        diag.push_back(element_to_json(dom, phi.diag_at(i).rep()));
    j["diag"] = std::move(diag);
    tag_domain(dom, j);
    return j;
}

template <EuclideanDomain D>
DivisorChain<D> chain_from_json(const D& dom, const json& j) {
    auto ring = ring_from_json(dom, j);
    const auto& diag = detail::field(j, "diag");
    if (!diag.is_array() || diag.empty())
        throw MalformedInput("field \"diag\" must be a non-empty array");
    std::vector<typename D::Elem> entries;
    for (const auto& d : diag) entries.push_back(element_from_json(dom, d));
    return build_divisor_chain(ring, entries);
}

inline json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw MalformedInput("invalid JSON");
    return j;
}

} // namespace zel
