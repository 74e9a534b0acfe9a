#pragma once

/// @file symdet.hpp
/// @brief Exact symbolic determinants for the structured multiplier matrices.
///
/// Works with two families of n x n matrices over the letters a_2..a_n (one
/// per subdiagonal crossing) and h_11..h_nn:
///   - the bare multiplier matrix M with M[i][j] = a_{j+2}...a_{i+1} below the
///     diagonal and 1 elsewhere (0-based indices, 1-based letter names), and
///   - the pair A[i][j] = M[i][j]*h_ij, B[i][j] = M[j][i]*h_ij.
/// Determinants are expanded permutation by permutation, never divided, so
/// every identity is checked term-exactly. A numeric cross-check substitutes
/// integers and compares plain integer determinants.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "zel/errors.hpp"
#include "zel/matrix.hpp"

namespace zel::sym {

using VarId = int;

/// Subdiagonal letter at 0-based row r (1 <= r <= 6); prints as a_{r+1,r} in
/// 1-based naming.
inline VarId a_var(std::size_t r) { return static_cast<VarId>(r); }

inline VarId h_var(std::size_t i, std::size_t j) {
    return static_cast<VarId>(100 + 10 * i + j);
}

inline std::string var_name(VarId id) {
    if (id < 100) return "a" + std::to_string(id + 1) + std::to_string(id);
    std::size_t i = (id - 100) / 10, j = (id - 100) % 10;
    return "h" + std::to_string(i + 1) + std::to_string(j + 1);
}

struct Monomial {
    long long coeff = 0;
    std::vector<std::pair<VarId, int>> powers; ///< sorted by id, exponents > 0

    bool operator==(const Monomial&) const = default;
};

inline Monomial mono_one() { return {1, {}}; }

inline Monomial mono_var(VarId id) { return {1, {{id, 1}}}; }

inline Monomial mono_mul(const Monomial& x, const Monomial& y) {
    Monomial r;
    r.coeff = x.coeff * y.coeff;
    if (r.coeff == 0) return {0, {}};
    // merge the two sorted exponent tables
    std::size_t i = 0, j = 0;
    while (i < x.powers.size() || j < y.powers.size()) {
        if (j == y.powers.size() || (i < x.powers.size() && x.powers[i].first < y.powers[j].first))
            r.powers.push_back(x.powers[i++]);
        else if (i == x.powers.size() || y.powers[j].first < x.powers[i].first)
            r.powers.push_back(y.powers[j++]);
        else {
            r.powers.emplace_back(x.powers[i].first, x.powers[i].second + y.powers[j].second);
            ++i, ++j;
        }
    }
    return r;
}

inline std::string mono_str(const Monomial& m) {
    std::string s = (m.coeff < 0 ? "-" : "+");
    long long c = m.coeff < 0 ? -m.coeff : m.coeff;
    if (c != 1 || m.powers.empty()) s += std::to_string(c);
    for (auto& [id, e] : m.powers) {
        if (s.size() > 1) s += "*";
        s += var_name(id);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

struct SymPolynomial {
    std::vector<Monomial> terms; ///< sorted by exponent table, coefficients nonzero

    bool operator==(const SymPolynomial&) const = default;
    bool is_zero() const { return terms.empty(); }
};

inline SymPolynomial normalize(std::vector<Monomial> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Monomial& x, const Monomial& y) { return x.powers < y.powers; });
    SymPolynomial p;
    for (auto& m : raw) {
        if (m.coeff == 0) continue;
        if (!p.terms.empty() && p.terms.back().powers == m.powers) {
            p.terms.back().coeff += m.coeff;
            if (p.terms.back().coeff == 0) p.terms.pop_back();
        } else {
            p.terms.push_back(std::move(m));
        }
    }
    return p;
}

struct SymMatrix {
    std::size_t n = 0;
    std::vector<Monomial> entries; ///< row-major, each entry a single monomial

    const Monomial& at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

inline SymMatrix transpose(const SymMatrix& m) {
    SymMatrix t{m.n, std::vector<Monomial>(m.n * m.n)};
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j) t.entries[j * m.n + i] = m.at(i, j);
    return t;
}

namespace detail {

inline void require_n(std::size_t n) {
    if (n < 2 || n > 7) throw SizeOutOfRange("symbolic expansion is bounded to 2 <= n <= 7");
}

/// Product of the subdiagonal letters crossed between rows q and p; 1 when
/// p <= q. Shared by every matrix builder.
inline Monomial crossing_multiplier(std::size_t p, std::size_t q) {
    Monomial m = mono_one();
    for (std::size_t l = q + 1; l <= p; ++l) m = mono_mul(m, mono_var(a_var(l)));
    return m;
}

inline int perm_sign(const std::vector<std::size_t>& sigma) {
    int inv = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        for (std::size_t j = i + 1; j < sigma.size(); ++j)
            if (sigma[i] > sigma[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

inline std::vector<std::size_t> perm_inverse(const std::vector<std::size_t>& sigma) {
    std::vector<std::size_t> inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
    return inv;
}

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
        f(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

} // namespace detail

/// Bare multiplier matrix: 1 on and above the diagonal, single letters on the
/// first subdiagonal, their running products further down.
inline SymMatrix build_multiplier_pattern(std::size_t n) {
    detail::require_n(n);
    SymMatrix m{n, {}};
    m.entries.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.entries.push_back(detail::crossing_multiplier(i, j));
    return m;
}

/// The pair (A, B): both carry generic h letters everywhere; A multiplies the
/// below-diagonal entries by the crossing products, B the above-diagonal ones
/// by the transposed products.
inline std::pair<SymMatrix, SymMatrix> build_mirrored_pair(std::size_t n) {
    detail::require_n(n);
    SymMatrix a{n, std::vector<Monomial>(n * n)};
    SymMatrix b{n, std::vector<Monomial>(n * n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto h = mono_var(h_var(i, j));
            a.entries[i * n + j] = mono_mul(detail::crossing_multiplier(i, j), h);
            b.entries[i * n + j] = mono_mul(detail::crossing_multiplier(j, i), h);
        }
    return {std::move(a), std::move(b)};
}

/// Signed product of the entries selected by the permutation.
inline Monomial perm_term(const std::vector<std::size_t>& sigma, const SymMatrix& m) {
    Monomial t = mono_one();
    for (std::size_t i = 0; i < sigma.size(); ++i) t = mono_mul(t, m.at(i, sigma[i]));
    t.coeff *= detail::perm_sign(sigma);
    return t;
}

inline SymPolynomial det_sym(const SymMatrix& m) {
    std::vector<Monomial> terms;
    detail::for_each_permutation(m.n, [&](const std::vector<std::size_t>& sigma) {
        terms.push_back(perm_term(sigma, m));
    });
    return normalize(std::move(terms));
}

/// Every permutation term of the bare multiplier matrix is invariant under
/// inverting the permutation and under transposing the matrix.
inline bool check_term_symmetry(std::size_t n) {
    detail::require_n(n);
    auto m = build_multiplier_pattern(n);
    auto mt = transpose(m);
    bool ok = true;
    detail::for_each_permutation(n, [&](const std::vector<std::size_t>& sigma) {
        auto t = perm_term(sigma, m);
        ok = ok && t == perm_term(detail::perm_inverse(sigma), m) && t == perm_term(sigma, mt);
    });
    return ok;
}

/// A and B have identical permutation terms, hence identical determinants.
inline bool check_mirrored_det(std::size_t n) {
    detail::require_n(n);
    auto [a, b] = build_mirrored_pair(n);
    bool ok = true;
    detail::for_each_permutation(n, [&](const std::vector<std::size_t>& sigma) {
        ok = ok && perm_term(sigma, a) == perm_term(sigma, b);
    });
    return ok && det_sym(a) == det_sym(b);
}

inline boost::multiprecision::cpp_int eval_monomial(
    const Monomial& m, const std::map<VarId, boost::multiprecision::cpp_int>& assign) {
    boost::multiprecision::cpp_int v = m.coeff;
    for (auto& [id, e] : m.powers) {
        auto it = assign.find(id);
        if (it == assign.end()) throw MalformedInput("unassigned variable " + var_name(id));
        for (int k = 0; k < e; ++k) v *= it->second;
    }
    return v;
}

/// Substitutes pseudorandom integers in [-9, 9] for every letter and compares
/// the two integer determinants; independent of the symbolic engine.
inline bool mirrored_det_numeric_crosscheck(std::size_t n, std::uint64_t seed) {
    detail::require_n(n);
    auto [a, b] = build_mirrored_pair(n);
    std::mt19937_64 rng(seed);
    std::map<VarId, boost::multiprecision::cpp_int> assign;
    for (std::size_t r = 1; r < n; ++r)
        assign[a_var(r)] = boost::multiprecision::cpp_int(static_cast<long long>(rng() % 19) - 9);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            assign[h_var(i, j)] =
                boost::multiprecision::cpp_int(static_cast<long long>(rng() % 19) - 9);
    IntegerDomain dom;
    DomainMatrix<IntegerDomain> na(dom, n), nb(dom, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            na.at(i, j) = eval_monomial(a.at(i, j), assign);
            nb.at(i, j) = eval_monomial(b.at(i, j), assign);
        }
    return det_over_domain(dom, na) == det_over_domain(dom, nb);
}

} // namespace zel::sym
