#pragma once

/// @file zelisko.hpp
/// @brief The Zelisko group of a diagonal divisor chain Phi over R_m.
///
/// G_Phi is the set of invertible H for which H*Phi = Phi*S has an invertible
/// solution S. Membership has an entrywise characterization: H is invertible
/// and each equation phi_i * s = phi_j * H[i][j] is solvable. Structured
/// members expose the cofactor table h with H[i][j] = multiplier(i,j) * h[i][j]
/// below the diagonal, and the transposed-multiplier witness S built from the
/// same cofactors satisfies H*Phi = Phi*S with det(S) = det(H).
///
/// The oracle at the bottom of this header decides membership by exhaustive
/// search only (entry scans plus enumeration of candidate S), so it shares no
/// reasoning with the characterization above.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "zel/errors.hpp"
#include "zel/matrix.hpp"

namespace zel {

enum class ChainCase {
    UnitsChainZeros, ///< unit block, chain block and zero block all present
    ChainZeros,      ///< no unit block
    ChainOnly,       ///< chain block fills the diagonal
    UnitsChain,      ///< no zero block
    UnitsZeros       ///< empty chain: diag(1,...,1,0,...,0)
};

inline std::string chain_case_label(ChainCase c) {
    switch (c) {
        case ChainCase::UnitsChainZeros: return "units+chain+zeros";
        case ChainCase::ChainZeros: return "chain+zeros";
        case ChainCase::ChainOnly: return "chain-only";
        case ChainCase::UnitsChain: return "units+chain";
        case ChainCase::UnitsZeros: return "units+zeros";
    }
    return "?";
}

struct BlockProfile {
    ChainCase tag;
    std::size_t n = 0;
    std::size_t ones = 0;  ///< rows of the leading unit block
    std::size_t chain = 0; ///< rows of the chain block
    std::size_t zeros = 0; ///< rows of the trailing zero block
};

template <EuclideanDomain D>
BlockProfile block_profile(const DivisorChain<D>& phi) {
    BlockProfile p;
    p.n = phi.size();
    p.ones = phi.ones_count();
    p.chain = phi.chain_length();
    p.zeros = phi.zeros_count();
    if (p.chain == 0)
        p.tag = ChainCase::UnitsZeros;
    else if (p.ones > 0 && p.zeros > 0)
        p.tag = ChainCase::UnitsChainZeros;
    else if (p.ones == 0 && p.zeros > 0)
        p.tag = ChainCase::ChainZeros;
    else if (p.ones == 0)
        p.tag = ChainCase::ChainOnly;
    else
        p.tag = ChainCase::UnitsChain;
    return p;
}

namespace detail {

template <EuclideanDomain D>
void require_compatible(const ResidueMatrix<D>& h, const DivisorChain<D>& phi) {
    if (!(h.ring() == phi.ring()))
        throw ModulusMismatch("matrix over " + h.ring().describe() + " against a chain over " +
                              phi.ring().describe());
    if (h.size() != phi.size()) throw DimensionMismatch();
}

} // namespace detail

/// Entrywise membership test: H invertible and phi_i * s = phi_j * H[i][j]
/// solvable for every position. The entry checks run first: they are much
/// cheaper than the determinant and reject most non-members.
template <EuclideanDomain D>
bool is_member(const ResidueMatrix<D>& h, const DivisorChain<D>& phi) {
    detail::require_compatible(h, phi);
    const auto& dom = h.ring().domain();
    const auto& m = h.ring().modulus();
    const std::size_t n = h.size();
    const std::size_t ones = phi.ones_count();
    const std::size_t chain_end = ones + phi.chain_length();
    for (std::size_t i = ones; i < n; ++i) {
        // gcd(phi_i, m); rows of the unit block constrain nothing.
        auto mu_i = dom.gcd(phi.diag_at(i).rep(), m);
        for (std::size_t j = 0; j < n; ++j) {
            if (j >= chain_end) continue; // phi_j = 0 makes the right side 0
            auto rhs = dom.mul(phi.diag_at(j).rep(), h.rep_at(i, j));
            if (!dom.divides(mu_i, dom.gcd(rhs, m))) return false;
        }
    }
    return is_invertible(h);
}

struct StructureRejection {
    enum class Kind { NotInvertible, ZeroBlock, Divisibility };
    Kind kind;
    std::size_t row = 0, col = 0;
    std::string block; ///< "H21", "H22", "H31", "H32" by block position

    std::string describe() const {
        switch (kind) {
            case Kind::NotInvertible: return "determinant is not a unit";
            case Kind::ZeroBlock:
                return "entry (" + std::to_string(row) + "," + std::to_string(col) + ") in block " +
                       block + " must be zero";
            case Kind::Divisibility:
                return "entry (" + std::to_string(row) + "," + std::to_string(col) + ") in block " +
                       block + " is not divisible by its multiplier";
        }
        return "?";
    }
};

template <EuclideanDomain D>
struct StructuredMember {
    ResidueMatrix<D> h;         ///< the member itself
    BlockProfile profile;
    ResidueMatrix<D> cofactors; ///< h-table: entries with the multipliers divided out
    ResidueMatrix<D> witness;   ///< S with H*Phi = Phi*S and det(S) = det(H)
};

namespace detail {

template <EuclideanDomain D>
std::string block_label(const DivisorChain<D>& phi, std::size_t i, std::size_t j) {
    auto region = [&](std::size_t r) {
        if (r < phi.ones_count()) return '1';
        if (r < phi.ones_count() + phi.chain_length()) return '2';
        return '3';
    };
    return std::string("H") + region(i) + region(j);
}

/// Shared structural conditions; on failure fills `rej` and returns false.
/// Invertibility is checked by the callers so the sweep can order the tests.
template <EuclideanDomain D>
bool structure_entries_ok(const ResidueMatrix<D>& h, const DivisorChain<D>& phi,
                          StructureRejection* rej) {
    const std::size_t n = h.size();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            auto mult = phi.below_multiplier(i, j);
            if (mult.is_zero()) {
                if (!phi.ring().domain().is_zero(h.rep_at(i, j))) {
                    if (rej) *rej = {StructureRejection::Kind::ZeroBlock, i, j, block_label(phi, i, j)};
                    return false;
                }
            } else if (!divides(mult, h.at(i, j))) {
                if (rej) *rej = {StructureRejection::Kind::Divisibility, i, j, block_label(phi, i, j)};
                return false;
            }
        }
    return true;
}

template <EuclideanDomain D>
ResidueMatrix<D> witness_from_cofactors(const ResidueMatrix<D>& cof, const DivisorChain<D>& phi) {
    const std::size_t n = cof.size();
    ResidueMatrix<D> s(cof.ring(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i >= j)
                s.set_rep(i, j, cof.rep_at(i, j));
            else
                s.set(i, j, phi.below_multiplier(j, i) * cof.at(i, j));
        }
    return s;
}

} // namespace detail

/// Fast structural membership predicate, equivalent to check_structure
/// succeeding. Entry conditions before the determinant, as in is_member.
template <EuclideanDomain D>
bool structure_accepts(const ResidueMatrix<D>& h, const DivisorChain<D>& phi) {
    detail::require_compatible(h, phi);
    return detail::structure_entries_ok(h, phi, nullptr) && is_invertible(h);
}

/// Full structural decomposition: extracts the cofactor table and builds the
/// witness, or reports why H is not a structured member.
template <EuclideanDomain D>
std::variant<StructuredMember<D>, StructureRejection> check_structure(const ResidueMatrix<D>& h,
                                                                      const DivisorChain<D>& phi) {
    detail::require_compatible(h, phi);
    if (!is_invertible(h))
        return StructureRejection{StructureRejection::Kind::NotInvertible, 0, 0, ""};
    StructureRejection rej;
    if (!detail::structure_entries_ok(h, phi, &rej)) return rej;

    const std::size_t n = h.size();
    ResidueMatrix<D> cof(h.ring(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i <= j) {
                cof.set_rep(i, j, h.rep_at(i, j));
                continue;
            }
            auto mult = phi.below_multiplier(i, j);
            if (mult.is_zero())
                cof.set(i, j, h.ring().zero());
            else
                cof.set(i, j, generating_solution(mult, h.at(i, j)));
        }
    auto witness = detail::witness_from_cofactors(cof, phi);
    return StructuredMember<D>{h, block_profile(phi), std::move(cof), std::move(witness)};
}

/// Rebuilds the witness S of a structured member from its cofactor table:
/// S[i][j] = cof[i][j] on and below the diagonal, and the transposed crossing
/// multiplier times cof[i][j] above it.
template <EuclideanDomain D>
ResidueMatrix<D> construct_witness(const StructuredMember<D>& sm, const DivisorChain<D>& phi) {
    detail::require_compatible(sm.cofactors, phi);
    return detail::witness_from_cofactors(sm.cofactors, phi);
}

/// Deterministic member sampler: draws a cofactor table with unit diagonal,
/// applies the multipliers, retries until the assembled H is invertible. The
/// unit diagonal keeps the rejection rate low; it narrows the sampled family,
/// never the verification (callers re-check membership independently).
template <EuclideanDomain D>
StructuredMember<D> sample_member(const DivisorChain<D>& phi, std::uint64_t seed,
                                  unsigned max_tries = 64, std::uint64_t rep_bound = 1u << 20) {
    if (max_tries == 0) throw PreconditionViolated("max_tries must be positive");
    const auto& ring = phi.ring();
    const std::size_t n = phi.size();
    std::uint64_t cap = rep_bound;
    if (auto sz = ring.size(); sz && *sz < cap) cap = *sz;
    std::mt19937_64 rng(seed);
    for (unsigned attempt = 0; attempt < max_tries; ++attempt) {
        ResidueMatrix<D> cof(ring, n);
        ResidueMatrix<D> h(ring, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i > j && phi.below_multiplier(i, j).is_zero()) {
                    // forced zero block: cofactor pinned to 0
                    continue;
                }
                auto v = ring.element(rng() % cap);
                if (i == j) {
                    unsigned spins = 0;
                    while (!is_unit_residue(v)) {
                        if (++spins > 4096)
                            throw SamplingExhausted("no unit found for a diagonal draw");
                        v = ring.element(rng() % cap);
                    }
                }
                cof.set(i, j, v);
                if (i > j)
                    h.set(i, j, phi.below_multiplier(i, j) * v);
                else
                    h.set(i, j, v);
            }
        if (is_invertible(h)) {
            auto witness = detail::witness_from_cofactors(cof, phi);
            return StructuredMember<D>{std::move(h), block_profile(phi), std::move(cof),
                                       std::move(witness)};
        }
    }
    throw SamplingExhausted("no invertible sample in " + std::to_string(max_tries) + " tries");
}

// ---------------------------------------------------------------------------
// Exhaustive oracle.

/// Finite ring presented as operation tables, built by plain enumeration.
/// Index 0 is the zero element and index 1 is the one element.
template <EuclideanDomain D>
struct FiniteRingTable {
    std::uint32_t size = 0;
    std::vector<typename D::Elem> elems;
    std::vector<std::uint32_t> add, mul; ///< size*size, row-major
    std::vector<std::uint32_t> negt;
    std::vector<std::uint8_t> unit; ///< by scan: u is a unit iff some u*v == 1

    std::uint32_t index_of(const typename D::Elem& rep) const {
        auto it = idx_.find(rep);
        if (it == idx_.end()) throw MalformedInput("representative not in the enumeration");
        return it->second;
    }

    static FiniteRingTable build(const ResidueRing<D>& ring, std::uint64_t max_size = 1024) {
        auto count = ring.size();
        if (!count || *count > max_size)
            throw RingTooLarge(ring.describe() + " is too large for table form");
        FiniteRingTable t;
        t.size = static_cast<std::uint32_t>(*count);
        t.elems.reserve(t.size);
        for (std::uint32_t k = 0; k < t.size; ++k) {
            t.elems.push_back(ring.element(k).rep());
            t.idx_.emplace(t.elems.back(), k);
        }
        t.add.resize(std::size_t(t.size) * t.size);
        t.mul.resize(std::size_t(t.size) * t.size);
        t.negt.resize(t.size);
        for (std::uint32_t i = 0; i < t.size; ++i) {
            auto ri = ring.reduce(t.elems[i]);
            t.negt[i] = t.index_of((-ri).rep());
            for (std::uint32_t j = 0; j < t.size; ++j) {
                auto rj = ring.reduce(t.elems[j]);
                t.add[std::size_t(i) * t.size + j] = t.index_of((ri + rj).rep());
                t.mul[std::size_t(i) * t.size + j] = t.index_of((ri * rj).rep());
            }
        }
        t.unit.assign(t.size, 0);
        for (std::uint32_t u = 0; u < t.size; ++u)
            for (std::uint32_t v = 0; v < t.size; ++v)
                if (t.mul[std::size_t(u) * t.size + v] == 1) { t.unit[u] = 1; break; }
        return t;
    }

private:
    std::map<typename D::Elem, std::uint32_t> idx_;
};

namespace detail {

template <EuclideanDomain D>
std::uint32_t det_idx(const FiniteRingTable<D>& t, const std::vector<std::uint32_t>& a,
                      std::size_t n) {
    const auto sz = t.size;
    auto mul = [&](std::uint32_t x, std::uint32_t y) { return t.mul[std::size_t(x) * sz + y]; };
    auto add = [&](std::uint32_t x, std::uint32_t y) { return t.add[std::size_t(x) * sz + y]; };
    if (n == 1) return a[0];
    if (n == 2) return add(mul(a[0], a[3]), t.negt[mul(a[1], a[2])]);
    std::vector<std::uint32_t> minor((n - 1) * (n - 1));
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (a[c] == 0) continue;
        std::size_t w = 0;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) minor[w++] = a[i * n + j];
        auto term = mul(a[c], det_idx(t, minor, n - 1));
        acc = add(acc, c % 2 == 0 ? term : t.negt[term]);
    }
    return acc;
}

} // namespace detail

/// Shared state for oracle calls against one chain.
template <EuclideanDomain D>
struct OracleContext {
    FiniteRingTable<D> table;
    std::vector<std::uint32_t> phi_idx;

    static OracleContext build(const DivisorChain<D>& phi, std::uint64_t max_ring = 1024) {
        OracleContext ctx{FiniteRingTable<D>::build(phi.ring(), max_ring), {}};
        for (std::size_t i = 0; i < phi.size(); ++i)
            ctx.phi_idx.push_back(ctx.table.index_of(phi.diag_at(i).rep()));
        return ctx;
    }
};

namespace detail {

/// Membership by brute force on an index matrix: scan candidate values for
/// every entry of S, then enumerate all combinations until one gives an
/// invertible S.
template <EuclideanDomain D>
bool oracle_member_indexed(const OracleContext<D>& ctx, const std::vector<std::uint32_t>& h_idx,
                           std::size_t n, std::uint64_t combo_bound) {
    const auto& t = ctx.table;
    const auto sz = t.size;
    if (!t.unit[det_idx(t, h_idx, n)]) return false;

    std::vector<std::vector<std::uint32_t>> cand(n * n);
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto target = t.mul[std::size_t(ctx.phi_idx[j]) * sz + h_idx[i * n + j]];
            auto& c = cand[i * n + j];
            for (std::uint32_t s = 0; s < sz; ++s)
                if (t.mul[std::size_t(ctx.phi_idx[i]) * sz + s] == target) c.push_back(s);
            if (c.empty()) return false;
            if (combos > combo_bound / c.size())
                throw RingTooLarge("candidate witness space exceeds the oracle bound");
            combos *= c.size();
        }

    std::vector<std::size_t> pick(n * n, 0);
    std::vector<std::uint32_t> s_idx(n * n);
    for (std::size_t p = 0; p < n * n; ++p) s_idx[p] = cand[p][0];
    for (;;) {
        if (t.unit[det_idx(t, s_idx, n)]) return true;
        std::size_t p = 0;
        while (p < n * n && pick[p] + 1 == cand[p].size()) {
            pick[p] = 0;
            s_idx[p] = cand[p][0];
            ++p;
        }
        if (p == n * n) return false;
        ++pick[p];
        s_idx[p] = cand[p][pick[p]];
    }
}

} // namespace detail

/// Decides membership by exhaustive search; independent of the entrywise
/// characterization. Refuses rings whose candidate space exceeds the bound.
template <EuclideanDomain D>
bool oracle_is_member(const ResidueMatrix<D>& h, const DivisorChain<D>& phi,
                      std::uint64_t combo_bound = 1000000) {
    detail::require_compatible(h, phi);
    auto ctx = OracleContext<D>::build(phi);
    const std::size_t n = h.size();
    std::vector<std::uint32_t> h_idx(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h_idx[i * n + j] = ctx.table.index_of(h.rep_at(i, j));
    return detail::oracle_member_indexed(ctx, h_idx, n, combo_bound);
}

/// Same, against a prebuilt context (for sweeps).
template <EuclideanDomain D>
bool oracle_is_member(const OracleContext<D>& ctx, const ResidueMatrix<D>& h,
                      std::uint64_t combo_bound = 1000000) {
    const std::size_t n = h.size();
    std::vector<std::uint32_t> h_idx(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h_idx[i * n + j] = ctx.table.index_of(h.rep_at(i, j));
    return detail::oracle_member_indexed(ctx, h_idx, n, combo_bound);
}

/// Visits every n x n matrix over the ring in a fixed order (entry (0,0)
/// varies fastest). The callback receives the matrix and its enumeration
/// index. Throws if the space exceeds `space_bound`.
template <EuclideanDomain D, class F>
void for_each_matrix(const ResidueRing<D>& ring, std::size_t n, std::uint64_t space_bound, F&& f) {
    auto count = ring.size();
    if (!count) throw RingTooLarge(ring.describe() + " is not finite enough to enumerate");
    const std::uint64_t sz = *count;
    std::uint64_t space = 1;
    for (std::size_t p = 0; p < n * n; ++p) {
        if (space > space_bound / sz)
            throw RingTooLarge("matrix space exceeds the enumeration bound");
        space *= sz;
    }
    std::vector<typename D::Elem> elems;
    elems.reserve(sz);
    for (std::uint64_t k = 0; k < sz; ++k) elems.push_back(ring.element(k).rep());

    std::vector<std::uint32_t> digits(n * n, 0);
    ResidueMatrix<D> scratch(ring, n);
    for (std::uint64_t idx = 0;; ++idx) {
        f(static_cast<const ResidueMatrix<D>&>(scratch), idx);
        std::size_t p = 0;
        while (p < n * n && digits[p] + 1 == sz) {
            digits[p] = 0;
            scratch.set_rep(p / n, p % n, elems[0]);
            ++p;
        }
        if (p == n * n) break;
        ++digits[p];
        scratch.set_rep(p / n, p % n, elems[digits[p]]);
    }
}

/// Streams every oracle-certified member of G_Phi. Bounded to tiny rings.
template <EuclideanDomain D>
void enumerate_members(const DivisorChain<D>& phi,
                       const std::function<void(const ResidueMatrix<D>&)>& sink,
                       std::uint64_t combo_bound = 1000000) {
    const std::size_t n = phi.size();
    if (n > 3) throw SizeOutOfRange("member enumeration is bounded to n <= 3");
    auto count = phi.ring().size();
    if (!count || *count > 12)
        throw RingTooLarge("member enumeration is bounded to rings with at most 12 elements");
    auto ctx = OracleContext<D>::build(phi);
    std::vector<std::uint32_t> h_idx(n * n);
    for_each_matrix(phi.ring(), n, std::uint64_t(1) << 62,
                    [&](const ResidueMatrix<D>& h, std::uint64_t) {
                        for (std::size_t i = 0; i < n; ++i)
                            for (std::size_t j = 0; j < n; ++j)
                                h_idx[i * n + j] = ctx.table.index_of(h.rep_at(i, j));
                        if (detail::oracle_member_indexed(ctx, h_idx, n, combo_bound)) sink(h);
                    });
}

} // namespace zel
