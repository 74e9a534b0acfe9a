#pragma once

/// @file linsolve.hpp
/// @brief Generating solutions of a*x = b in a residue ring R_m.
///
/// A generating solution is a solution that divides every solution. The
/// closed form used throughout is (mu_b / mu_a) * e_b * e_a^-1 built from the
/// pinned unit decompositions of a and b, which makes every derived quotient
/// table reproducible.

#include <cstdint>
#include <set>
#include <vector>

#include "zel/errors.hpp"
#include "zel/residue.hpp"

namespace zel {

template <EuclideanDomain D>
bool is_solvable(const Residue<D>& a, const Residue<D>& b) {
    return divides(a, b);
}

/// Pinned generating solution of a*x = b.
/// For a = 0 (then necessarily b = 0) the result is 1: the units are exactly
/// the elements dividing everything, and 1 is the canonical one.
template <EuclideanDomain D>
Residue<D> generating_solution(const Residue<D>& a, const Residue<D>& b) {
    if (!is_solvable(a, b))
        throw Unsolvable(a.str() + "*x = " + b.str() + " has no solution in " + a.ring().describe());
    if (a.is_zero()) return a.ring().one();
    const auto& d = a.ring().domain();
    auto da = unit_decompose(a);
    auto db = unit_decompose(b);
    auto quot = a.ring().reduce(d.exact_div(db.mu, da.mu));
    return quot * db.e * invert_unit(da.e);
}

template <EuclideanDomain D>
struct SolutionCoset {
    Residue<D> base;    ///< pinned generating solution
    Residue<D> ann_gen; ///< plain annihilator generator of a; solutions = base + <ann_gen>
};

template <EuclideanDomain D>
SolutionCoset<D> solution_coset(const Residue<D>& a, const Residue<D>& b) {
    return {generating_solution(a, b), ann_generator(a)};
}

/// Lists the distinct solutions base + t*ann_gen, sorted by representative.
/// Refuses rings larger than `bound`.
template <EuclideanDomain D>
std::vector<Residue<D>> enumerate_solutions(const SolutionCoset<D>& coset,
                                            std::uint64_t bound = 10000) {
    const auto& ring = coset.base.ring();
    auto n = ring.size();
    if (!n || *n > bound)
        throw RingTooLarge(ring.describe() + " exceeds the enumeration bound " + std::to_string(bound));
    std::set<typename D::Elem> seen;
    for (std::uint64_t t = 0; t < *n; ++t)
        seen.insert((coset.base + ring.element(t) * coset.ann_gen).rep());
    std::vector<Residue<D>> out;
    out.reserve(seen.size());
    for (const auto& rep : seen) out.push_back(ring.reduce(rep));
    return out;
}

/// True iff x solves a*x = b and divides every solution. Unsolvable systems
/// yield false rather than an error.
template <EuclideanDomain D>
bool is_generating(const Residue<D>& a, const Residue<D>& b, const Residue<D>& x) {
    if (!is_solvable(a, b)) return false;
    if (!(a * x == b)) return false;
    return associates(x, generating_solution(a, b));
}

/// Product of generating solutions along a divisor chain c1 | c2 | c3:
/// g21 solves c1*x = c2, g32 solves c2*x = c3, and the product solves
/// c1*x = c3 and is again generating.
template <EuclideanDomain D>
Residue<D> compose_generating(const Residue<D>& g21, const Residue<D>& g32) {
    return g21 * g32;
}

/// Checkable transfer identity: with g = generating_solution(c1, c2) and
/// a_i = unit_ann_generator(c_i) from the same pinned decompositions,
/// g * a2 = a1 and g is a generating solution of a2*x = a1.
template <EuclideanDomain D>
bool ann_transfer_check(const Residue<D>& c1, const Residue<D>& c2) {
    if (c1.is_zero() || c2.is_zero())
        throw PreconditionViolated("transfer identity requires nonzero chain elements");
    if (!divides(c1, c2))
        throw PreconditionViolated("transfer identity requires c1 | c2");
    auto g = generating_solution(c1, c2);
    auto a1 = unit_ann_generator(c1);
    auto a2 = unit_ann_generator(c2);
    return g * a2 == a1 && is_generating(a2, a1, g);
}

} // namespace zel
