#pragma once

/// Brute-force reference implementations for unit tests. Everything here
/// works by exhaustive scan over a finite ring, using only the ring
/// operations, so the library's gcd-based shortcuts are tested against
/// definition-level arithmetic.

#include <set>
#include <vector>

#include "zel/residue.hpp"

namespace zel::testing {

template <EuclideanDomain D>
std::vector<Residue<D>> all_elements(const ResidueRing<D>& ring) {
    std::vector<Residue<D>> out;
    for (std::uint64_t k = 0; k < *ring.size(); ++k) out.push_back(ring.element(k));
    return out;
}

template <EuclideanDomain D>
std::set<typename D::Elem> brute_solutions(const Residue<D>& a, const Residue<D>& b) {
    std::set<typename D::Elem> out;
    for (const auto& x : all_elements(a.ring()))
        if (a * x == b) out.insert(x.rep());
    return out;
}

template <EuclideanDomain D>
bool brute_divides(const Residue<D>& a, const Residue<D>& b) {
    return !brute_solutions(a, b).empty();
}

template <EuclideanDomain D>
std::set<typename D::Elem> brute_annihilator(const Residue<D>& c) {
    return brute_solutions(c, c.ring().zero());
}

template <EuclideanDomain D>
std::set<typename D::Elem> brute_units(const ResidueRing<D>& ring) {
    std::set<typename D::Elem> out;
    for (const auto& u : all_elements(ring))
        for (const auto& v : all_elements(ring))
            if (u * v == ring.one()) {
                out.insert(u.rep());
                break;
            }
    return out;
}

/// x generates the solutions of a*y = b iff x is a solution and every
/// solution is a ring multiple of x.
template <EuclideanDomain D>
bool brute_is_generating(const Residue<D>& a, const Residue<D>& b, const Residue<D>& x) {
    auto sols = brute_solutions(a, b);
    if (!sols.count(x.rep())) return false;
    std::set<typename D::Elem> multiples;
    for (const auto& t : all_elements(a.ring())) multiples.insert((x * t).rep());
    for (const auto& s : sols)
        if (!multiples.count(s)) return false;
    return true;
}

} // namespace zel::testing
