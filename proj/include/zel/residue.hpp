#pragma once

/// @file residue.hpp
/// @brief Residue rings R_m over a Euclidean domain and their elements.
///
/// Representatives are always canonical (the remainder of Euclidean division
/// by the canonical modulus), so equality is representative equality. Every
/// cross-ring operation checks that both operands carry the same ring.

#include <cstdint>
#include <optional>
#include <utility>

#include "zel/errors.hpp"
#include "zel/euclid.hpp"

namespace zel {

template <EuclideanDomain D> class Residue;

template <EuclideanDomain D>
class ResidueRing {
public:
    using Elem = typename D::Elem;

    /// The modulus is canonicalized; it must be nonzero and not a unit.
    ResidueRing(D dom, Elem modulus) : dom_(std::move(dom)) {
        m_ = dom_.canonical_associate(modulus).first;
        if (dom_.is_zero(m_) || dom_.is_unit(m_))
            throw InvalidModulus("modulus " + dom_.to_string(modulus) + " is zero or a unit");
    }

    const D& domain() const { return dom_; }
    const Elem& modulus() const { return m_; }

    Residue<D> reduce(const Elem& c) const {
        return Residue<D>(*this, dom_.divmod(c, m_).second);
    }

    Residue<D> zero() const { return Residue<D>(*this, dom_.zero()); }
    Residue<D> one() const { return Residue<D>(*this, dom_.one()); }

    /// Number of residues, if it fits in 64 bits.
    std::optional<std::uint64_t> size() const { return dom_.residue_count(m_); }

    /// k-th residue in the domain's enumeration order; requires k < size().
    Residue<D> element(std::uint64_t k) const {
        auto n = size();
        if (n && k >= *n) throw IndexOutOfRange("residue index " + std::to_string(k) + " out of range");
        return reduce(dom_.nth(k));
    }

    std::string describe() const { return dom_.name() + "/(" + dom_.to_string(m_) + ")"; }

    friend bool operator==(const ResidueRing& a, const ResidueRing& b) {
        return a.dom_ == b.dom_ && a.m_ == b.m_;
    }

private:
    D dom_;
    Elem m_;
};

template <EuclideanDomain D>
class Residue {
public:
    using Elem = typename D::Elem;

    const ResidueRing<D>& ring() const { return ring_; }
    const Elem& rep() const { return rep_; }
    bool is_zero() const { return ring_.domain().is_zero(rep_); }

    friend Residue operator+(const Residue& a, const Residue& b) {
        a.check_ring(b);
        return a.ring_.reduce(a.dom().add(a.rep_, b.rep_));
    }
    friend Residue operator-(const Residue& a, const Residue& b) {
        a.check_ring(b);
        return a.ring_.reduce(a.dom().sub(a.rep_, b.rep_));
    }
    friend Residue operator*(const Residue& a, const Residue& b) {
        a.check_ring(b);
        return a.ring_.reduce(a.dom().mul(a.rep_, b.rep_));
    }
    Residue operator-() const { return ring_.reduce(dom().neg(rep_)); }

    friend bool operator==(const Residue& a, const Residue& b) {
        a.check_ring(b);
        return a.rep_ == b.rep_;
    }

    std::string str() const { return dom().to_string(rep_); }

private:
    friend class ResidueRing<D>;
    Residue(const ResidueRing<D>& ring, Elem rep) : ring_(ring), rep_(std::move(rep)) {}

    const D& dom() const { return ring_.domain(); }

    void check_ring(const Residue& other) const {
        if (!(ring_ == other.ring_))
            throw ModulusMismatch("mixing " + ring_.describe() + " with " + other.ring_.describe());
    }

    ResidueRing<D> ring_;
    Elem rep_;
};

template <EuclideanDomain D>
bool is_unit_residue(const Residue<D>& a) {
    const auto& d = a.ring().domain();
    return d.is_unit(d.gcd(a.rep(), a.ring().modulus()));
}

template <EuclideanDomain D>
Residue<D> invert_unit(const Residue<D>& a) {
    const auto& d = a.ring().domain();
    auto [g, u, v] = d.ext_gcd(a.rep(), a.ring().modulus());
    if (!d.is_unit(g))
        throw NotAUnit(a.str() + " is not a unit of " + a.ring().describe());
    // g is a unit of the domain, not necessarily 1: fold it into u.
    if (!(g == d.one())) u = d.exact_div(u, g);
    return a.ring().reduce(u);
}

template <EuclideanDomain D>
struct UnitDecomposition {
    typename D::Elem mu; ///< canonical gcd of the representative with the modulus
    Residue<D> e;        ///< unit cofactor: mu * e == c in the ring
};

/// Writes c as mu * e with mu = gcd(rep, m) canonical and e a unit.
/// The unit is pinned: with c = mu * c0, e is c0 + t*(m/mu) for the first t
/// (in the domain enumeration order) that makes the result coprime to m.
/// unit_decompose(0) gives (m, 1).
template <EuclideanDomain D>
UnitDecomposition<D> unit_decompose(const Residue<D>& c) {
    const auto& ring = c.ring();
    const auto& d = ring.domain();
    const auto& m = ring.modulus();
    typename D::Elem mu = d.gcd(c.rep(), m);
    typename D::Elem c0 = d.exact_div(c.rep(), mu);
    typename D::Elem step = d.exact_div(m, mu);
    for (std::uint64_t t = 0;; ++t) {
        auto cand = ring.reduce(d.add(c0, d.mul(d.nth(t), step)));
        if (d.is_unit(d.gcd(cand.rep(), m)))
            return {std::move(mu), std::move(cand)};
    }
}

/// Divisibility in R_m: a | b iff gcd(a, m) | gcd(b, m) in the domain.
template <EuclideanDomain D>
bool divides(const Residue<D>& a, const Residue<D>& b) {
    if (!(a.ring() == b.ring()))
        throw ModulusMismatch("mixing " + a.ring().describe() + " with " + b.ring().describe());
    const auto& d = a.ring().domain();
    const auto& m = a.ring().modulus();
    return d.divides(d.gcd(a.rep(), m), d.gcd(b.rep(), m));
}

template <EuclideanDomain D>
bool associates(const Residue<D>& a, const Residue<D>& b) {
    if (!(a.ring() == b.ring()))
        throw ModulusMismatch("mixing " + a.ring().describe() + " with " + b.ring().describe());
    const auto& d = a.ring().domain();
    const auto& m = a.ring().modulus();
    return d.gcd(a.rep(), m) == d.gcd(b.rep(), m);
}

/// Plain generator of the annihilator ideal Ann(c) = { x : c*x = 0 }: m / mu.
template <EuclideanDomain D>
Residue<D> ann_generator(const Residue<D>& c) {
    const auto& d = c.ring().domain();
    typename D::Elem mu = d.gcd(c.rep(), c.ring().modulus());
    return c.ring().reduce(d.exact_div(c.ring().modulus(), mu));
}

/// Annihilator generator matched to the pinned unit decomposition of c:
/// (m / mu) * e^-1 with (mu, e) = unit_decompose(c). Matching the inverse
/// unit makes the generating-solution transfer identities exact, see
/// ann_transfer_check in linsolve.hpp.
template <EuclideanDomain D>
Residue<D> unit_ann_generator(const Residue<D>& c) {
    auto dec = unit_decompose(c);
    return ann_generator(c) * invert_unit(dec.e);
}

} // namespace zel
