#pragma once

/// @file matrix.hpp
/// @brief Square matrices over R_m and over the underlying domain.
///
/// Residue-matrix determinants are computed on lifted representatives in the
/// domain (cofactor expansion up to 4x4, fraction-free elimination beyond)
/// and reduced once; determinant commutes with reduction, and this keeps the
/// hot enumeration paths cheap. The divisor-chain diagonal carries its fixed
/// adjacent-quotient and annihilator tables so every derived multiplier is
/// reproducible.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zel/errors.hpp"
#include "zel/linsolve.hpp"
#include "zel/residue.hpp"

namespace zel {

template <EuclideanDomain D>
struct DomainMatrix {
    using Elem = typename D::Elem;

    std::size_t n = 0;
    std::vector<Elem> a; ///< row-major, size n*n

    DomainMatrix() = default;
    DomainMatrix(const D& dom, std::size_t size) : n(size), a(size * size, dom.zero()) {}

    const Elem& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    Elem& at(std::size_t i, std::size_t j) { return a[i * n + j]; }

    friend bool operator==(const DomainMatrix& x, const DomainMatrix& y) = default;
};

template <EuclideanDomain D>
DomainMatrix<D> domain_identity(const D& dom, std::size_t n) {
    DomainMatrix<D> m(dom, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = dom.one();
    return m;
}

template <EuclideanDomain D>
DomainMatrix<D> domain_mat_mul(const D& dom, const DomainMatrix<D>& x, const DomainMatrix<D>& y) {
    if (x.n != y.n) throw DimensionMismatch();
    DomainMatrix<D> r(dom, x.n);
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t k = 0; k < x.n; ++k) {
            if (dom.is_zero(x.at(i, k))) continue;
            for (std::size_t j = 0; j < x.n; ++j)
                r.at(i, j) = dom.add(r.at(i, j), dom.mul(x.at(i, k), y.at(k, j)));
        }
    return r;
}

namespace detail {

template <EuclideanDomain D>
typename D::Elem det_cofactor(const D& dom, const std::vector<typename D::Elem>& a, std::size_t n) {
    if (n == 1) return a[0];
    if (n == 2) return dom.sub(dom.mul(a[0], a[3]), dom.mul(a[1], a[2]));
    std::vector<typename D::Elem> minor((n - 1) * (n - 1), dom.zero());
    typename D::Elem acc = dom.zero();
    for (std::size_t c = 0; c < n; ++c) {
        if (dom.is_zero(a[c])) continue;
        std::size_t w = 0;
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != c) minor[w++] = a[i * n + j];
        auto term = dom.mul(a[c], det_cofactor(dom, minor, n - 1));
        acc = (c % 2 == 0) ? dom.add(acc, term) : dom.sub(acc, term);
    }
    return acc;
}

template <EuclideanDomain D>
typename D::Elem det_bareiss(const D& dom, std::vector<typename D::Elem> a, std::size_t n) {
    bool negate = false;
    typename D::Elem prev = dom.one();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (dom.is_zero(a[k * n + k])) {
            std::size_t r = k + 1;
            while (r < n && dom.is_zero(a[r * n + k])) ++r;
            if (r == n) return dom.zero();
            for (std::size_t j = k; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto num = dom.sub(dom.mul(a[k * n + k], a[i * n + j]),
                                   dom.mul(a[i * n + k], a[k * n + j]));
                a[i * n + j] = dom.exact_div(num, prev);
            }
            a[i * n + k] = dom.zero();
        }
        prev = a[k * n + k];
    }
    auto det = a[n * n - 1];
    return negate ? dom.neg(det) : det;
}

} // namespace detail

/// Determinant over the domain itself.
template <EuclideanDomain D>
typename D::Elem det_over_domain(const D& dom, const DomainMatrix<D>& m) {
    if (m.n == 0) throw SizeOutOfRange("empty matrix has no determinant here");
    if (m.n <= 4) return detail::det_cofactor(dom, m.a, m.n);
    return detail::det_bareiss(dom, m.a, m.n);
}

template <EuclideanDomain D>
class ResidueMatrix {
public:
    using Elem = typename D::Elem;

    ResidueMatrix(const ResidueRing<D>& ring, std::size_t n)
        : ring_(ring), n_(n), a_(n * n, ring.domain().zero()) {
        if (n == 0) throw SizeOutOfRange("matrices must have size >= 1");
    }

    static ResidueMatrix identity(const ResidueRing<D>& ring, std::size_t n) {
        ResidueMatrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = ring.domain().one();
        return m;
    }

    const ResidueRing<D>& ring() const { return ring_; }
    std::size_t size() const { return n_; }

    Residue<D> at(std::size_t i, std::size_t j) const { return ring_.reduce(rep_at(i, j)); }
    const Elem& rep_at(std::size_t i, std::size_t j) const { return a_[index(i, j)]; }

    void set(std::size_t i, std::size_t j, const Residue<D>& v) {
        if (!(v.ring() == ring_))
            throw ModulusMismatch("entry from " + v.ring().describe() + " in a matrix over " + ring_.describe());
        a_[index(i, j)] = v.rep();
    }

    void set_reduced(std::size_t i, std::size_t j, const Elem& raw) {
        a_[index(i, j)] = ring_.reduce(raw).rep();
    }

    /// Caller guarantees the value is already a canonical representative.
    void set_rep(std::size_t i, std::size_t j, const Elem& rep) { a_[index(i, j)] = rep; }

    const std::vector<Elem>& reps() const { return a_; }

    friend bool operator==(const ResidueMatrix& x, const ResidueMatrix& y) {
        return x.ring_ == y.ring_ && x.n_ == y.n_ && x.a_ == y.a_;
    }

private:
    std::size_t index(std::size_t i, std::size_t j) const {
        if (i >= n_ || j >= n_) throw IndexOutOfRange("matrix index out of range");
        return i * n_ + j;
    }

    ResidueRing<D> ring_;
    std::size_t n_;
    std::vector<Elem> a_;
};

template <EuclideanDomain D>
Residue<D> det(const ResidueMatrix<D>& m) {
    const auto& dom = m.ring().domain();
    if (m.size() <= 4) return m.ring().reduce(detail::det_cofactor(dom, m.reps(), m.size()));
    return m.ring().reduce(detail::det_bareiss(dom, m.reps(), m.size()));
}

template <EuclideanDomain D>
bool is_invertible(const ResidueMatrix<D>& m) {
    return is_unit_residue(det(m));
}

template <EuclideanDomain D>
ResidueMatrix<D> mat_mul(const ResidueMatrix<D>& x, const ResidueMatrix<D>& y) {
    if (!(x.ring() == y.ring()))
        throw ModulusMismatch("multiplying matrices over different rings");
    if (x.size() != y.size()) throw DimensionMismatch();
    const auto& dom = x.ring().domain();
    const std::size_t n = x.size();
    ResidueMatrix<D> r(x.ring(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto acc = dom.zero();
            for (std::size_t k = 0; k < n; ++k)
                acc = dom.add(acc, dom.mul(x.rep_at(i, k), y.rep_at(k, j)));
            r.set_reduced(i, j, acc);
        }
    return r;
}

/// Adjugate, so adjugate(m) * m == det(m) * I.
template <EuclideanDomain D>
ResidueMatrix<D> adjugate(const ResidueMatrix<D>& m) {
    const auto& dom = m.ring().domain();
    const std::size_t n = m.size();
    ResidueMatrix<D> r(m.ring(), n);
    if (n == 1) {
        r.set_reduced(0, 0, dom.one());
        return r;
    }
    std::vector<typename D::Elem> minor((n - 1) * (n - 1), dom.zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t w = 0;
            for (std::size_t r2 = 0; r2 < n; ++r2) {
                if (r2 == j) continue;
                for (std::size_t c2 = 0; c2 < n; ++c2)
                    if (c2 != i) minor[w++] = m.rep_at(r2, c2);
            }
            auto cof = detail::det_cofactor(dom, minor, n - 1);
            if ((i + j) % 2 == 1) cof = dom.neg(cof);
            r.set_reduced(i, j, cof);
        }
    return r;
}

template <EuclideanDomain D>
ResidueMatrix<D> inverse(const ResidueMatrix<D>& m) {
    auto dm = det(m);
    if (!is_unit_residue(dm))
        throw NotInvertible("determinant " + dm.str() + " is not a unit of " + m.ring().describe());
    auto inv_det = invert_unit(dm);
    auto adj = adjugate(m);
    const std::size_t n = m.size();
    ResidueMatrix<D> r(m.ring(), n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.set(i, j, adj.at(i, j) * inv_det);
    return r;
}

// ---------------------------------------------------------------------------
// Smith normal form over the domain.

template <EuclideanDomain D>
struct SmithResult {
    DomainMatrix<D> u, d, v; ///< u * input * v == d, u and v unimodular
};

/// Diagonalizes a with unimodular row and column transforms; the diagonal is
/// a canonical divisor chain d0 | d1 | ... with zeros last.
template <EuclideanDomain D>
SmithResult<D> smith_normal_form(const D& dom, DomainMatrix<D> a) {
    const std::size_t n = a.n;
    if (n == 0) throw SizeOutOfRange("empty matrix");
    auto u = domain_identity(dom, n);
    auto v = domain_identity(dom, n);

    auto swap_rows = [&](std::size_t r1, std::size_t r2) {
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a.at(r1, j), a.at(r2, j));
            std::swap(u.at(r1, j), u.at(r2, j));
        }
    };
    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(a.at(i, c1), a.at(i, c2));
            std::swap(v.at(i, c1), v.at(i, c2));
        }
    };
    // Rows r1, r2 <- (x*r1 + y*r2, -b/g*r1 + a/g*r2); determinant 1.
    auto combine_rows = [&](std::size_t r1, std::size_t r2, const typename D::Elem& x,
                            const typename D::Elem& y, const typename D::Elem& p,
                            const typename D::Elem& q) {
        for (std::size_t j = 0; j < n; ++j) {
            auto t1 = dom.add(dom.mul(x, a.at(r1, j)), dom.mul(y, a.at(r2, j)));
            auto t2 = dom.add(dom.mul(p, a.at(r1, j)), dom.mul(q, a.at(r2, j)));
            a.at(r1, j) = std::move(t1);
            a.at(r2, j) = std::move(t2);
            t1 = dom.add(dom.mul(x, u.at(r1, j)), dom.mul(y, u.at(r2, j)));
            t2 = dom.add(dom.mul(p, u.at(r1, j)), dom.mul(q, u.at(r2, j)));
            u.at(r1, j) = std::move(t1);
            u.at(r2, j) = std::move(t2);
        }
    };
    auto combine_cols = [&](std::size_t c1, std::size_t c2, const typename D::Elem& x,
                            const typename D::Elem& y, const typename D::Elem& p,
                            const typename D::Elem& q) {
        for (std::size_t i = 0; i < n; ++i) {
            auto t1 = dom.add(dom.mul(x, a.at(i, c1)), dom.mul(y, a.at(i, c2)));
            auto t2 = dom.add(dom.mul(p, a.at(i, c1)), dom.mul(q, a.at(i, c2)));
            a.at(i, c1) = std::move(t1);
            a.at(i, c2) = std::move(t2);
            t1 = dom.add(dom.mul(x, v.at(i, c1)), dom.mul(y, v.at(i, c2)));
            t2 = dom.add(dom.mul(p, v.at(i, c1)), dom.mul(q, v.at(i, c2)));
            v.at(i, c1) = std::move(t1);
            v.at(i, c2) = std::move(t2);
        }
    };
    auto scale_add_row = [&](std::size_t dst, std::size_t src, const typename D::Elem& c) {
        for (std::size_t j = 0; j < n; ++j) {
            a.at(dst, j) = dom.add(a.at(dst, j), dom.mul(c, a.at(src, j)));
            u.at(dst, j) = dom.add(u.at(dst, j), dom.mul(c, u.at(src, j)));
        }
    };
    auto scale_add_col = [&](std::size_t dst, std::size_t src, const typename D::Elem& c) {
        for (std::size_t i = 0; i < n; ++i) {
            a.at(i, dst) = dom.add(a.at(i, dst), dom.mul(c, a.at(i, src)));
            v.at(i, dst) = dom.add(v.at(i, dst), dom.mul(c, v.at(i, src)));
        }
    };

    for (std::size_t s = 0; s < n; ++s) {
        // Move a nonzero entry of the trailing submatrix to the pivot.
        std::size_t pr = n, pc = n;
        for (std::size_t i = s; i < n && pr == n; ++i)
            for (std::size_t j = s; j < n; ++j)
                if (!dom.is_zero(a.at(i, j))) { pr = i; pc = j; break; }
        if (pr == n) break; // all zero, done
        if (pr != s) swap_rows(s, pr);
        if (pc != s) swap_cols(s, pc);

        for (bool dirty = true; dirty;) {
            dirty = false;
            // When the pivot divides the entry, eliminate without touching the
            // pivot row or column; the general combine may rewrite row s (its
            // cofactors need not be (1, 0) even when g equals the pivot, e.g.
            // for an entry equal to the pivot), so reserving it for entries
            // the pivot does not divide makes every combine shrink the pivot
            // strictly and bounds the number of sweeps.
            for (std::size_t i = s + 1; i < n; ++i) {
                if (dom.is_zero(a.at(i, s))) continue;
                if (dom.divides(a.at(s, s), a.at(i, s))) {
                    scale_add_row(i, s, dom.neg(dom.exact_div(a.at(i, s), a.at(s, s))));
                } else {
                    auto [g, x, y] = dom.ext_gcd(a.at(s, s), a.at(i, s));
                    auto p = dom.neg(dom.exact_div(a.at(i, s), g));
                    auto q = dom.exact_div(a.at(s, s), g);
                    combine_rows(s, i, x, y, p, q);
                }
                dirty = true;
            }
            for (std::size_t j = s + 1; j < n; ++j) {
                if (dom.is_zero(a.at(s, j))) continue;
                if (dom.divides(a.at(s, s), a.at(s, j))) {
                    scale_add_col(j, s, dom.neg(dom.exact_div(a.at(s, j), a.at(s, s))));
                } else {
                    auto [g, x, y] = dom.ext_gcd(a.at(s, s), a.at(s, j));
                    auto p = dom.neg(dom.exact_div(a.at(s, j), g));
                    auto q = dom.exact_div(a.at(s, s), g);
                    combine_cols(s, j, x, y, p, q);
                }
                dirty = true;
            }
            if (!dirty) {
                // Pivot must divide the whole trailing submatrix.
                for (std::size_t i = s + 1; i < n && !dirty; ++i)
                    for (std::size_t j = s + 1; j < n; ++j)
                        if (!dom.divides(a.at(s, s), a.at(i, j))) {
                            scale_add_row(s, i, dom.one());
                            dirty = true;
                            break;
                        }
            }
        }
    }

    // Canonicalize the diagonal; fold each unit factor into u.
    for (std::size_t s = 0; s < n; ++s) {
        auto [canon, unit] = dom.canonical_associate(a.at(s, s));
        if (!(unit == dom.one())) {
            auto inv = dom.exact_div(dom.one(), unit);
            a.at(s, s) = std::move(canon);
            for (std::size_t j = 0; j < n; ++j) u.at(s, j) = dom.mul(inv, u.at(s, j));
        }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

// ---------------------------------------------------------------------------
// Diagonal divisor chains (the matrix Phi).

/// Diagonal of the shape (1, ..., 1, c_0, ..., c_{L-1}, 0, ..., 0) where each
/// c_i is a nonzero non-unit and c_i | c_{i+1} in R_m. Carries the pinned
/// adjacent quotients, the matched annihilator generators of the chain part,
/// and the full table of below-diagonal crossing multipliers.
template <EuclideanDomain D>
class DivisorChain {
public:
    using Elem = typename D::Elem;

    const ResidueRing<D>& ring() const { return ring_; }
    std::size_t size() const { return n_; }
    std::size_t ones_count() const { return ones_; }
    std::size_t chain_length() const { return chain_.size(); }
    std::size_t zeros_count() const { return n_ - ones_ - chain_.size(); }

    /// Units recorded from the input diagonal before normalization to 1.
    const std::vector<Elem>& recorded_units() const { return lead_units_; }

    /// Diagonal value at 0-based position i.
    Residue<D> diag_at(std::size_t i) const {
        if (i >= n_) throw IndexOutOfRange("diagonal position out of range");
        if (i < ones_) return ring_.one();
        if (i < ones_ + chain_.size()) return ring_.reduce(chain_[i - ones_]);
        return ring_.zero();
    }

    /// Pinned generating solution of diag[i] * x = diag[i+1] for adjacent
    /// chain positions ones() <= i < ones() + len - 1.
    Residue<D> adjacent_quotient(std::size_t i) const {
        if (i < ones_ || i + 1 >= ones_ + chain_.size())
            throw IndexOutOfRange("adjacent quotient index outside the chain");
        return ring_.reduce(adj_quot_[i - ones_]);
    }

    /// Matched annihilator generator of the chain value at position i.
    Residue<D> chain_ann_at(std::size_t i) const {
        if (i < ones_ || i >= ones_ + chain_.size())
            throw IndexOutOfRange("annihilator index outside the chain");
        return ring_.reduce(unit_ann_[i - ones_]);
    }

    /// Crossing multiplier for a below-diagonal position (i, j), i > j: the
    /// product of the per-level factors between j and i. Constrained entries
    /// of a structured member are exactly multiplier * cofactor.
    Residue<D> below_multiplier(std::size_t i, std::size_t j) const {
        if (j >= i || i >= n_) throw IndexOutOfRange("below-diagonal position required");
        return ring_.reduce(mult_[i * n_ + j]);
    }

    ResidueMatrix<D> diag_matrix() const {
        ResidueMatrix<D> m(ring_, n_);
        for (std::size_t i = 0; i < n_; ++i) m.set(i, i, diag_at(i));
        return m;
    }

    std::vector<Elem> diagonal_reps() const {
        std::vector<Elem> out;
        out.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) out.push_back(diag_at(i).rep());
        return out;
    }

private:
    template <EuclideanDomain E>
    friend DivisorChain<E> build_divisor_chain(const ResidueRing<E>&,
                                               const std::vector<typename E::Elem>&);

    DivisorChain(const ResidueRing<D>& ring, std::size_t n) : ring_(ring), n_(n) {}

    ResidueRing<D> ring_;
    std::size_t n_;
    std::size_t ones_ = 0;
    std::vector<Elem> chain_;
    std::vector<Elem> adj_quot_;
    std::vector<Elem> unit_ann_;
    std::vector<Elem> lead_units_;
    std::vector<Elem> mult_; ///< n*n row-major, meaningful only for i > j
};

template <EuclideanDomain D>
DivisorChain<D> build_divisor_chain(const ResidueRing<D>& ring,
                                    const std::vector<typename D::Elem>& raw_diag) {
    const auto& dom = ring.domain();
    const std::size_t n = raw_diag.size();
    if (n == 0) throw SizeOutOfRange("diagonal must have at least one entry");
    DivisorChain<D> phi(ring, n);

    std::vector<Residue<D>> diag;
    diag.reserve(n);
    for (const auto& e : raw_diag) diag.push_back(ring.reduce(e));

    std::size_t i = 0;
    while (i < n && is_unit_residue(diag[i]) && !diag[i].is_zero()) {
        phi.lead_units_.push_back(diag[i].rep());
        ++i;
    }
    phi.ones_ = i;
    while (i < n && !diag[i].is_zero()) {
        if (is_unit_residue(diag[i]))
            throw MalformedChain("unit at position " + std::to_string(i) + " after the chain started");
        if (!phi.chain_.empty()) {
            auto prev = ring.reduce(phi.chain_.back());
            if (!divides(prev, diag[i]))
                throw MalformedChain("chain value at position " + std::to_string(i) +
                                     " is not divisible by its predecessor");
        }
        phi.chain_.push_back(diag[i].rep());
        ++i;
    }
    for (std::size_t z = i; z < n; ++z)
        if (!diag[z].is_zero())
            throw MalformedChain("nonzero value at position " + std::to_string(z) +
                                 " after the zero block started");

    const std::size_t len = phi.chain_.size();
    for (std::size_t c = 0; c + 1 < len; ++c)
        phi.adj_quot_.push_back(
            generating_solution(ring.reduce(phi.chain_[c]), ring.reduce(phi.chain_[c + 1])).rep());
    for (std::size_t c = 0; c < len; ++c)
        phi.unit_ann_.push_back(unit_ann_generator(ring.reduce(phi.chain_[c])).rep());

    // Per-level crossing factors g[l], l = 1..n-1, for moving from row l-1 to
    // row l; below-diagonal multipliers are suffix products of these.
    const std::size_t ones = phi.ones_;
    std::vector<Residue<D>> g(n, ring.one());
    for (std::size_t l = 1; l < n; ++l) {
        if (len == 0) {
            if (l == ones) g[l] = ring.zero();
        } else if (l == ones) {
            g[l] = ring.reduce(phi.chain_.front());
        } else if (l > ones && l < ones + len) {
            g[l] = ring.reduce(phi.adj_quot_[l - ones - 1]);
        } else if (l == ones + len) {
            g[l] = ring.reduce(phi.unit_ann_.back());
        }
    }
    phi.mult_.assign(n * n, dom.zero());
    for (std::size_t r = 1; r < n; ++r) {
        auto acc = ring.one();
        for (std::size_t j = r; j-- > 0;) {
            acc = acc * g[j + 1];
            phi.mult_[r * n + j] = acc.rep();
        }
    }
    return phi;
}

/// Composite quotient from diagonal position q up to p (both inside the chain
/// block, q < p): the product of the pinned adjacent quotients between them.
template <EuclideanDomain D>
Residue<D> chain_quotient(const DivisorChain<D>& phi, std::size_t p, std::size_t q) {
    const std::size_t lo = phi.ones_count();
    const std::size_t hi = phi.ones_count() + phi.chain_length();
    if (!(lo <= q && q < p && p < hi))
        throw IndexOutOfRange("quotient endpoints must lie inside the chain block");
    auto acc = phi.ring().one();
    for (std::size_t l = q; l < p; ++l) acc = acc * phi.adjacent_quotient(l);
    return acc;
}

/// Reads off a divisor chain from any matrix over the domain: reduce the
/// Smith diagonal mod m and validate the pattern.
template <EuclideanDomain D>
DivisorChain<D> divisor_chain_from_matrix(const ResidueRing<D>& ring, const DomainMatrix<D>& a) {
    auto snf = smith_normal_form(ring.domain(), a);
    std::vector<typename D::Elem> diag;
    diag.reserve(a.n);
    for (std::size_t i = 0; i < a.n; ++i) diag.push_back(snf.d.at(i, i));
    return build_divisor_chain(ring, diag);
}

} // namespace zel
