#pragma once

/// @file euclid.hpp
/// @brief Euclidean domain layer: arbitrary-precision integers and univariate
///        polynomials over a prime field, behind one compile-time interface.
///
/// Everything above this layer (residue rings, linear solving, matrices) is
/// generic over a domain type satisfying the EuclideanDomain concept below.
/// Canonical associates are fixed once and for all: non-negative integers,
/// monic polynomials. gcd results are always canonical.

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zel/errors.hpp"

namespace zel {

template <class D>
concept EuclideanDomain =
    std::equality_comparable<D> &&
    std::regular<typename D::Elem> &&
    requires(const D d, const typename D::Elem a, const typename D::Elem b, std::uint64_t k,
             std::string_view text) {
        { d.zero() } -> std::same_as<typename D::Elem>;
        { d.one() } -> std::same_as<typename D::Elem>;
        { d.add(a, b) } -> std::same_as<typename D::Elem>;
        { d.sub(a, b) } -> std::same_as<typename D::Elem>;
        { d.mul(a, b) } -> std::same_as<typename D::Elem>;
        { d.neg(a) } -> std::same_as<typename D::Elem>;
        { d.is_zero(a) } -> std::same_as<bool>;
        { d.divmod(a, b) } -> std::same_as<std::pair<typename D::Elem, typename D::Elem>>;
        { d.gcd(a, b) } -> std::same_as<typename D::Elem>;
        { d.ext_gcd(a, b) } -> std::same_as<std::tuple<typename D::Elem, typename D::Elem, typename D::Elem>>;
        { d.exact_div(a, b) } -> std::same_as<typename D::Elem>;
        { d.divides(a, b) } -> std::same_as<bool>;
        { d.is_unit(a) } -> std::same_as<bool>;
        { d.canonical_associate(a) } -> std::same_as<std::pair<typename D::Elem, typename D::Elem>>;
        { d.nth(k) } -> std::same_as<typename D::Elem>;
        { d.residue_count(a) } -> std::same_as<std::optional<std::uint64_t>>;
        { d.to_string(a) } -> std::same_as<std::string>;
        { d.parse(text) } -> std::same_as<typename D::Elem>;
        { d.name() } -> std::same_as<std::string>;
    };

/// The rational integers with value type boost::multiprecision::cpp_int.
class IntegerDomain {
public:
    using Elem = boost::multiprecision::cpp_int;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    bool is_zero(const Elem& a) const { return a.is_zero(); }

    /// Euclidean division with canonical remainder 0 <= r < |b|.
    std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
        if (b.is_zero()) throw DivisionByZero();
        Elem q = a / b;
        Elem r = a - q * b;
        if (r < 0) {
            if (b > 0) { r += b; q -= 1; }
            else       { r -= b; q += 1; }
        }
        return {std::move(q), std::move(r)};
    }

    Elem gcd(Elem a, Elem b) const {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (!b.is_zero()) {
            Elem r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    /// Returns (g, u, v) with u*a + v*b = g and g canonical.
    std::tuple<Elem, Elem, Elem> ext_gcd(const Elem& a, const Elem& b) const {
        Elem old_r = a, r = b;
        Elem old_u = 1, u = 0;
        Elem old_v = 0, v = 1;
        while (!r.is_zero()) {
            Elem q = old_r / r; // truncated quotient is fine here
            Elem t;
            t = old_r - q * r; old_r = std::move(r); r = std::move(t);
            t = old_u - q * u; old_u = std::move(u); u = std::move(t);
            t = old_v - q * v; old_v = std::move(v); v = std::move(t);
        }
        if (old_r < 0) { old_r = -old_r; old_u = -old_u; old_v = -old_v; }
        return {std::move(old_r), std::move(old_u), std::move(old_v)};
    }

    Elem exact_div(const Elem& a, const Elem& b) const {
        if (b.is_zero()) throw DivisionByZero();
        Elem q = a / b;
        if (q * b != a) throw NotDivisible(to_string(a) + " is not divisible by " + to_string(b));
        return q;
    }

    bool divides(const Elem& a, const Elem& b) const {
        if (a.is_zero()) return b.is_zero();
        return Elem(b % a).is_zero();
    }

    bool is_unit(const Elem& a) const { return a == 1 || a == -1; }

    /// Returns (c, u) with a = u*c, c canonical (non-negative), u a unit.
    std::pair<Elem, Elem> canonical_associate(const Elem& a) const {
        if (a < 0) return {-a, Elem(-1)};
        return {a, Elem(1)};
    }

    Elem nth(std::uint64_t k) const { return Elem(k); }

    std::optional<std::uint64_t> residue_count(const Elem& m) const {
        Elem c = m < 0 ? Elem(-m) : m;
        if (c.is_zero()) return std::nullopt;
        if (c > Elem(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
        return static_cast<std::uint64_t>(c);
    }

    std::string to_string(const Elem& a) const { return a.str(); }

    Elem parse(std::string_view text) const {
        if (text.empty()) throw MalformedInput("empty integer literal");
        std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
        if (i == text.size()) throw MalformedInput("sign without digits");
        for (std::size_t j = i; j < text.size(); ++j)
            if (text[j] < '0' || text[j] > '9')
                throw MalformedInput("bad integer literal: " + std::string(text));
        return Elem(std::string(text));
    }

    std::string name() const { return "Z"; }

    bool operator==(const IntegerDomain&) const = default;
};

/// Univariate polynomials over the prime field F_p, p prime, p < 2^31.
/// Elements are dense coefficient vectors, lowest degree first, with no
/// trailing zero; the zero polynomial is the empty vector.
class PolyDomain {
public:
    using Elem = std::vector<std::uint32_t>;

    explicit PolyDomain(std::uint32_t p) : p_(p) {
        if (p < 2 || p > 0x7fffffffu || !is_prime(p))
            throw MalformedInput("coefficient modulus must be a prime below 2^31");
    }

    std::uint32_t characteristic() const { return p_; }

    Elem zero() const { return {}; }
    Elem one() const { return {1}; }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint64_t s = (i < a.size() ? a[i] : 0u);
            s += (i < b.size() ? b[i] : 0u);
            r[i] = static_cast<std::uint32_t>(s % p_);
        }
        trim(r);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.empty() || b.empty()) return {};
        Elem r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t s = r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j] % p_;
                r[i + j] = static_cast<std::uint32_t>(s % p_);
            }
        }
        trim(r);
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r(a);
        for (auto& c : r) c = c == 0 ? 0u : p_ - c;
        return r;
    }

    bool is_zero(const Elem& a) const { return a.empty(); }

    std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
        if (b.empty()) throw DivisionByZero();
        if (a.size() < b.size()) return {Elem{}, a};
        Elem rem(a);
        Elem quot(a.size() - b.size() + 1, 0);
        const std::uint32_t lead_inv = inv_mod_p(b.back());
        for (std::size_t sh = a.size() - b.size() + 1; sh-- > 0;) {
            if (rem.size() != b.size() + sh) continue;
            std::uint32_t c = static_cast<std::uint32_t>(
                static_cast<std::uint64_t>(rem.back()) * lead_inv % p_);
            quot[sh] = c;
            if (c != 0) {
                for (std::size_t i = 0; i < b.size(); ++i) {
                    std::uint64_t sub_v = static_cast<std::uint64_t>(b[i]) * c % p_;
                    std::uint64_t cur = rem[i + sh];
                    rem[i + sh] = static_cast<std::uint32_t>((cur + p_ - sub_v) % p_);
                }
            }
            trim(rem);
        }
        trim(quot);
        return {std::move(quot), std::move(rem)};
    }

    Elem gcd(Elem a, Elem b) const {
        while (!b.empty()) {
            Elem r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return canonical_associate(a).first;
    }

    std::tuple<Elem, Elem, Elem> ext_gcd(const Elem& a, const Elem& b) const {
        Elem old_r = a, r = b;
        Elem old_u = one(), u = zero();
        Elem old_v = zero(), v = one();
        while (!r.empty()) {
            auto [q, rem] = divmod(old_r, r);
            old_r = std::move(r); r = std::move(rem);
            Elem t = sub(old_u, mul(q, u)); old_u = std::move(u); u = std::move(t);
            t = sub(old_v, mul(q, v)); old_v = std::move(v); v = std::move(t);
        }
        if (!old_r.empty() && old_r.back() != 1) {
            Elem scale{inv_mod_p(old_r.back())};
            old_r = mul(old_r, scale);
            old_u = mul(old_u, scale);
            old_v = mul(old_v, scale);
        }
        return {std::move(old_r), std::move(old_u), std::move(old_v)};
    }

    Elem exact_div(const Elem& a, const Elem& b) const {
        if (b.empty()) throw DivisionByZero();
        auto [q, r] = divmod(a, b);
        if (!r.empty()) throw NotDivisible(to_string(a) + " is not divisible by " + to_string(b));
        return q;
    }

    bool divides(const Elem& a, const Elem& b) const {
        if (a.empty()) return b.empty();
        return divmod(b, a).second.empty();
    }

    bool is_unit(const Elem& a) const { return a.size() == 1; }

    /// Canonical associate is monic; the unit factor is the leading coefficient.
    std::pair<Elem, Elem> canonical_associate(const Elem& a) const {
        if (a.empty()) return {Elem{}, one()};
        std::uint32_t lc = a.back();
        if (lc == 1) return {a, one()};
        Elem c = mul(a, Elem{inv_mod_p(lc)});
        return {std::move(c), Elem{lc}};
    }

    /// k-th element in the fixed enumeration order: base-p digits of k are the
    /// coefficients, lowest degree first.
    Elem nth(std::uint64_t k) const {
        Elem r;
        while (k > 0) {
            r.push_back(static_cast<std::uint32_t>(k % p_));
            k /= p_;
        }
        return r;
    }

    std::optional<std::uint64_t> residue_count(const Elem& m) const {
        if (m.empty()) return std::nullopt;
        std::uint64_t count = 1;
        for (std::size_t i = 1; i < m.size(); ++i) {
            if (count > std::numeric_limits<std::uint64_t>::max() / p_) return std::nullopt;
            count *= p_;
        }
        return count;
    }

    std::string to_string(const Elem& a) const {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(a[i]);
        }
        return s + "]";
    }

    Elem parse(std::string_view text) const {
        // Accepts the to_string format: "[c0,c1,...]"; "[]" is zero.
        std::size_t i = 0;
        auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
        skip_ws();
        if (i == text.size() || text[i] != '[') throw MalformedInput("polynomial literal must start with '['");
        ++i;
        Elem r;
        skip_ws();
        if (i < text.size() && text[i] == ']') { ++i; }
        else {
            while (true) {
                skip_ws();
                std::uint64_t c = 0;
                bool any = false;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                    c = c * 10 + static_cast<std::uint64_t>(text[i] - '0');
                    if (c > 0xffffffffull) throw MalformedInput("coefficient too large");
                    ++i;
                    any = true;
                }
                if (!any) throw MalformedInput("expected coefficient");
                r.push_back(static_cast<std::uint32_t>(c % p_));
                skip_ws();
                if (i < text.size() && text[i] == ',') { ++i; continue; }
                if (i < text.size() && text[i] == ']') { ++i; break; }
                throw MalformedInput("expected ',' or ']' in polynomial literal");
            }
        }
        skip_ws();
        if (i != text.size()) throw MalformedInput("trailing junk after polynomial literal");
        trim(r);
        return r;
    }

    std::string name() const { return "F_" + std::to_string(p_) + "[x]"; }

    bool operator==(const PolyDomain&) const = default;

private:
    static void trim(Elem& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    std::uint32_t inv_mod_p(std::uint32_t a) const {
        // Fermat: a^(p-2) mod p. p is prime and a != 0 mod p.
        if (a % p_ == 0) throw DivisionByZero("zero leading coefficient");
        std::uint64_t base = a % p_, acc = 1, e = p_ - 2;
        while (e > 0) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(acc);
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::uint32_t p_;
};

static_assert(EuclideanDomain<IntegerDomain>);
static_assert(EuclideanDomain<PolyDomain>);

} // namespace zel
