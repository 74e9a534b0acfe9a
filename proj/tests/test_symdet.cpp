#include <doctest.h>

#include "zel/symdet.hpp"

using namespace zel;
using namespace zel::sym;

namespace {
Monomial letters(std::initializer_list<VarId> ids, long long coeff = 1) {
    Monomial m{coeff, {}};
    for (auto id : ids) m = mono_mul(m, mono_var(id));
    m.coeff = coeff;
    return m;
}
} // namespace

TEST_CASE("monomial arithmetic and printing") {
    CHECK(mono_str(mono_one()) == "+1");
    CHECK(var_name(a_var(1)) == "a21");
    CHECK(var_name(h_var(0, 1)) == "h12");
    auto sq = mono_mul(mono_var(a_var(1)), mono_var(a_var(1)));
    CHECK(sq == Monomial{1, {{a_var(1), 2}}});
    CHECK(mono_str(Monomial{-1, {{a_var(1), 2}}}) == "-a21^2");
    auto mixed = mono_mul(letters({a_var(2), a_var(1)}), mono_var(h_var(2, 0)));
    CHECK(mixed.powers == std::vector<std::pair<VarId, int>>{
                              {a_var(1), 1}, {a_var(2), 1}, {h_var(2, 0), 1}});
    CHECK(mono_str(mixed) == "+a21*a32*h31");
}

TEST_CASE("normalize merges, cancels, and drops zeros") {
    auto x = mono_var(a_var(1));
    auto p = normalize({{2, x.powers}, {3, x.powers}, {-5, x.powers}});
    CHECK(p.is_zero());
    auto q = normalize({{2, x.powers}, {0, {}}, {3, x.powers}, mono_one()});
    REQUIRE(q.terms.size() == 2);
    CHECK(q.terms[0] == mono_one());
    CHECK(q.terms[1] == Monomial{5, x.powers});
}

TEST_CASE("multiplier pattern entries") {
    auto m = build_multiplier_pattern(3);
    CHECK(m.at(0, 0) == mono_one());
    CHECK(m.at(0, 2) == mono_one());
    CHECK(m.at(1, 1) == mono_one());
    CHECK(m.at(1, 0) == mono_var(a_var(1)));
    CHECK(m.at(2, 1) == mono_var(a_var(2)));
    CHECK(m.at(2, 0) == letters({a_var(1), a_var(2)}));
    CHECK(build_multiplier_pattern(4).at(3, 0) == letters({a_var(1), a_var(2), a_var(3)}));
    CHECK(transpose(m).at(0, 2) == letters({a_var(1), a_var(2)}));
}

TEST_CASE("permutation terms of the multiplier pattern") {
    auto m = build_multiplier_pattern(3);
    CHECK(perm_term({0, 1, 2}, m) == mono_one());
    // the 3-cycle has even sign and picks up the corner product
    auto cyc = perm_term({1, 2, 0}, m);
    CHECK(cyc == letters({a_var(1), a_var(2)}));
    CHECK(perm_term(sym::detail::perm_inverse({1, 2, 0}), m) == cyc);
    // a transposition contributes with a minus sign
    CHECK(perm_term({1, 0, 2}, m) == Monomial{-1, {{a_var(1), 1}}});
}

TEST_CASE("expanded determinant of the 2x2 pattern") {
    auto p = det_sym(build_multiplier_pattern(2));
    REQUIRE(p.terms.size() == 2);
    CHECK(p.terms[0] == mono_one());
    CHECK(p.terms[1] == Monomial{-1, {{a_var(1), 1}}});
}

TEST_CASE("mirrored pair carries transposed crossing products") {
    auto [a, b] = build_mirrored_pair(3);
    CHECK(a.at(2, 0) == letters({a_var(1), a_var(2), h_var(2, 0)}));
    CHECK(b.at(2, 0) == mono_var(h_var(2, 0)));
    CHECK(b.at(0, 2) == letters({a_var(1), a_var(2), h_var(0, 2)}));
    CHECK(a.at(0, 2) == mono_var(h_var(0, 2)));
    CHECK(a.at(1, 1) == mono_var(h_var(1, 1)));
    CHECK(b.at(1, 1) == mono_var(h_var(1, 1)));
}

TEST_CASE("term symmetry and mirrored determinant equality hold up to n = 5") {
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK(check_term_symmetry(n));
        CHECK(check_mirrored_det(n));
    }
}

TEST_CASE("size guards on the symbolic builders") {
    CHECK_THROWS_AS(build_multiplier_pattern(1), SizeOutOfRange);
    CHECK_THROWS_AS(build_multiplier_pattern(8), SizeOutOfRange);
    CHECK_THROWS_AS(check_term_symmetry(1), SizeOutOfRange);
    CHECK_THROWS_AS(check_mirrored_det(8), SizeOutOfRange);
    CHECK_THROWS_AS(mirrored_det_numeric_crosscheck(8, 1), SizeOutOfRange);
}

TEST_CASE("numeric substitution agrees with the symbolic identity") {
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::uint64_t seed = 1; seed <= 5; ++seed)
            CHECK(mirrored_det_numeric_crosscheck(n, seed));
}

TEST_CASE("monomial evaluation") {
    std::map<VarId, boost::multiprecision::cpp_int> assign{{a_var(1), 2}};
    CHECK(eval_monomial(Monomial{3, {{a_var(1), 2}}}, assign) == 12);
    CHECK(eval_monomial(mono_one(), assign) == 1);
    CHECK_THROWS_AS(eval_monomial(mono_var(h_var(0, 0)), assign), MalformedInput);
}
