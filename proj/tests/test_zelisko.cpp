#include <doctest.h>

#include "oracle_helpers.hpp"
#include "zel/zelisko.hpp"

using namespace zel;
using Z = IntegerDomain;
using P = PolyDomain;

namespace {
ResidueRing<Z> zring(long long m) { return ResidueRing<Z>(Z{}, Z::Elem(m)); }

DivisorChain<Z> zchain(const ResidueRing<Z>& ring, std::vector<long long> diag) {
    std::vector<Z::Elem> d(diag.begin(), diag.end());
    return build_divisor_chain(ring, d);
}

ResidueMatrix<Z> zmat(const ResidueRing<Z>& ring, std::vector<std::vector<long long>> rows) {
    ResidueMatrix<Z> m(ring, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, ring.reduce(rows[i][j]));
    return m;
}
} // namespace

TEST_CASE("block profiles cover the five shapes") {
    auto r8 = zring(8);
    CHECK(block_profile(zchain(r8, {1, 2, 4, 0})).tag == ChainCase::UnitsChainZeros);
    CHECK(block_profile(zchain(r8, {2, 4, 0})).tag == ChainCase::ChainZeros);
    CHECK(block_profile(zchain(r8, {2, 4})).tag == ChainCase::ChainOnly);
    CHECK(block_profile(zchain(r8, {1, 2})).tag == ChainCase::UnitsChain);
    CHECK(block_profile(zchain(r8, {1, 0})).tag == ChainCase::UnitsZeros);
    CHECK(block_profile(zchain(r8, {1, 1})).tag == ChainCase::UnitsZeros);  // degenerate, no zeros
    CHECK(block_profile(zchain(r8, {0, 0})).tag == ChainCase::UnitsZeros);  // degenerate, no units
    CHECK(chain_case_label(ChainCase::UnitsChainZeros) == "units+chain+zeros");
    auto p = block_profile(zchain(r8, {1, 2, 4, 0}));
    CHECK(p.n == 4);
    CHECK(p.ones == 1);
    CHECK(p.chain == 2);
    CHECK(p.zeros == 1);
}

TEST_CASE("membership pins over Z_8 with diag(2,4)") {
    auto ring = zring(8);
    auto phi = zchain(ring, {2, 4});
    CHECK(is_member(zmat(ring, {{1, 0}, {2, 1}}), phi));
    CHECK(is_member(ResidueMatrix<Z>::identity(ring, 2), phi));
    CHECK_FALSE(is_member(zmat(ring, {{1, 0}, {1, 1}}), phi));
    CHECK_FALSE(is_member(zmat(ring, {{2, 0}, {0, 1}}), phi)); // not invertible
}

TEST_CASE("structure check reports the violation position") {
    auto ring = zring(8);
    auto phi = zchain(ring, {2, 4});
    auto good = check_structure(zmat(ring, {{1, 0}, {2, 1}}), phi);
    REQUIRE(std::holds_alternative<StructuredMember<Z>>(good));
    const auto& sm = std::get<StructuredMember<Z>>(good);
    CHECK(sm.cofactors.at(1, 0).rep() == 1); // 2 = multiplier 2 times cofactor 1
    CHECK(sm.witness == zmat(ring, {{1, 0}, {1, 1}}));

    auto bad = check_structure(zmat(ring, {{1, 0}, {1, 1}}), phi);
    REQUIRE(std::holds_alternative<StructureRejection>(bad));
    const auto& rej = std::get<StructureRejection>(bad);
    CHECK(rej.kind == StructureRejection::Kind::Divisibility);
    CHECK(rej.row == 1);
    CHECK(rej.col == 0);
    CHECK(rej.block == "H22");

    auto sing = check_structure(zmat(ring, {{2, 0}, {0, 1}}), phi);
    REQUIRE(std::holds_alternative<StructureRejection>(sing));
    CHECK(std::get<StructureRejection>(sing).kind == StructureRejection::Kind::NotInvertible);
}

TEST_CASE("zero-block violations are reported for a units+zeros chain") {
    auto ring = zring(4);
    auto phi = zchain(ring, {1, 0});
    CHECK(is_member(zmat(ring, {{1, 0}, {0, 1}}), phi));
    CHECK_FALSE(is_member(zmat(ring, {{1, 0}, {1, 1}}), phi));
    auto bad = check_structure(zmat(ring, {{1, 0}, {1, 1}}), phi);
    REQUIRE(std::holds_alternative<StructureRejection>(bad));
    const auto& rej = std::get<StructureRejection>(bad);
    CHECK(rej.kind == StructureRejection::Kind::ZeroBlock);
    CHECK(rej.block == "H31");
}

TEST_CASE("ring and dimension guards") {
    auto r8 = zring(8);
    auto phi = zchain(r8, {2, 4});
    CHECK_THROWS_AS(is_member(ResidueMatrix<Z>(zring(4), 2), phi), ModulusMismatch);
    CHECK_THROWS_AS(is_member(ResidueMatrix<Z>(r8, 3), phi), DimensionMismatch);
}

TEST_CASE("witness identity H*Phi == Phi*S for pinned and sampled members") {
    auto ring = zring(8);
    auto phi = zchain(ring, {1, 2, 4});
    auto phi_m = phi.diag_matrix();
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto sm = sample_member(phi, seed);
        CHECK(is_member(sm.h, phi));
        CHECK(mat_mul(sm.h, phi_m) == mat_mul(phi_m, sm.witness));
        CHECK(det(sm.witness) == det(sm.h));
        CHECK(construct_witness(sm, phi) == sm.witness);
    }
}

TEST_CASE("sampler is deterministic in the seed and validates arguments") {
    auto ring = zring(36);
    auto phi = zchain(ring, {1, 3, 6, 0});
    auto a = sample_member(phi, 7);
    auto b = sample_member(phi, 7);
    CHECK(a.h == b.h);
    CHECK(a.witness == b.witness);
    auto c = sample_member(phi, 8);
    CHECK(is_member(c.h, phi));
    CHECK_THROWS_AS(sample_member(phi, 1, 0), PreconditionViolated);
    // zero block of the sampled member is honored
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        CHECK(sample_member(phi, seed).h.at(3, 0).is_zero());
}

TEST_CASE("finite ring table: indices, operations, units by scan") {
    auto ring = zring(6);
    auto t = FiniteRingTable<Z>::build(ring);
    CHECK(t.size == 6);
    CHECK(t.elems[0] == 0);
    CHECK(t.elems[1] == 1);
    CHECK(t.index_of(Z::Elem(4)) == 4);
    CHECK(t.add[2 * 6 + 5] == 1);  // 2 + 5 = 7 = 1
    CHECK(t.mul[4 * 6 + 5] == 2);  // 20 = 2
    CHECK(t.negt[2] == 4);
    std::set<Z::Elem> units;
    for (std::uint32_t u = 0; u < 6; ++u)
        if (t.unit[u]) units.insert(t.elems[u]);
    CHECK(units == testing::brute_units(ring));
    CHECK_THROWS_AS(t.index_of(Z::Elem(6)), MalformedInput);
    auto big = ResidueRing<Z>(Z{}, Z::Elem(100000));
    CHECK_THROWS_AS(FiniteRingTable<Z>::build(big), RingTooLarge);
}

TEST_CASE("matrix enumeration order: entry (0,0) varies fastest") {
    auto ring = zring(4);
    std::vector<Z::Elem> first_entries;
    std::uint64_t calls = 0;
    for_each_matrix(ring, 2, 1 << 20, [&](const ResidueMatrix<Z>& m, std::uint64_t idx) {
        CHECK(idx == calls);
        if (calls < 5) first_entries.push_back(m.rep_at(0, 0));
        ++calls;
    });
    CHECK(calls == 256);
    CHECK(first_entries == std::vector<Z::Elem>{0, 1, 2, 3, 0});
    CHECK_THROWS_AS(for_each_matrix(ring, 2, 100, [](const ResidueMatrix<Z>&, std::uint64_t) {}),
                    RingTooLarge);
}

TEST_CASE("the three membership predicates agree on a full small sweep") {
    auto ring = zring(4);
    std::vector<std::vector<long long>> diags{{2, 2}, {1, 2}, {2, 0}, {1, 0}};
    for (const auto& diag : diags) {
        auto phi = zchain(ring, diag);
        auto ctx = OracleContext<Z>::build(phi);
        std::uint64_t members = 0;
        for_each_matrix(ring, 2, 1 << 20, [&](const ResidueMatrix<Z>& m, std::uint64_t) {
            bool a = is_member(m, phi);
            bool b = structure_accepts(m, phi);
            bool c = oracle_is_member(ctx, m);
            CHECK(a == b);
            CHECK(a == c);
            members += a;
        });
        std::uint64_t streamed = 0;
        enumerate_members<Z>(phi, [&](const ResidueMatrix<Z>&) { ++streamed; });
        CHECK(streamed == members);
        CHECK(members > 0);
    }
}

TEST_CASE("oracle agrees with is_member on the polynomial ring") {
    P d2(2);
    ResidueRing<P> ring(d2, P::Elem{0, 1, 0, 0, 1});
    std::vector<P::Elem> diag{P::Elem{1}, P::Elem{0, 1}};
    auto phi = build_divisor_chain(ring, diag);
    auto ctx = OracleContext<P>::build(phi);
    std::uint64_t members = 0, total = 0;
    for_each_matrix(ring, 2, 1 << 20, [&](const ResidueMatrix<P>& m, std::uint64_t) {
        bool a = is_member(m, phi);
        CHECK(a == structure_accepts(m, phi));
        if (total % 7 == 0) CHECK(a == oracle_is_member(ctx, m)); // oracle on a stride, for speed
        members += a;
        ++total;
    });
    CHECK(total == 65536);
    CHECK(members > 0);
}

TEST_CASE("enumeration guards") {
    auto r4 = zring(4);
    auto phi4 = zchain(r4, {1, 2, 0, 0});
    CHECK_THROWS_AS(enumerate_members<Z>(phi4, [](const ResidueMatrix<Z>&) {}), SizeOutOfRange);
    auto r16 = zring(16);
    auto phi16 = zchain(r16, {2, 4});
    CHECK_THROWS_AS(enumerate_members<Z>(phi16, [](const ResidueMatrix<Z>&) {}), RingTooLarge);
}

TEST_CASE("oracle candidate bound is enforced") {
    auto ring = zring(12);
    auto phi = zchain(ring, {6, 6, 6});
    // every entry equation 6s = 6p has many candidate solutions, so a tiny
    // bound trips before any witness is found
    auto h = ResidueMatrix<Z>::identity(ring, 3);
    CHECK_THROWS_AS(oracle_is_member(h, phi, 10), RingTooLarge);
    CHECK(oracle_is_member(h, phi, 20000000)); // 6^9 combos fit under this bound
}
