#include <doctest.h>

#include "oracle_helpers.hpp"
#include "zel/linsolve.hpp"

using namespace zel;
using Z = IntegerDomain;
using P = PolyDomain;

namespace {
ResidueRing<Z> zring(long long m) { return ResidueRing<Z>(Z{}, Z::Elem(m)); }

template <EuclideanDomain D>
std::set<typename D::Elem> rep_set(const std::vector<Residue<D>>& xs) {
    std::set<typename D::Elem> out;
    for (const auto& x : xs) out.insert(x.rep());
    return out;
}
} // namespace

TEST_CASE("solvability matches the exhaustive scan") {
    auto ring = zring(12);
    for (const auto& a : testing::all_elements(ring))
        for (const auto& b : testing::all_elements(ring))
            CHECK(is_solvable(a, b) == !testing::brute_solutions(a, b).empty());
}

TEST_CASE("pinned generating solution and coset in Z_36") {
    auto ring = zring(36);
    auto a = ring.reduce(33), b = ring.reduce(30);
    CHECK(generating_solution(a, b).rep() == 14);
    auto sols = enumerate_solutions(solution_coset(a, b));
    CHECK(rep_set(sols) == std::set<Z::Elem>{2, 14, 26});
    CHECK(solution_coset(a, b).ann_gen.rep() == 12);
}

TEST_CASE("pinned solution set of 4x = 8 in Z_144") {
    auto ring = zring(144);
    auto a = ring.reduce(4), b = ring.reduce(8);
    auto sols = enumerate_solutions(solution_coset(a, b));
    CHECK(rep_set(sols) == std::set<Z::Elem>{2, 38, 74, 110});
    for (const auto& s : sols) CHECK(is_generating(a, b, s));
}

TEST_CASE("unsolvable equations throw") {
    auto ring = zring(8);
    CHECK_THROWS_AS(generating_solution(ring.reduce(4), ring.reduce(2)), Unsolvable);
    CHECK_FALSE(is_solvable(ring.reduce(4), ring.reduce(2)));
}

TEST_CASE("edge equations: zero right side and zero coefficient") {
    auto ring = zring(36);
    for (const auto& a : testing::all_elements(ring)) {
        if (a.is_zero()) continue;
        CHECK(generating_solution(a, ring.zero()) == unit_ann_generator(a));
    }
    CHECK(generating_solution(ring.zero(), ring.zero()) == ring.one());
}

TEST_CASE("generating solutions against brute force over whole small rings") {
    P d2(2);
    ResidueRing<P> pring(d2, P::Elem{0, 1, 0, 0, 1});
    auto run = [](const auto& ring) {
        for (const auto& a : testing::all_elements(ring))
            for (const auto& b : testing::all_elements(ring)) {
                if (!is_solvable(a, b)) continue;
                auto g = generating_solution(a, b);
                CHECK(testing::brute_is_generating(a, b, g));
                CHECK(rep_set(enumerate_solutions(solution_coset(a, b))) ==
                      testing::brute_solutions(a, b));
                for (const auto& x : testing::all_elements(ring))
                    CHECK(is_generating(a, b, x) == testing::brute_is_generating(a, b, x));
            }
    };
    run(zring(12));
    run(pring);
}

TEST_CASE("is_generating separates generating from plain solutions") {
    auto ring = zring(36);
    auto a = ring.reduce(6), b = ring.reduce(12);
    CHECK(rep_set(enumerate_solutions(solution_coset(a, b))) ==
          std::set<Z::Elem>{2, 8, 14, 20, 26, 32});
    CHECK(is_generating(a, b, ring.reduce(2)));
    CHECK(is_generating(a, b, ring.reduce(14)));
    CHECK_FALSE(is_generating(a, b, ring.reduce(8)));
    CHECK_FALSE(is_generating(a, b, ring.reduce(3))); // not even a solution
}

TEST_CASE("composition of generating solutions along chains") {
    auto r36 = zring(36);
    auto g21 = generating_solution(r36.reduce(3), r36.reduce(6));
    auto g32 = generating_solution(r36.reduce(6), r36.reduce(12));
    CHECK(g21.rep() == 2);
    CHECK(g32.rep() == 2);
    auto composed = compose_generating(g21, g32);
    CHECK(composed.rep() == 4);
    CHECK(is_generating(r36.reduce(3), r36.reduce(12), composed));

    auto r144 = zring(144);
    auto h21 = generating_solution(r144.reduce(4), r144.reduce(8));
    auto h32 = generating_solution(r144.reduce(8), r144.reduce(16));
    auto comp = compose_generating(h21, h32);
    CHECK(is_generating(r144.reduce(4), r144.reduce(16), comp));
    CHECK(testing::brute_is_generating(r144.reduce(4), r144.reduce(16), comp));
}

TEST_CASE("annihilator transfer holds for unit-normalized generators") {
    auto ring = zring(144);
    CHECK(ann_transfer_check(ring.reduce(4), ring.reduce(8)));
    CHECK(ann_transfer_check(ring.reduce(8), ring.reduce(16)));
    CHECK_THROWS_AS(ann_transfer_check(ring.zero(), ring.reduce(8)), PreconditionViolated);
    CHECK_THROWS_AS(ann_transfer_check(ring.reduce(8), ring.reduce(4)), PreconditionViolated);
    for (long long m : {12, 36}) {
        auto r = zring(m);
        for (const auto& c1 : testing::all_elements(r))
            for (const auto& c2 : testing::all_elements(r)) {
                if (c1.is_zero() || c2.is_zero() || !divides(c1, c2)) continue;
                CHECK(ann_transfer_check(c1, c2));
            }
    }
}

TEST_CASE("plain generators break the transfer identity (negative control)") {
    auto ring = zring(144);
    auto g = ring.reduce(38);
    CHECK(is_generating(ring.reduce(4), ring.reduce(8), g));
    CHECK_FALSE(g * ring.reduce(18) == ring.reduce(36));
    CHECK(g * ring.reduce(126) == ring.reduce(36));
}

TEST_CASE("enumerate_solutions refuses unbounded rings") {
    auto ring = zring(1000003);
    auto coset = solution_coset(ring.reduce(1), ring.reduce(5));
    CHECK_THROWS_AS(enumerate_solutions(coset, 1000), RingTooLarge);
}
