#include <doctest.h>

#include "zel/json_io.hpp"

using namespace zel;
using Z = IntegerDomain;
using P = PolyDomain;

TEST_CASE("residue round trip over the integers") {
    Z dom;
    ResidueRing<Z> ring(dom, 36);
    auto r = ring.reduce(230);
    auto j = residue_to_json(r);
    CHECK(j.dump() == R"({"mod":36,"rep":14})");
    CHECK(residue_from_json(dom, j) == r);
}

TEST_CASE("large integers are carried as decimal strings") {
    Z dom;
    Z::Elem big = Z::Elem(1) << 64;
    ResidueRing<Z> ring(dom, big);
    auto r = ring.reduce(Z::Elem(1) << 60);
    auto j = residue_to_json(r);
    CHECK(j["rep"].is_string());
    CHECK(j["mod"].is_string());
    CHECK(residue_from_json(dom, j) == r);
    // small values stay plain numbers
    CHECK(residue_to_json(ring.reduce(7))["rep"].is_number_integer());
}

TEST_CASE("matrix round trip and deterministic dumps") {
    Z dom;
    ResidueRing<Z> ring(dom, 8);
    ResidueMatrix<Z> m(ring, 2);
    m.set_rep(0, 0, 1);
    m.set_rep(1, 0, 2);
    m.set_rep(1, 1, 1);
    auto j = matrix_to_json(m);
    CHECK(j.dump() == R"({"mod":8,"n":2,"rows":[[1,0],[2,1]]})");
    CHECK(matrix_from_json(dom, j) == m);
    CHECK(matrix_to_json(matrix_from_json(dom, j)).dump() == j.dump());
}

TEST_CASE("chain round trip normalizes recorded units") {
    Z dom;
    ResidueRing<Z> ring(dom, 36);
    auto phi = build_divisor_chain(ring, {5, 1, 6, 0});
    auto j = chain_to_json(phi);
    CHECK(j.dump() == R"({"diag":[1,1,6,0],"mod":36})");
    auto back = chain_from_json(dom, j);
    CHECK(back.ones_count() == 2);
    CHECK(back.chain_length() == 1);
    CHECK(back.zeros_count() == 1);
}

TEST_CASE("polynomial payloads carry the field prime") {
    P dom(3);
    ResidueRing<P> ring(dom, P::Elem{1, 0, 1});
    auto r = ring.reduce(P::Elem{2, 1});
    auto j = residue_to_json(r);
    CHECK(is_poly_json(j));
    CHECK(prime_from_json(j) == 3);
    CHECK(j.dump() == R"({"mod":[1,0,1],"p":3,"rep":[2,1]})");
    CHECK(residue_from_json(dom, j) == r);

    ResidueMatrix<P> m(ring, 2);
    m.set_rep(0, 0, P::Elem{1});
    m.set_rep(0, 1, P::Elem{0, 2});
    m.set_rep(1, 1, P::Elem{1, 1});
    auto mj = matrix_to_json(m);
    CHECK(is_poly_json(mj));
    CHECK(matrix_from_json(dom, mj) == m);

    // x is a unit in the field F_3[x]/(x^2+1); switch to the non-field x^2
    // quotient for a chain with a genuine zero divisor
    ResidueRing<P> nilring(dom, P::Elem{0, 0, 1});
    auto phi = build_divisor_chain(nilring, {P::Elem{1}, P::Elem{0, 1}});
    auto cj = chain_to_json(phi);
    auto back = chain_from_json(dom, cj);
    CHECK(back.ones_count() == 1);
    CHECK(back.chain_length() == 1);
}

TEST_CASE("trailing zero coefficients are trimmed on read") {
    P dom(2);
    auto v = element_from_json(dom, json::parse("[1,0,1,0,0]"));
    CHECK(v == P::Elem{1, 0, 1});
    CHECK(element_from_json(dom, json::parse("[0,0]")) == P::Elem{});
}

TEST_CASE("malformed payloads are rejected") {
    Z dom;
    P p2(2);
    CHECK_THROWS_AS(parse_json_text("{not json"), MalformedInput);
    CHECK_THROWS_AS(residue_from_json(dom, parse_json_text(R"({"rep":3})")), MalformedInput);
    CHECK_THROWS_AS(residue_from_json(dom, parse_json_text(R"({"mod":36})")), MalformedInput);
    CHECK_THROWS_AS(residue_from_json(dom, parse_json_text(R"({"mod":36,"rep":1.5})")),
                    MalformedInput);
    CHECK_THROWS_AS(residue_from_json(dom, parse_json_text(R"({"mod":0,"rep":1})")),
                    InvalidModulus);
    CHECK_THROWS_AS(matrix_from_json(dom, parse_json_text(R"({"mod":8,"n":0,"rows":[]})")),
                    MalformedInput);
    CHECK_THROWS_AS(matrix_from_json(dom, parse_json_text(R"({"mod":8,"n":65,"rows":[]})")),
                    MalformedInput);
    CHECK_THROWS_AS(
        matrix_from_json(dom, parse_json_text(R"({"mod":8,"n":2,"rows":[[1,0]]})")),
        MalformedInput);
    CHECK_THROWS_AS(
        matrix_from_json(dom, parse_json_text(R"({"mod":8,"n":2,"rows":[[1,0],[2]]})")),
        MalformedInput);
    CHECK_THROWS_AS(
        matrix_from_json(dom, parse_json_text(R"({"mod":8,"n":2,"rows":"x"})")),
        MalformedInput);
    CHECK_THROWS_AS(chain_from_json(dom, parse_json_text(R"({"mod":8,"diag":[]})")),
                    MalformedInput);
    CHECK_THROWS_AS(chain_from_json(dom, parse_json_text(R"({"mod":8,"diag":4})")),
                    MalformedInput);
    CHECK_THROWS_AS(element_from_json(p2, parse_json_text("[2]")), MalformedInput);
    CHECK_THROWS_AS(element_from_json(p2, parse_json_text("[-1]")), MalformedInput);
    CHECK_THROWS_AS(element_from_json(p2, parse_json_text(R"(["x"])")), MalformedInput);
    CHECK_THROWS_AS(element_from_json(p2, parse_json_text("7")), MalformedInput);
    CHECK_THROWS_AS(prime_from_json(parse_json_text(R"({"p":1})")), MalformedInput);
    CHECK_THROWS_AS(prime_from_json(parse_json_text(R"({"mod":8})")), MalformedInput);
}
