/// Command-line front end: linear equations and annihilators in residue
/// rings, membership and witnesses for the matrix group of a diagonal divisor
/// chain, SNF of domain matrices, and the self-verification batteries.
///
/// Exit codes: 0 success, 1 negative verification (no solution, non-member,
/// failed criterion), 2 malformed input, 3 resource bound exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "zel/json_io.hpp"
#include "zel/linsolve.hpp"
#include "zel/verify.hpp"
#include "zel/zelisko.hpp"

namespace {

struct Opts {
    std::string mod, a, b, c, hfile, phifile, mfile;
    std::string level = "quick";
    std::string format = "human";
    std::uint32_t poly_p = 0;
    std::uint64_t seed = 1;
    std::uint64_t bound = 10000;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw zel::MalformedInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs f with the domain selected by --poly-p (integers when unset).
template <class F>
int with_flag_domain(const Opts& o, F&& f) {
    if (o.poly_p) {
        zel::PolyDomain dom(o.poly_p);
        return f(dom);
    }
    zel::IntegerDomain dom;
    return f(dom);
}

/// Runs f with the domain implied by a JSON object (field "p" selects F_p[x]).
template <class F>
int with_json_domain(const zel::json& j, F&& f) {
    if (zel::is_poly_json(j)) {
        zel::PolyDomain dom(zel::prime_from_json(j));
        return f(dom);
    }
    zel::IntegerDomain dom;
    return f(dom);
}

template <zel::EuclideanDomain D>
std::string set_str(const std::vector<zel::Residue<D>>& xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += xs[i].str();
    }
    return s + "}";
}

template <zel::EuclideanDomain D>
zel::json residue_list_json(const D& dom, const std::vector<zel::Residue<D>>& xs) {
    zel::json arr = zel::json::array();
    for (const auto& x : xs) arr.push_back(zel::element_to_json(dom, x.rep()));
    return arr;
}

std::string rows_str(const zel::json& matrix_json) { return matrix_json["rows"].dump(); }

template <zel::EuclideanDomain D>
int cmd_solve(const D& dom, const Opts& o) {
    zel::ResidueRing<D> ring(dom, dom.parse(o.mod));
    auto a = ring.reduce(dom.parse(o.a));
    auto b = ring.reduce(dom.parse(o.b));
    auto x = zel::generating_solution(a, b);
    std::vector<zel::Residue<D>> sols;
    auto size = ring.size();
    if (size && *size <= o.bound) sols = zel::enumerate_solutions(zel::solution_coset(a, b), o.bound);
    if (o.format == "json") {
        zel::json j;
        j["x"] = zel::element_to_json(dom, x.rep());
        j["solutions"] = residue_list_json(dom, sols);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "generating solution: " << x.str() << "\n";
        if (!sols.empty()) std::cout << "solutions: " << set_str(sols) << "\n";
    }
    return 0;
}

template <zel::EuclideanDomain D>
int cmd_ann(const D& dom, const Opts& o) {
    zel::ResidueRing<D> ring(dom, dom.parse(o.mod));
    auto c = ring.reduce(dom.parse(o.c));
    auto gen = zel::ann_generator(c);
    std::vector<zel::Residue<D>> elems;
    auto size = ring.size();
    if (size && *size <= o.bound)
        elems = zel::enumerate_solutions(zel::solution_coset(c, ring.zero()), o.bound);
    if (o.format == "json") {
        zel::json j;
        j["generator"] = zel::element_to_json(dom, gen.rep());
        j["elements"] = residue_list_json(dom, elems);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "annihilator generator: " << gen.str() << "\n";
        if (!elems.empty()) std::cout << "annihilator: " << set_str(elems) << "\n";
    }
    return 0;
}

template <zel::EuclideanDomain D>
int cmd_decompose(const D& dom, const Opts& o) {
    zel::ResidueRing<D> ring(dom, dom.parse(o.mod));
    auto c = ring.reduce(dom.parse(o.c));
    auto dec = zel::unit_decompose(c);
    if (o.format == "json") {
        zel::json j;
        j["mu"] = zel::element_to_json(dom, dec.mu);
        j["unit"] = zel::element_to_json(dom, dec.e.rep());
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "mu: " << dom.to_string(dec.mu) << "\n";
        std::cout << "unit: " << dec.e.str() << "\n";
    }
    return 0;
}

template <zel::EuclideanDomain D>
int cmd_phi_check(const D& dom, const zel::json& pj, const Opts& o) {
    auto phi = zel::chain_from_json(dom, pj);
    auto profile = zel::block_profile(phi);
    if (o.format == "json") {
        zel::json j;
        j["case"] = zel::chain_case_label(profile.tag);
        j["n"] = profile.n;
        j["ones"] = profile.ones;
        j["chain"] = profile.chain;
        j["zeros"] = profile.zeros;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "ring: " << phi.ring().describe() << "\n";
        std::cout << "case: " << zel::chain_case_label(profile.tag) << "\n";
        std::cout << "blocks: units=" << profile.ones << " chain=" << profile.chain
                  << " zeros=" << profile.zeros << "\n";
    }
    return 0;
}

template <zel::EuclideanDomain D>
int cmd_member(const D& dom, const zel::json& hj, const zel::json& pj, const Opts& o) {
    auto h = zel::matrix_from_json(dom, hj);
    auto phi = zel::chain_from_json(dom, pj);
    auto res = zel::check_structure(h, phi);
    bool yes = std::holds_alternative<zel::StructuredMember<D>>(res);
    if (o.format == "json") {
        zel::json j;
        j["member"] = yes;
        if (!yes) j["reason"] = std::get<zel::StructureRejection>(res).describe();
        std::cout << j.dump() << "\n";
    } else if (yes) {
        std::cout << "H is a member of G_Phi ("
                  << zel::chain_case_label(std::get<zel::StructuredMember<D>>(res).profile.tag)
                  << ")\n";
    } else {
        std::cout << "H is not a member of G_Phi: " << std::get<zel::StructureRejection>(res).describe()
                  << "\n";
    }
    return yes ? 0 : 1;
}

template <zel::EuclideanDomain D>
int cmd_witness(const D& dom, const zel::json& hj, const zel::json& pj, const Opts& o) {
    auto h = zel::matrix_from_json(dom, hj);
    auto phi = zel::chain_from_json(dom, pj);
    auto res = zel::check_structure(h, phi);
    if (!std::holds_alternative<zel::StructuredMember<D>>(res)) {
        std::cerr << "error: not a member: " << std::get<zel::StructureRejection>(res).describe()
                  << "\n";
        return 1;
    }
    const auto& sm = std::get<zel::StructuredMember<D>>(res);
    auto phi_m = phi.diag_matrix();
    bool id_ok = zel::mat_mul(h, phi_m) == zel::mat_mul(phi_m, sm.witness);
    bool det_ok = zel::det(sm.witness) == zel::det(h);
    auto wj = zel::matrix_to_json(sm.witness);
    if (o.format == "json") {
        zel::json j;
        j["witness"] = wj;
        j["product_identity"] = id_ok;
        j["det_match"] = det_ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "witness: " << rows_str(wj) << "\n";
        std::cout << "identity H*Phi == Phi*S: " << (id_ok ? "ok" : "FAILED") << "\n";
        std::cout << "determinant match: " << (det_ok ? "ok" : "FAILED") << "\n";
    }
    return id_ok && det_ok ? 0 : 1;
}

template <zel::EuclideanDomain D>
int cmd_sample(const D& dom, const zel::json& pj, const Opts& o) {
    auto phi = zel::chain_from_json(dom, pj);
    auto sm = zel::sample_member(phi, o.seed);
    auto hj = zel::matrix_to_json(sm.h);
    auto wj = zel::matrix_to_json(sm.witness);
    if (o.format == "json") {
        zel::json j;
        j["h"] = hj;
        j["witness"] = wj;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "H: " << rows_str(hj) << "\n";
        std::cout << "witness: " << rows_str(wj) << "\n";
    }
    return 0;
}

template <zel::EuclideanDomain D>
int cmd_enumerate(const D& dom, const zel::json& pj, const Opts& o) {
    auto phi = zel::chain_from_json(dom, pj);
    std::uint64_t count = 0;
    zel::enumerate_members<D>(phi,
                              [&](const zel::ResidueMatrix<D>& m) {
                                  std::cout << zel::matrix_to_json(m).dump() << "\n";
                                  ++count;
                              },
                              o.bound);
    if (o.format == "json")
        std::cout << zel::json{{"count", count}}.dump() << "\n";
    else
        std::cout << "count: " << count << "\n";
    return 0;
}

template <zel::EuclideanDomain D>
zel::DomainMatrix<D> domain_matrix_from_json(const D& dom, const zel::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
        throw zel::MalformedInput("expected an object with fields \"n\" and \"rows\"");
    auto n = j["n"].get<std::int64_t>();
    if (n < 1 || n > 64) throw zel::MalformedInput("field \"n\" out of range");
    const auto& rows = j["rows"];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
        throw zel::MalformedInput("field \"rows\" must hold exactly n rows");
    zel::DomainMatrix<D> m(dom, static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != m.n)
            throw zel::MalformedInput("row " + std::to_string(i) + " must hold exactly n entries");
        for (std::size_t jj = 0; jj < m.n; ++jj)
            m.at(i, jj) = zel::element_from_json(dom, rows[i][jj]);
    }
    return m;
}

template <zel::EuclideanDomain D>
zel::json domain_matrix_to_json(const D& dom, const zel::DomainMatrix<D>& m) {
    zel::json j;
    j["n"] = m.n;
    zel::json rows = zel::json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        zel::json row = zel::json::array();
        for (std::size_t jj = 0; jj < m.n; ++jj)
            row.push_back(zel::element_to_json(dom, m.at(i, jj)));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    zel::tag_domain(dom, j);
    return j;
}

template <zel::EuclideanDomain D>
int cmd_snf(const D& dom, const zel::json& mj, const Opts& o) {
    auto a = domain_matrix_from_json(dom, mj);
    auto snf = zel::smith_normal_form(dom, a);
    auto uj = domain_matrix_to_json(dom, snf.u);
    auto dj = domain_matrix_to_json(dom, snf.d);
    auto vj = domain_matrix_to_json(dom, snf.v);
    if (o.format == "json") {
        zel::json j;
        j["u"] = uj;
        j["d"] = dj;
        j["v"] = vj;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "u: " << rows_str(uj) << "\n";
        std::cout << "d: " << rows_str(dj) << "\n";
        std::cout << "v: " << rows_str(vj) << "\n";
    }
    return 0;
}

int cmd_verify(const Opts& o) {
    auto level = o.level == "full" ? zel::VerifyLevel::Full : zel::VerifyLevel::Quick;
    auto results = zel::run_verification(level);
    bool all = true;
    if (o.format == "json") {
        zel::json arr = zel::json::array();
        for (const auto& r : results) {
            arr.push_back({{"name", r.name},
                           {"pass", r.pass},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
            all = all && r.pass;
        }
        std::cout << arr.dump() << "\n";
    } else {
        for (const auto& r : results) {
            std::ostringstream sec;
            sec.precision(3);
            sec << std::fixed << r.seconds;
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << sec.str() << "s) "
                      << r.detail << "\n";
            all = all && r.pass;
        }
        std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic and matrix groups over residue rings of Euclidean domains"};
    app.require_subcommand(1);
    Opts o;
    int rc = 0;

    auto add_common = [&](CLI::App* sub, bool with_ring) {
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"human", "json"}));
        if (with_ring) {
            sub->add_option("--mod", o.mod, "ring modulus")->required();
            sub->add_option("--poly-p", o.poly_p,
                            "work in F_p[x] for this prime (elements as [c0,c1,...])");
        }
    };

    auto* solve = app.add_subcommand("solve", "generating solution of a*x = b");
    solve->add_option("a", o.a)->required();
    solve->add_option("b", o.b)->required();
    solve->add_option("--bound", o.bound, "largest ring size to enumerate");
    add_common(solve, true);
    solve->callback([&] { rc = with_flag_domain(o, [&](auto& dom) { return cmd_solve(dom, o); }); });

    auto* ann = app.add_subcommand("ann", "annihilator of a residue");
    ann->add_option("c", o.c)->required();
    ann->add_option("--bound", o.bound, "largest ring size to enumerate");
    add_common(ann, true);
    ann->callback([&] { rc = with_flag_domain(o, [&](auto& dom) { return cmd_ann(dom, o); }); });

    auto* dec = app.add_subcommand("decompose", "split a residue into gcd part times unit");
    dec->add_option("c", o.c)->required();
    add_common(dec, true);
    dec->callback([&] { rc = with_flag_domain(o, [&](auto& dom) { return cmd_decompose(dom, o); }); });

    auto* phichk = app.add_subcommand("phi-check", "validate a divisor chain and report its shape");
    phichk->add_option("phi", o.phifile, "chain JSON file")->required();
    add_common(phichk, false);
    phichk->callback([&] {
        auto pj = zel::parse_json_text(slurp(o.phifile));
        rc = with_json_domain(pj, [&](auto& dom) { return cmd_phi_check(dom, pj, o); });
    });

    auto* member = app.add_subcommand("member", "test membership of H in G_Phi");
    member->add_option("hfile", o.hfile, "matrix JSON file")->required();
    member->add_option("phi", o.phifile, "chain JSON file")->required();
    add_common(member, false);
    member->callback([&] {
        auto hj = zel::parse_json_text(slurp(o.hfile));
        auto pj = zel::parse_json_text(slurp(o.phifile));
        if (zel::is_poly_json(hj) != zel::is_poly_json(pj))
            throw zel::MalformedInput("matrix and chain use different domains");
        rc = with_json_domain(pj, [&](auto& dom) { return cmd_member(dom, hj, pj, o); });
    });

    auto* witness = app.add_subcommand("witness", "witness S with H*Phi = Phi*S");
    witness->add_option("hfile", o.hfile, "matrix JSON file")->required();
    witness->add_option("phi", o.phifile, "chain JSON file")->required();
    add_common(witness, false);
    witness->callback([&] {
        auto hj = zel::parse_json_text(slurp(o.hfile));
        auto pj = zel::parse_json_text(slurp(o.phifile));
        if (zel::is_poly_json(hj) != zel::is_poly_json(pj))
            throw zel::MalformedInput("matrix and chain use different domains");
        rc = with_json_domain(pj, [&](auto& dom) { return cmd_witness(dom, hj, pj, o); });
    });

    auto* sample = app.add_subcommand("sample", "sample a member of G_Phi");
    sample->add_option("phi", o.phifile, "chain JSON file")->required();
    sample->add_option("--seed", o.seed, "sampler seed");
    add_common(sample, false);
    sample->callback([&] {
        auto pj = zel::parse_json_text(slurp(o.phifile));
        rc = with_json_domain(pj, [&](auto& dom) { return cmd_sample(dom, pj, o); });
    });

    auto* enumerate = app.add_subcommand("enumerate", "list every member of G_Phi (tiny rings)");
    enumerate->add_option("phi", o.phifile, "chain JSON file")->required();
    enumerate->add_option("--bound", o.bound, "oracle candidate bound")->capture_default_str();
    add_common(enumerate, false);
    enumerate->callback([&] {
        if (o.bound == 10000) o.bound = 1000000; // enumeration default is the oracle bound
        auto pj = zel::parse_json_text(slurp(o.phifile));
        rc = with_json_domain(pj, [&](auto& dom) { return cmd_enumerate(dom, pj, o); });
    });

    auto* snf = app.add_subcommand("snf", "Smith normal form of a domain matrix");
    snf->add_option("m", o.mfile, "matrix JSON file (no modulus)")->required();
    add_common(snf, false);
    snf->callback([&] {
        auto mj = zel::parse_json_text(slurp(o.mfile));
        rc = with_json_domain(mj, [&](auto& dom) { return cmd_snf(dom, mj, o); });
    });

    auto* verify = app.add_subcommand("verify", "run the verification batteries");
    verify->add_option("--level", o.level, "battery scale")
        ->check(CLI::IsMember({"quick", "full"}));
    add_common(verify, false);
    verify->callback([&] { rc = cmd_verify(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const zel::Unsolvable& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const zel::RingTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const zel::SamplingExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const zel::SizeOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const zel::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
