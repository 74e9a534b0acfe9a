#pragma once

/// @file verify.hpp
/// @brief Self-verification batteries: pinned worked examples, randomized
/// property checks, exhaustive oracle-equivalence sweeps, witness and closure
/// checks, symbolic determinant identities and SNF round-trips.
///
/// run_verification returns one result per criterion, in a fixed order, with
/// wall-clock seconds and a short detail string. The Full level runs the
/// published scales and enforces the pinned time bounds; Quick shrinks the
/// batteries for smoke testing and skips the time bounds.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zel/linsolve.hpp"
#include "zel/matrix.hpp"
#include "zel/symdet.hpp"
#include "zel/zelisko.hpp"

namespace zel {

enum class VerifyLevel { Quick, Full };

struct CriterionResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

namespace vdetail {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Pinned bounds, seconds; enforced only at the Full level.
constexpr double kWorkedExampleBound = 0.001;
constexpr double kBatteryBound = 10.0;
constexpr double kSweepBound = 300.0;
constexpr double kSymbolicBound = 30.0;

struct Params {
    std::size_t battery_iters = 1000;
    std::size_t sym_n_max = 7;
    std::size_t sym_subst = 100;
    std::size_t snf_iters = 1000;
    bool heavy_sweep = true;
    std::size_t sampled_members = 1000;
    std::uint64_t closure_pair_cap = 512;
    std::uint64_t closure_samples = 100000;
    bool enforce_time = true;
};

inline Params params_for(VerifyLevel level) {
    Params p;
    if (level == VerifyLevel::Quick) {
        p.battery_iters = 100;
        p.sym_n_max = 4;
        p.sym_subst = 10;
        p.snf_iters = 100;
        p.heavy_sweep = false;
        p.sampled_members = 40;
        p.closure_samples = 2000;
        p.enforce_time = false;
    }
    return p;
}

template <EuclideanDomain D>
bool equals_reps(const std::vector<Residue<D>>& got, std::vector<typename D::Elem> want) {
    std::sort(want.begin(), want.end());
    if (got.size() != want.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i)
        if (!(got[i].rep() == want[i])) return false;
    return true;
}

inline std::vector<IntegerDomain::Elem> int_reps(std::initializer_list<long long> xs) {
    std::vector<IntegerDomain::Elem> v;
    for (auto x : xs) v.emplace_back(x);
    return v;
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: pinned worked examples.

inline CriterionResult worked_example_z36(const Params& prm) {
    CriterionResult r{"worked-example-z36", false, 0, ""};
    IntegerDomain dom;
    ResidueRing<IntegerDomain> ring(dom, 36);
    auto run = [&]() {
        auto a = ring.reduce(33), b = ring.reduce(30);
        bool ok = associates(generating_solution(a, b), ring.reduce(2));
        ok = ok && equals_reps(enumerate_solutions(solution_coset(a, b)), int_reps({2, 14, 26}));
        ok = ok &&
             equals_reps(enumerate_solutions(solution_coset(a, ring.zero())), int_reps({0, 12, 24}));
        ok = ok && invert_unit(ring.reduce(11)) == ring.reduce(23);
        return ok;
    };
    run(); // warmup, untimed
    Timer t;
    bool ok = run();
    r.seconds = t.s();
    r.pass = ok && (!prm.enforce_time || r.seconds < kWorkedExampleBound);
    r.detail = "generating solution, coset, annihilator and unit inverse over Z_36";
    return r;
}

inline CriterionResult worked_example_z144(const Params& prm) {
    CriterionResult r{"worked-example-z144", false, 0, ""};
    IntegerDomain dom;
    ResidueRing<IntegerDomain> ring(dom, 144);
    auto run = [&]() {
        auto c = ring.reduce(8);
        bool ok = ann_generator(c) == ring.reduce(18);
        ok = ok && equals_reps(enumerate_solutions(solution_coset(c, ring.zero())),
                               int_reps({0, 18, 36, 54, 72, 90, 108, 126}));
        auto a = ring.reduce(4), b = ring.reduce(8);
        auto sols = enumerate_solutions(solution_coset(a, b));
        ok = ok && equals_reps(sols, int_reps({2, 38, 74, 110}));
        for (const auto& s : sols) ok = ok && is_generating(a, b, s);
        return ok;
    };
    run();
    Timer t;
    bool ok = run();
    r.seconds = t.s();
    r.pass = ok && (!prm.enforce_time || r.seconds < kWorkedExampleBound);
    r.detail = "annihilator of 8 and the full solution set of 4x = 8 over Z_144";
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 3: composition of generating solutions along random chains.

/// Exhaustive generating test: x must solve c1*x = c3 and every solution must
/// be a ring multiple of x.
template <EuclideanDomain D>
bool generates_exhaustively(const Residue<D>& c1, const Residue<D>& c3, const Residue<D>& x) {
    if (!(c1 * x == c3)) return false;
    const auto& ring = c1.ring();
    auto count = ring.size();
    if (!count) return false;
    std::set<typename D::Elem> multiples;
    for (std::uint64_t k = 0; k < *count; ++k) multiples.insert((x * ring.element(k)).rep());
    for (const auto& s : enumerate_solutions(solution_coset(c1, c3), *count + 1))
        if (!multiples.count(s.rep())) return false;
    return true;
}

template <EuclideanDomain D>
bool compose_battery_on(const ResidueRing<D>& ring, std::size_t iters, std::uint64_t seed,
                        std::string& fail_note) {
    std::mt19937_64 rng(seed);
    const std::uint64_t sz = *ring.size();
    for (std::size_t it = 0; it < iters; ++it) {
        auto c1 = ring.element(rng() % sz);
        auto c2 = c1 * ring.element(rng() % sz);
        auto c3 = c2 * ring.element(rng() % sz);
        auto g21 = generating_solution(c1, c2);
        auto g32 = generating_solution(c2, c3);
        auto composed = compose_generating(g21, g32);
        if (!is_generating(c1, c3, composed) || !generates_exhaustively(c1, c3, composed)) {
            fail_note = ring.describe() + " chain (" + c1.str() + ", " + c2.str() + ", " +
                        c3.str() + ") composed " + composed.str();
            return false;
        }
    }
    return true;
}

inline CriterionResult compose_battery(const Params& prm) {
    CriterionResult r{"compose-generating-battery", false, 0, ""};
    Timer t;
    std::string note;
    IntegerDomain zd;
    bool ok = true;
    for (long long m : {12, 36, 144})
        ok = ok && compose_battery_on(ResidueRing<IntegerDomain>(zd, m), prm.battery_iters,
                                      0xC0DE0003 + m, note);
    PolyDomain f2(2);
    ok = ok && compose_battery_on(ResidueRing<PolyDomain>(f2, {0, 1, 0, 0, 1}), prm.battery_iters,
                                  0xC0DE0103, note);
    r.seconds = t.s();
    r.pass = ok && (!prm.enforce_time || r.seconds < kBatteryBound);
    r.detail = ok ? std::to_string(prm.battery_iters) +
                        " chains per ring over Z_12, Z_36, Z_144 and F_2[x]/(x^4+x)"
                  : "failed at " + note;
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 4: annihilator transfer along c1 | c2, plus the pinned negative
// control showing that unnormalized generators break the identity.

template <EuclideanDomain D>
bool transfer_battery_on(const ResidueRing<D>& ring, std::size_t iters, std::uint64_t seed,
                         std::string& fail_note) {
    std::mt19937_64 rng(seed);
    const std::uint64_t sz = *ring.size();
    for (std::size_t it = 0; it < iters; ++it) {
        auto c1 = ring.element(rng() % sz);
        auto c2 = c1 * ring.element(rng() % sz);
        if (c1.is_zero() || c2.is_zero()) continue;
        if (!ann_transfer_check(c1, c2)) {
            fail_note = ring.describe() + " pair (" + c1.str() + ", " + c2.str() + ")";
            return false;
        }
    }
    return true;
}

inline CriterionResult transfer_battery(const Params& prm) {
    CriterionResult r{"annihilator-transfer-battery", false, 0, ""};
    Timer t;
    std::string note;
    IntegerDomain zd;
    bool ok = true;
    for (long long m : {12, 36, 144})
        ok = ok && transfer_battery_on(ResidueRing<IntegerDomain>(zd, m), prm.battery_iters,
                                       0xC0DE0004 + m, note);
    PolyDomain f2(2);
    ok = ok && transfer_battery_on(ResidueRing<PolyDomain>(f2, {0, 1, 0, 0, 1}), prm.battery_iters,
                                   0xC0DE0104, note);
    // Negative control in Z_144: 38 is a generating solution of 4x = 8, yet
    // with the plain generators 18 and 36 the transfer equality fails; the
    // alternative generator 126 restores it for this particular solution.
    {
        ResidueRing<IntegerDomain> ring(zd, 144);
        auto g = ring.reduce(38);
        bool control = is_generating(ring.reduce(4), ring.reduce(8), g);
        control = control && !(g * ring.reduce(18) == ring.reduce(36));
        control = control && g * ring.reduce(126) == ring.reduce(36);
        if (!control) note = "Z_144 negative control";
        ok = ok && control;
    }
    r.seconds = t.s();
    r.pass = ok && (!prm.enforce_time || r.seconds < kBatteryBound);
    r.detail = ok ? std::to_string(prm.battery_iters) +
                        " pairs per ring plus the unnormalized-generator control"
                  : "failed at " + note;
    return r;
}

// ---------------------------------------------------------------------------
// Criteria 5, 6, 7: exhaustive sweeps over small chains. One pass per chain
// computes the three membership predicates on every matrix, folds the witness
// checks over every member, and replays closure under products and inverses.

struct SweepOutcome {
    std::uint64_t space = 0;
    std::uint64_t invertible = 0;
    std::uint64_t members = 0;
    bool sets_match = true;
    bool prefilter_ok = true;
    bool witness_ok = true;
    bool closure_ok = true;
    double witness_seconds = 0;
    double closure_seconds = 0;
    std::string note;
};

template <EuclideanDomain D>
SweepOutcome sweep_point(const DivisorChain<D>& phi, std::uint64_t closure_pair_cap,
                         std::uint64_t closure_samples, std::uint64_t seed) {
    SweepOutcome out;
    const auto& ring = phi.ring();
    const std::size_t n = phi.size();
    const std::size_t cells = n * n;
    auto ctx = OracleContext<D>::build(phi);
    const std::uint32_t sz = ctx.table.size;

    std::uint64_t space = 1;
    for (std::size_t p = 0; p < cells; ++p) space *= sz;
    out.space = space;

    std::vector<std::uint64_t> pows(cells, 1);
    for (std::size_t p = 1; p < cells; ++p) pows[p] = pows[p - 1] * sz;

    auto fill_from_index = [&](ResidueMatrix<D>& m, std::uint64_t idx) {
        for (std::size_t p = 0; p < cells; ++p) {
            m.set_rep(p / n, p % n, ctx.table.elems[idx % sz]);
            idx /= sz;
        }
    };
    auto index_of_matrix = [&](const ResidueMatrix<D>& m) {
        std::uint64_t idx = 0;
        for (std::size_t p = 0; p < cells; ++p)
            idx += pows[p] * ctx.table.index_of(m.rep_at(p / n, p % n));
        return idx;
    };

    auto phi_m = phi.diag_matrix();
    std::vector<bool> member_bits(space, false);
    std::vector<std::uint64_t> member_idx;

    std::vector<std::uint32_t> digits(cells, 0);
    ResidueMatrix<D> h(ring, n);
    for (std::size_t p = 0; p < cells; ++p) h.set_rep(p / n, p % n, ctx.table.elems[0]);

    for (std::uint64_t idx = 0;; ++idx) {
        bool table_unit = ctx.table.unit[detail::det_idx(ctx.table, digits, n)];
        if (!table_unit) {
            // determinant prefilter; cross-check it against the real
            // invertibility test on a stride
            if ((idx & 1023) == 0 && is_invertible(h)) {
                out.prefilter_ok = false;
                if (out.note.empty()) out.note = "prefilter disagreement at index " + std::to_string(idx);
            }
        } else {
            ++out.invertible;
            bool by_char = is_member(h, phi);
            bool by_struct = structure_accepts(h, phi);
            bool by_oracle = detail::oracle_member_indexed(ctx, digits, n, 1000000);
            if (by_char != by_struct || by_char != by_oracle) {
                out.sets_match = false;
                if (out.note.empty())
                    out.note = "predicate disagreement at index " + std::to_string(idx) + " (" +
                               std::to_string(by_char) + std::to_string(by_struct) +
                               std::to_string(by_oracle) + ")";
            }
            if (by_char) {
                member_bits[idx] = true;
                member_idx.push_back(idx);
                Timer wt;
                auto res = check_structure(h, phi);
                bool w = std::holds_alternative<StructuredMember<D>>(res);
                if (w) {
                    const auto& sm = std::get<StructuredMember<D>>(res);
                    w = mat_mul(h, phi_m) == mat_mul(phi_m, sm.witness) &&
                        det(sm.witness) == det(h);
                }
                if (!w) {
                    out.witness_ok = false;
                    if (out.note.empty()) out.note = "witness failure at index " + std::to_string(idx);
                }
                out.witness_seconds += wt.s();
            }
        }
        std::size_t p = 0;
        while (p < cells && digits[p] + 1 == sz) {
            digits[p] = 0;
            h.set_rep(p / n, p % n, ctx.table.elems[0]);
            ++p;
        }
        if (p == cells) break;
        ++digits[p];
        h.set_rep(p / n, p % n, ctx.table.elems[digits[p]]);
    }
    out.members = member_idx.size();

    Timer ct;
    ResidueMatrix<D> x(ring, n), y(ring, n);
    for (std::uint64_t mi : member_idx) {
        fill_from_index(x, mi);
        if (!member_bits[index_of_matrix(inverse(x))]) {
            out.closure_ok = false;
            if (out.note.empty()) out.note = "inverse escaped at index " + std::to_string(mi);
            break;
        }
    }
    if (out.closure_ok && !member_idx.empty()) {
        auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
            fill_from_index(x, a);
            fill_from_index(y, b);
            if (!member_bits[index_of_matrix(mat_mul(x, y))]) {
                out.closure_ok = false;
                if (out.note.empty())
                    out.note = "product escaped at indices " + std::to_string(a) + ", " +
                               std::to_string(b);
            }
        };
        if (member_idx.size() <= closure_pair_cap) {
            for (std::uint64_t a : member_idx) {
                for (std::uint64_t b : member_idx) {
                    check_pair(a, b);
                    if (!out.closure_ok) break;
                }
                if (!out.closure_ok) break;
            }
        } else {
            // all-pairs is quadratic in the member count; beyond the cap the
            // products are sampled deterministically
            std::mt19937_64 rng(seed);
            for (std::uint64_t k = 0; k < closure_samples && out.closure_ok; ++k)
                check_pair(member_idx[rng() % member_idx.size()],
                           member_idx[rng() % member_idx.size()]);
        }
    }
    out.closure_seconds = ct.s();
    return out;
}

struct SweepGridPoint {
    std::string label;
    long long modulus;
    std::vector<long long> diag;
    bool heavy;
};

inline std::vector<SweepGridPoint> sweep_grid() {
    std::vector<SweepGridPoint> g;
    for (long long m : {4, 8}) {
        std::string suffix = "/Z_" + std::to_string(m);
        g.push_back({"diag(2,2)" + suffix, m, {2, 2}, m == 8});
        g.push_back({"diag(2,4)" + suffix, m, {2, 4}, m == 8});
        g.push_back({"diag(1,2)" + suffix, m, {1, 2}, m == 8});
        g.push_back({"diag(2,0)" + suffix, m, {2, 0}, m == 8});
        g.push_back({"diag(1,0)" + suffix, m, {1, 0}, m == 8});
    }
    g.push_back({"diag(1,2,0)/Z_4", 4, {1, 2, 0}, false});
    g.push_back({"diag(1,2,4)/Z_8", 8, {1, 2, 4}, true});
    return g;
}

template <EuclideanDomain D>
bool sampled_witness_point(const ResidueRing<D>& ring, const std::vector<typename D::Elem>& diag,
                           std::size_t count, std::uint64_t seed, std::string& note) {
    auto phi = build_divisor_chain(ring, diag);
    auto phi_m = phi.diag_matrix();
    for (std::size_t k = 0; k < count; ++k) {
        auto sm = sample_member(phi, seed + k, 256);
        bool ok = is_member(sm.h, phi) && mat_mul(sm.h, phi_m) == mat_mul(phi_m, sm.witness) &&
                  det(sm.witness) == det(sm.h);
        if (!ok) {
            note = ring.describe() + " sample " + std::to_string(k);
            return false;
        }
    }
    return true;
}

inline std::vector<CriterionResult> membership_sweeps(const Params& prm) {
    CriterionResult c5{"membership-oracle-sweep", true, 0, ""};
    CriterionResult c6{"witness-validity", true, 0, ""};
    CriterionResult c7{"group-closure", true, 0, ""};
    IntegerDomain zd;
    std::ostringstream detail;
    double sweep_seconds = 0;
    std::uint64_t total_members = 0;
    bool sets_ok = true, witness_ok = true, closure_ok = true;
    std::string note;
    for (const auto& pt : sweep_grid()) {
        if (pt.heavy && !prm.heavy_sweep) continue;
        ResidueRing<IntegerDomain> ring(zd, pt.modulus);
        std::vector<IntegerDomain::Elem> diag(pt.diag.begin(), pt.diag.end());
        auto phi = build_divisor_chain(ring, diag);
        Timer t;
        auto out = sweep_point(phi, prm.closure_pair_cap, prm.closure_samples, 0xC0DE0007);
        double wall = t.s();
        sweep_seconds += wall - out.witness_seconds - out.closure_seconds;
        c6.seconds += out.witness_seconds;
        c7.seconds += out.closure_seconds;
        total_members += out.members;
        sets_ok = sets_ok && out.sets_match && out.prefilter_ok;
        witness_ok = witness_ok && out.witness_ok;
        closure_ok = closure_ok && out.closure_ok;
        if (note.empty() && !out.note.empty()) note = pt.label + ": " + out.note;
        detail << pt.label << " members=" << out.members << " invertible=" << out.invertible
               << "; ";
    }
    c5.seconds = sweep_seconds;
    c5.pass = sets_ok && (!prm.enforce_time || sweep_seconds < kSweepBound);
    c5.detail = sets_ok ? detail.str() : note;

    // Criterion 6 adds sampled members over chains too large to enumerate.
    {
        Timer t;
        std::string snote;
        std::size_t per_point = prm.sampled_members / 4;
        bool ok = true;
        ok = ok && sampled_witness_point(ResidueRing<IntegerDomain>(zd, 720),
                                         {IntegerDomain::Elem(2), IntegerDomain::Elem(4),
                                          IntegerDomain::Elem(24), IntegerDomain::Elem(0)},
                                         per_point, 0xC0DE1006, snote);
        ok = ok && sampled_witness_point(ResidueRing<IntegerDomain>(zd, 1024),
                                         {IntegerDomain::Elem(1), IntegerDomain::Elem(2),
                                          IntegerDomain::Elem(8), IntegerDomain::Elem(64)},
                                         per_point, 0xC0DE2006, snote);
        ok = ok && sampled_witness_point(ResidueRing<IntegerDomain>(zd, 36),
                                         {IntegerDomain::Elem(1), IntegerDomain::Elem(1),
                                          IntegerDomain::Elem(3), IntegerDomain::Elem(6),
                                          IntegerDomain::Elem(0)},
                                         per_point, 0xC0DE3006, snote);
        PolyDomain f2(2);
        ok = ok && sampled_witness_point(ResidueRing<PolyDomain>(f2, {0, 1, 0, 0, 1}),
                                         {PolyDomain::Elem{1}, PolyDomain::Elem{0, 1},
                                          PolyDomain::Elem{0, 0, 1}, PolyDomain::Elem{}},
                                         per_point, 0xC0DE4006, snote);
        c6.seconds += t.s();
        witness_ok = witness_ok && ok;
        if (note.empty() && !snote.empty()) note = snote;
    }
    c6.pass = witness_ok;
    c6.detail = witness_ok ? std::to_string(total_members) + " enumerated members plus " +
                                 std::to_string(prm.sampled_members / 4 * 4) + " sampled members"
                           : note;
    c7.pass = closure_ok;
    c7.detail = closure_ok
                    ? "inverses of every enumerated member; products exhaustive up to " +
                          std::to_string(prm.closure_pair_cap) + " members, sampled beyond"
                    : note;
    return {c5, c6, c7};
}

// ---------------------------------------------------------------------------
// Criterion 8: symbolic determinant identities.

inline CriterionResult symbolic_determinants(const Params& prm) {
    CriterionResult r{"symbolic-determinants", false, 0, ""};
    Timer t;
    bool ok = true;
    std::uint64_t terms = 0;
    for (std::size_t n = 2; n <= prm.sym_n_max; ++n) {
        ok = ok && sym::check_term_symmetry(n) && sym::check_mirrored_det(n);
        terms += sym::det_sym(sym::build_mirrored_pair(n).first).terms.size();
        for (std::size_t k = 0; k < prm.sym_subst && ok; ++k)
            ok = ok && sym::mirrored_det_numeric_crosscheck(n, 0xC0DE0008 + n * 1000 + k);
    }
    r.seconds = t.s();
    r.pass = ok && (!prm.enforce_time || r.seconds < kSymbolicBound);
    r.detail = "n = 2.." + std::to_string(prm.sym_n_max) + ", " + std::to_string(terms) +
               " expansion terms, " + std::to_string(prm.sym_subst) + " substitutions per size";
    return r;
}

// ---------------------------------------------------------------------------
// Criterion 9: SNF round-trips on random integer matrices.

inline CriterionResult snf_roundtrip(const Params& prm) {
    CriterionResult r{"snf-roundtrip", false, 0, ""};
    Timer t;
    IntegerDomain dom;
    std::mt19937_64 rng(0xC0DE0009);
    bool ok = true;
    for (std::size_t it = 0; it < prm.snf_iters && ok; ++it) {
        std::size_t n = 1 + rng() % 4;
        DomainMatrix<IntegerDomain> a(dom, n);
        for (std::size_t p = 0; p < n * n; ++p)
            a.a[p] = IntegerDomain::Elem(static_cast<long long>(rng() % 101) - 50);
        auto snf = smith_normal_form(dom, a);
        auto lhs = domain_mat_mul(dom, domain_mat_mul(dom, snf.u, a), snf.v);
        ok = ok && lhs.a == snf.d.a;
        auto du = det_over_domain(dom, snf.u), dv = det_over_domain(dom, snf.v);
        ok = ok && dom.is_unit(du) && dom.is_unit(dv);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                if (i != j) ok = ok && snf.d.at(i, j).is_zero();
        for (std::size_t i = 0; i + 1 < n && ok; ++i)
            ok = ok && dom.divides(snf.d.at(i, i), snf.d.at(i + 1, i + 1));
        for (std::size_t i = 0; i < n && ok; ++i) ok = ok && snf.d.at(i, i) >= 0;
    }
    r.seconds = t.s();
    r.pass = ok;
    r.detail = std::to_string(prm.snf_iters) + " random matrices, n <= 4, entries in [-50, 50]";
    return r;
}

} // namespace vdetail

inline std::vector<CriterionResult> run_verification(VerifyLevel level) {
    auto prm = vdetail::params_for(level);
    std::vector<CriterionResult> out;
    out.push_back(vdetail::worked_example_z36(prm));
    out.push_back(vdetail::worked_example_z144(prm));
    out.push_back(vdetail::compose_battery(prm));
    out.push_back(vdetail::transfer_battery(prm));
    for (auto& r : vdetail::membership_sweeps(prm)) out.push_back(std::move(r));
    out.push_back(vdetail::symbolic_determinants(prm));
    out.push_back(vdetail::snf_roundtrip(prm));
    return out;
}

} // namespace zel
