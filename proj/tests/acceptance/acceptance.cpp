// Acceptance gate: runs every criterion with its tolerance and time budget and
// prints one PASS/FAIL line per criterion. Exit status is 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fls/arrangement.hpp"
#include "fls/decomposition.hpp"
#include "fls/error.hpp"
#include "fls/frobenius.hpp"
#include "fls/partition.hpp"
#include "oracles.hpp"

using namespace fls;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

constexpr double kTimeC1 = 30.0;
constexpr double kTimeC2 = 60.0;
constexpr double kTimeC5 = 300.0;
constexpr double kTimeC7 = 300.0;
constexpr int kC2Instances = 200;
constexpr int kC3MinQualified = 50;
constexpr double kAxiomTol = 1e-7;
constexpr double kGoldenTol = 1e-10;
constexpr double kFirstKindTol = 1e-9;
constexpr double kSpreadTol = 1e-6;
constexpr double kSecondKindTol = 1e-6;
constexpr double kFlatStepTol = 1e-7;
constexpr int kFlatStepMoves = 100;

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

struct ExchangeCounts {
    long circuit_checks = 0;
    long union_checks = 0;
};

int matroid_violations(const Matroid& m, const RationalMatrix* rows, ExchangeCounts& counts) {
    const int n = m.ground().size();
    const Subset full = Subset::full(n);
    int bad = 0;
    if (!m.is_independent({})) ++bad;
    std::vector<std::vector<Subset>> maximal(std::size_t{1} << n);
    for_each_subset(full, [&](Subset a) {
        const bool ind = m.is_independent(a);
        if (rows && ind != oracle::rows_independent_by_minors(*rows, a)) ++bad;
        if (ind) a.for_each([&](int e) { bad += !m.is_independent(a.without(e)); });
        auto& mx = maximal[a.mask()];
        mx = oracle::maximal_independent_subsets(m, a);
        for (Subset s : mx) bad += s.size() != m.rank(a);
        const Subset greedy = m.max_independent_subset(a);
        bad += !(greedy.is_subset_of(a) && m.is_independent(greedy) && greedy.size() == m.rank(a));
        if (ind)
            (full - a).for_each([&](int e) {
                ++counts.circuit_checks;
                bad += m.circuits_within(a.with(e)).size() > 1;
            });
    });
    for_each_subset(full, [&](Subset a1) {
        for_each_subset(full, [&](Subset a2) {
            for (Subset i1 : maximal[a1.mask()])
                for (Subset i2 : maximal[a2.mask()]) {
                    if (!m.is_independent(i1 | i2)) continue;
                    ++counts.union_checks;
                    const auto& u = maximal[(a1 | a2).mask()];
                    const auto& c = maximal[(a1 & a2).mask()];
                    bad += std::find(u.begin(), u.end(), i1 | i2) == u.end();
                    bad += std::find(c.begin(), c.end(), i1 & i2) == c.end();
                }
        });
    });
    return bad;
}

Outcome criterion1() {
    std::mt19937 rng(1001);
    std::uniform_int_distribution<int> nd(2, 6), kd(1, 3);
    int violations = 0, count = 0;
    ExchangeCounts counts;
    for (int i = 0; i < 25; ++i) {
        const int n = nd(rng);
        const int k = std::min(kd(rng), n);
        const auto rows = oracle::random_rational_matrix(rng, n, k);
        auto m = make_linear(rows);
        violations += matroid_violations(*m, &rows, counts);
        ++count;
    }
    for (int n = 1; n <= 6; ++n)
        for (int l = 0; l <= n; ++l) {
            violations += matroid_violations(*make_uniform(l, n), nullptr, counts);
            ++count;
        }
    return {violations == 0, fmt("%d violations over %d matroids (%ld circuit checks, %ld union checks)", violations,
                                 count, counts.circuit_checks, counts.union_checks)};
}

// ------------------------------------------------------------ criteria 2 and 3

PartitionProblem partition_instance(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(1, 8), kd(1, 3), coin(0, 9);
    const int n = nd(rng);
    std::vector<MatroidPtr> ms;
    for (int i = 0; i < 2; ++i) {
        if (coin(rng) < 2) {
            std::uniform_int_distribution<int> ld(0, n);
            ms.push_back(make_uniform(ld(rng), n));
        } else {
            ms.push_back(make_linear(oracle::random_rational_matrix(rng, n, kd(rng))));
        }
    }
    const int tight = std::max(0, n - ms[0]->rank() - ms[1]->rank());
    std::uniform_int_distribution<int> ld(0, n);
    ms.push_back(make_uniform(coin(rng) < 7 ? tight : ld(rng), n));
    return PartitionProblem(ms);
}

Outcome criterion2(std::vector<PartitionProblem>& instances) {
    std::mt19937 rng(2002);
    int mismatches = 0, invalid = 0, certs = 0;
    for (int i = 0; i < kC2Instances; ++i) {
        instances.push_back(partition_instance(rng));
        const auto& p = instances.back();
        const auto r = solve_partition(p);
        const auto beta = beta_holds_bruteforce(p);
        const bool found = std::holds_alternative<PartitionCertificate>(r);
        mismatches += found != beta.holds;
        if (found) {
            ++certs;
            invalid += !is_valid_certificate(p, std::get<PartitionCertificate>(r));
        } else {
            invalid += !is_valid_witness(p, std::get<DeficiencyWitness>(r));
        }
        if (beta.witness) invalid += !is_valid_witness(p, *beta.witness);
    }
    return {mismatches == 0 && invalid == 0,
            fmt("%d instances, %d certificates, %d outcome mismatches, %d invalid results", kC2Instances, certs,
                mismatches, invalid)};
}

Outcome criterion3(const std::vector<PartitionProblem>& instances) {
    int qualified = 0, unequal = 0;
    for (const auto& p : instances) {
        const int l = trailing_uniform_rank(p);
        if (l < 1) continue;
        if (!std::holds_alternative<PartitionCertificate>(solve_partition(p))) continue;
        if (p.universe().size() != l + p.rank_sum(p.universe(), p.count() - 1)) continue;
        ++qualified;
        unequal += a_min(p) != a_par(p);
    }
    return {unequal == 0 && qualified >= kC3MinQualified,
            fmt("%d of %zu instances qualify, %d disagreements", qualified, instances.size(), unequal)};
}

// ------------------------------------------------------------ criteria 4 and 5

std::vector<std::pair<std::string, MatroidPtr>> system_matroids() {
    return {{"U(1,3)", make_uniform(1, 3)},
            {"U(2,4)", make_uniform(2, 4)},
            {"(1,0)/(0,1)/(1,1)", make_linear({{1, 0}, {0, 1}, {1, 1}})}};
}

Outcome criterion4() {
    long strong = 0, bad = 0;
    for (const auto& [name, matroid] : system_matroids())
        for (int m = 1; m <= 3; ++m) {
            const SystemContext ctx(matroid, m);
            for (int l = 0; m * ctx.k() + l <= 10; ++l)
                for (const System& t : systems_of_size(ctx.n(), m * ctx.k() + l)) {
                    if (!is_strong(ctx, t, l)) continue;
                    ++strong;
                    for_each_subset(Subset::full(ctx.n()), [&](Subset b) {
                        bad += t.mass(b) > l + m * ctx.matroid().rank(b);
                    });
                    const auto g = tight_family(ctx, t, l);
                    for (Subset a : g)
                        for (Subset b : g) {
                            bad += std::find(g.begin(), g.end(), a | b) == g.end();
                            bad += std::find(g.begin(), g.end(), a & b) == g.end();
                        }
                    const Subset amin = a_min_system(ctx, t, l);
                    if (l == 0)
                        bad += !amin.empty();
                    else
                        bad += a_dec(ctx, t, l) != amin;
                }
        }
    return {bad == 0, fmt("%ld strong systems, %ld violations", strong, bad)};
}

Outcome criterion5() {
    long checked = 0, bad = 0;
    for (const auto& [name, matroid] : system_matroids())
        for (int m = 1; m <= 2; ++m) {
            const SystemContext ctx(matroid, m);
            for (int extra = 1; extra <= 3; ++extra)
                for (const System& t : systems_of_size(ctx.n(), m * ctx.k() + extra)) {
                    const auto report = equivalence_report(ctx, t);
                    if (report.nodes.empty()) continue;
                    ++checked;
                    bad += report.component_count != 1;
                }
        }
    return {bad == 0, fmt("%ld systems with good decompositions, %ld with more than one class", checked, bad)};
}

// ------------------------------------------------------------ criteria 6 to 8

struct Fixture {
    std::string name;
    std::shared_ptr<ArrangementStructure> structure;
};

std::vector<Fixture> arrangement_fixtures() {
    std::vector<Fixture> out;
    out.push_back({"two lines", structure_from_arrangement(oracle::two_line_fixture(), 2)});
    std::mt19937 rng(6006);
    for (int i = 0; i < 10; ++i) {
        const int n = 3 + i % 2;
        out.push_back({fmt("random n=%d #%d", n, i),
                       structure_from_arrangement(oracle::random_line_arrangement(rng, n), 2)});
    }
    return out;
}

std::vector<Point> samples_for(const FlatFrameStructure& s) {
    return polydisc_samples(s.basepoint(), 0.05 * (1.0 + sup_norm(s.basepoint())), 4);
}

Outcome criterion6(const std::vector<Fixture>& fixtures) {
    double worst = 0.0, worst_relation = 0.0, golden = 0.0;
    for (const auto& f : fixtures) {
        const auto samples = samples_for(*f.structure);
        VerifyOptions opt;
        opt.throw_on_violation = false;
        const auto report = verify_axioms(*f.structure, samples, opt);
        worst = std::max(worst, report.max());
        worst_relation = std::max(worst_relation, diagnose(*f.structure, samples).linear_relation);
    }
    const auto& two = *fixtures.front().structure;
    auto points = samples_for(two);
    points.push_back(two.basepoint());
    for (const Point& z : points) {
        const Complex diff = z(0) - z(1);
        golden = std::max(golden, std::abs(unit_pairing(two, System(2), z) + diff * diff / 8.0));
        golden = std::max(golden, std::abs(unit_pairing(two, System(std::vector<int>{2, 0}), z) + 0.5));
    }
    return {worst <= kAxiomTol && worst_relation <= kAxiomTol && golden <= kGoldenTol,
            fmt("%zu fixtures, max axiom residual %.2e, max |sum b_i C_i| %.2e, golden error %.2e", fixtures.size(),
                worst, worst_relation, golden)};
}

Outcome criterion7(const std::vector<Fixture>& fixtures) {
    double q_defect = 0.0, spread = 0.0, l_defect = 0.0;
    std::size_t coefficients = 0;
    for (const auto& f : fixtures) {
        const auto& s = *f.structure;
        const auto q = build_first_kind(s);
        q_defect = std::max(q_defect, first_kind_defect(s, q, samples_for(s)));
        PotentialOptions opt;
        opt.fail_on_spread = false;
        const auto l = build_second_kind(s, s.m() * s.k() + 3, opt);
        spread = std::max(spread, l.spread_max);
        coefficients += l.provenance.size();
        l_defect = std::max(l_defect, second_kind_defect(s, l.series, s.basepoint()));
    }
    return {q_defect <= kFirstKindTol && spread <= kSpreadTol && l_defect <= kSecondKindTol,
            fmt("first-kind defect %.2e, coefficient spread %.2e over %zu coefficients, second-kind defect %.2e",
                q_defect, spread, coefficients, l_defect)};
}

Outcome criterion8(const std::vector<Fixture>& fixtures) {
    std::mt19937 rng(8008);
    double worst = 0.0;
    int moves = 0;
    while (moves < kFlatStepMoves) {
        const auto& s = *fixtures[rng() % fixtures.size()].structure;
        const SystemContext ctx(s.matroid_ptr(), s.m());
        const auto candidates = systems_of_size(s.n(), s.m() * s.k() + 1);
        const System& t2 = candidates[rng() % candidates.size()];
        const int a = 1 + static_cast<int>(rng() % s.n());
        const int b = 1 + static_cast<int>(rng() % s.n());
        if (t2[a] == 0 || !is_strong(ctx, t2 - System::unit(s.n(), a), 0)) continue;
        worst = std::max(worst, flat_step_residual(s, t2, a, b));
        ++moves;
    }

    long exact_moves = 0, bad = 0, free_moves = 0, shared_moves = 0;
    for (const auto& [name, matroid] : system_matroids())
        for (int m = 1; m <= 2; ++m) {
            const SystemContext ctx(matroid, m);
            for (int extra = 2; extra <= 3; ++extra)
                for (const System& t : systems_of_size(ctx.n(), m * ctx.k() + extra)) {
                    const auto goods = all_good_decompositions(ctx, t);
                    for (const auto& x : goods)
                        for (const auto& y : goods) {
                            if (x == y) continue;
                            const auto move = descent_move(ctx, x, y);
                            ++exact_moves;
                            bad += move.distance_after != move.distance_before - 2;
                            bad += !locally_related(ctx, move.t_side, y) || !locally_related(ctx, move.s_side, x);
                            (move.kind == DescentMove::Kind::free_remainder ? free_moves : shared_moves)++;
                        }
                }
        }
    return {worst <= kFlatStepTol && bad == 0 && free_moves > 0 && shared_moves > 0,
            fmt("%d flat-step moves, max residual %.2e; %ld descent moves (%ld free, %ld shared), %ld failures",
                moves, worst, exact_moves, free_moves, shared_moves, bad)};
}

}  // namespace

int main() {
    int failed = 0;
    const auto run = [&](int id, const char* title, double budget, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = budget <= 0.0 || secs < budget;
        const bool pass = out.pass && in_time;
        failed += !pass;
        std::printf("criterion %d %s  %s: %s (%.2f s%s)\n", id, pass ? "PASS" : "FAIL", title, out.detail.c_str(),
                    secs, in_time ? "" : ", over budget");
        std::fflush(stdout);
    };

    std::vector<PartitionProblem> instances;
    std::vector<Fixture> fixtures;
    run(1, "matroid axioms and exchange properties", kTimeC1, [] { return criterion1(); });
    run(2, "partition exists iff rank inequality", kTimeC2, [&] { return criterion2(instances); });
    run(3, "minimal tight set equals last-part set", 0.0, [&] { return criterion3(instances); });
    run(4, "strong systems: rank inequality, lattice, remainder sets", 0.0, [] { return criterion4(); });
    run(5, "good decompositions form one class", kTimeC5, [] { return criterion5(); });
    run(6, "arrangement structure axioms and golden values", 0.0, [&] {
        fixtures = arrangement_fixtures();
        return criterion6(fixtures);
    });
    run(7, "potentials of both kinds", kTimeC7, [&] { return criterion7(fixtures); });
    run(8, "flat-step identity and descent moves", 0.0, [&] { return criterion8(fixtures); });
    std::printf("%s: %d of 8 criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
