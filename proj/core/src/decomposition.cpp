#include "fls/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "fls/error.hpp"

namespace fls {

SystemContext::SystemContext(MatroidPtr matroid, int m) : matroid_(std::move(matroid)), k_(0), m_(m) {
    if (!matroid_) fail(ErrorCode::domain, "system context needs a matroid");
    if (m_ < 1) fail(ErrorCode::domain, "m must be positive");
    k_ = matroid_->rank();
    if (k_ < 1) fail(ErrorCode::domain, "the matroid must have positive rank");
    for (Subset b : matroid_->bases()) bases_.push_back(System::indicator(n(), b));
    std::sort(bases_.begin(), bases_.end());
}

void SystemContext::require_labels(const System& t) const {
    if (t.labels() != n())
        fail(ErrorCode::domain, "system has " + std::to_string(t.labels()) + " labels, matroid has " +
                                    std::to_string(n()));
}

System StrongDecomposition::total() const {
    System sum = remainder;
    for (const auto& b : bases) sum += b;
    return sum;
}

namespace {

void require_arity(const SystemContext& ctx, const System& t, int l) {
    ctx.require_labels(t);
    if (l < 0) fail(ErrorCode::arity, "remainder size l must be nonnegative");
    if (t.size() != ctx.m() * ctx.k() + l)
        fail(ErrorCode::arity, "system " + t.to_string() + " has size " + std::to_string(t.size()) + ", expected mk+l=" +
                                   std::to_string(ctx.m() * ctx.k() + l));
}

StrongDecomposition append_remainder(StrongDecomposition base_only, int n, int label) {
    base_only.remainder = System::unit(n, label);
    return base_only;
}

}  // namespace

SystemLift lift_system(const SystemContext& ctx, const System& t, int l) {
    require_arity(ctx, t, l);
    if (t.size() > max_ground_size) fail(ErrorCode::size_bound, "system too large to lift");
    std::vector<int> image;
    image.reserve(static_cast<std::size_t>(t.size()));
    for (int j = 1; j <= t.labels(); ++j)
        for (int c = 0; c < t[j]; ++c) image.push_back(j);
    auto lift = std::make_shared<const LiftedMatroid>(ctx.matroid_ptr(), std::move(image));
    std::vector<MatroidPtr> matroids(static_cast<std::size_t>(ctx.m()), lift);
    matroids.push_back(make_uniform(l, t.size()));
    return SystemLift{lift, PartitionProblem(std::move(matroids))};
}

bool is_base(const SystemContext& ctx, const System& t) {
    ctx.require_labels(t);
    if (t.size() != ctx.k()) return false;
    for (int v : t.values())
        if (v > 1) return false;
    return ctx.matroid().is_independent(t.support());
}

std::variant<StrongDecomposition, RankObstruction> try_strong_decomposition(const SystemContext& ctx,
                                                                           const System& t, int l) {
    const SystemLift lifted = lift_system(ctx, t, l);
    const auto result = solve_partition(lifted.problem);
    const int n = ctx.n();
    if (const auto* cert = std::get_if<PartitionCertificate>(&result)) {
        StrongDecomposition dec;
        for (int i = 0; i < ctx.m(); ++i) dec.bases.push_back(System::indicator(n, lifted.lift->image(cert->parts[i])));
        std::sort(dec.bases.begin(), dec.bases.end());
        dec.remainder = System(n);
        cert->parts.back().for_each([&](int e) { dec.remainder.at(lifted.lift->image_of(e)) += 1; });
        if (dec.total() != t) fail(ErrorCode::internal, "lifted partition does not reassemble the system");
        for (const auto& b : dec.bases)
            if (!is_base(ctx, b)) fail(ErrorCode::internal, "lifted partition produced a non-base part");
        return dec;
    }
    const auto& w = std::get<DeficiencyWitness>(result);
    RankObstruction obstruction;
    obstruction.set = lifted.lift->image(w.set);
    obstruction.mass = t.mass(obstruction.set);
    obstruction.bound = l + ctx.m() * ctx.matroid().rank(obstruction.set);
    if (obstruction.mass <= obstruction.bound)
        fail(ErrorCode::internal, "partition witness does not project to a rank obstruction");
    return obstruction;
}

std::optional<StrongDecomposition> find_strong_decomposition(const SystemContext& ctx, const System& t, int l) {
    auto r = try_strong_decomposition(ctx, t, l);
    if (auto* dec = std::get_if<StrongDecomposition>(&r)) return std::move(*dec);
    return std::nullopt;
}

bool is_strong(const SystemContext& ctx, const System& t, int l) {
    return find_strong_decomposition(ctx, t, l).has_value();
}

std::vector<StrongDecomposition> enumerate_strong_decompositions(const SystemContext& ctx, const System& t, int l,
                                                                 const EnumerationLimits& limits) {
    require_arity(ctx, t, l);
    const auto& bases = ctx.base_systems();
    std::vector<StrongDecomposition> out;
    std::vector<System> chosen;
    // Bases are picked with nondecreasing index, so each multiset appears once.
    auto rec = [&](auto&& self, std::size_t from, const System& left) -> void {
        if (static_cast<int>(chosen.size()) == ctx.m()) {
            if (out.size() >= limits.max_items)
                fail(ErrorCode::size_bound, "strong decomposition enumeration exceeded its bound");
            out.push_back(StrongDecomposition{chosen, left});
            return;
        }
        for (std::size_t i = from; i < bases.size(); ++i) {
            if (!bases[i].leq(left)) continue;
            chosen.push_back(bases[i]);
            self(self, i, left - bases[i]);
            chosen.pop_back();
        }
    };
    rec(rec, 0, t);
    return out;
}

std::optional<RankObstruction> rank_inequality_violation(const SystemContext& ctx, const System& t, int l) {
    ctx.require_labels(t);
    if (ctx.n() > 20) fail(ErrorCode::size_bound, "rank inequality enumeration limited to 20 labels");
    std::optional<RankObstruction> out;
    for_each_subset(ctx.matroid().ground_subset(), [&](Subset b) {
        if (out) return;
        const int mass = t.mass(b);
        const int bound = l + ctx.m() * ctx.matroid().rank(b);
        if (mass > bound) out = RankObstruction{b, mass, bound};
    });
    return out;
}

std::vector<GoodDecomposition> all_good_decompositions(const SystemContext& ctx, const System& t,
                                                       const EnumerationLimits& limits) {
    ctx.require_labels(t);
    const int target = ctx.m() * ctx.k() + 1;
    if (t.size() < target)
        fail(ErrorCode::arity, "good decompositions need |T| >= mk+1 = " + std::to_string(target));
    if (t.size() > limits.max_system_size)
        fail(ErrorCode::size_bound, "system size " + std::to_string(t.size()) + " exceeds enumeration bound " +
                                        std::to_string(limits.max_system_size));
    std::vector<GoodDecomposition> out;
    for (const System& t2 : subsystems_of_size(t, target)) {
        auto dec = find_strong_decomposition(ctx, t2, 1);
        if (!dec) continue;
        if (out.size() >= limits.max_items) fail(ErrorCode::size_bound, "too many good decompositions");
        out.push_back(GoodDecomposition{t - t2, t2, std::move(*dec)});
    }
    return out;
}

namespace {

void require_same_total(const GoodDecomposition& a, const GoodDecomposition& b) {
    if (a.t1 + a.t2 != b.t1 + b.t2) fail(ErrorCode::domain, "good decompositions of different systems");
}

bool related_strict(const SystemContext& ctx, const GoodDecomposition& a, const GoodDecomposition& b) {
    const auto decs_a = enumerate_strong_decompositions(ctx, a.t2, 1);
    const auto decs_b = enumerate_strong_decompositions(ctx, b.t2, 1);
    for (const auto& da : decs_a) {
        std::vector<System> pa = da.bases;
        std::sort(pa.begin(), pa.end());
        do {
            for (const auto& db : decs_b) {
                std::vector<System> pb = db.bases;
                std::sort(pb.begin(), pb.end());
                do {
                    bool same = true;
                    for (std::size_t j = 0; j < pa.size() && same; ++j) same = pa[j] == pb[j];
                    if (same) return true;
                } while (std::next_permutation(pb.begin(), pb.end()));
            }
        } while (std::next_permutation(pa.begin(), pa.end()));
    }
    return false;
}

// Base sums t2 - [a] over the remainder labels a of t2.
std::set<System> base_sums(const SystemContext& ctx, const System& t2) {
    std::set<System> sums;
    t2.support().for_each([&](int a) {
        System reduced = t2 - System::unit(ctx.n(), a);
        if (is_strong(ctx, reduced, 0)) sums.insert(std::move(reduced));
    });
    return sums;
}

}  // namespace

bool locally_related(const SystemContext& ctx, const GoodDecomposition& a, const GoodDecomposition& b,
                     MatchMode mode) {
    require_same_total(a, b);
    if (mode == MatchMode::strict_order) return related_strict(ctx, a, b);
    for (const auto& dec : enumerate_strong_decompositions(ctx, a.t2, 1)) {
        const System shared = a.t2 - dec.remainder;
        if (shared.leq(b.t2)) return true;
    }
    return false;
}

EquivalenceReport equivalence_report(const SystemContext& ctx, const System& t, MatchMode mode,
                                     const EnumerationLimits& limits) {
    EquivalenceReport report;
    report.nodes = all_good_decompositions(ctx, t, limits);
    const std::size_t count = report.nodes.size();

    std::vector<std::set<System>> sums;
    if (mode == MatchMode::unordered) {
        sums.reserve(count);
        for (const auto& node : report.nodes) sums.push_back(base_sums(ctx, node.t2));
    }

    std::vector<std::size_t> parent(count);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            bool related = false;
            if (mode == MatchMode::unordered) {
                for (const auto& s : sums[i])
                    if (sums[j].count(s)) {
                        related = true;
                        break;
                    }
            } else {
                related = locally_related(ctx, report.nodes[i], report.nodes[j], mode);
            }
            if (!related) continue;
            report.edges.emplace_back(i, j);
            const std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }
    }

    report.component.assign(count, 0);
    std::vector<std::size_t> id_of_root(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t r = find(i);
        if (id_of_root[r] == count) id_of_root[r] = report.component_count++;
        report.component[i] = id_of_root[r];
    }
    return report;
}

namespace {

void require_strong(const SystemContext& ctx, const System& t, int l) {
    require_arity(ctx, t, l);
    if (!is_strong(ctx, t, l)) fail(ErrorCode::precondition, "system " + t.to_string() + " is not strong");
}

}  // namespace

std::vector<Subset> tight_family(const SystemContext& ctx, const System& t, int l) {
    require_strong(ctx, t, l);
    std::vector<Subset> family;
    for_each_subset(t.support(), [&](Subset b) {
        if (t.mass(b) == l + ctx.m() * ctx.matroid().rank(b)) family.push_back(b);
    });
    if (family.empty() || family.back() != t.support())
        fail(ErrorCode::internal, "supp T is not tight for a strong system");
    return family;
}

Subset a_min_system(const SystemContext& ctx, const System& t, int l) {
    const auto family = tight_family(ctx, t, l);
    Subset meet = t.support();
    for (Subset b : family) meet = meet & b;
    if (t.mass(meet) != l + ctx.m() * ctx.matroid().rank(meet))
        fail(ErrorCode::internal, "intersection of the tight family is not tight");
    return meet;
}

Subset a_dec(const SystemContext& ctx, const System& t, int l) {
    if (l < 1) fail(ErrorCode::precondition, "A_dec needs l >= 1");
    require_strong(ctx, t, l);
    const SystemLift lifted = lift_system(ctx, t, l);
    Subset out;
    t.support().for_each([&](int b) {
        const Subset fibre = lifted.lift->preimage(Subset{b});
        const int e = fibre.labels().front();
        if (a_par_contains(lifted.problem, e)) out.insert(b);
    });
    return out;
}

RemainderAlternatives remainder_alternatives(const SystemContext& ctx, const System& s, const System& t) {
    const int n = ctx.n();
    const Subset dec_t = a_dec(ctx, t, 1);
    const Subset dec_s = a_dec(ctx, s, 1);
    RemainderAlternatives out;

    dec_t.for_each([&](int i) {
        if (out.free_label || t[i] <= s[i]) return;
        auto reduced = find_strong_decomposition(ctx, t - System::unit(n, i), 0);
        if (!reduced) fail(ErrorCode::internal, "remainder label without decomposition");
        out.free_label = i;
        out.free_witness = append_remainder(std::move(*reduced), n, i);
    });

    out.shared = dec_s.is_subset_of(dec_t);
    if (out.shared) {
        dec_s.for_each([&](int a) {
            auto ds = find_strong_decomposition(ctx, s - System::unit(n, a), 0);
            auto dt = find_strong_decomposition(ctx, t - System::unit(n, a), 0);
            if (!ds || !dt) fail(ErrorCode::internal, "remainder label without decomposition");
            out.shared_witnesses.emplace_back(append_remainder(std::move(*ds), n, a),
                                              append_remainder(std::move(*dt), n, a));
        });
    }
    if (!out.free_label && !out.shared)
        fail(ErrorCode::internal, "neither remainder alternative holds for " + s.to_string() + " and " + t.to_string());
    return out;
}

namespace {

int first_label(int n, auto&& pred) {
    for (int j = 1; j <= n; ++j)
        if (pred(j)) return j;
    return 0;
}

GoodDecomposition make_good(const System& t1, const System& t2, std::vector<System> bases, int n, int label) {
    StrongDecomposition w{std::move(bases), System::unit(n, label)};
    std::sort(w.bases.begin(), w.bases.end());
    return GoodDecomposition{t1, t2, std::move(w)};
}

}  // namespace

DescentMove descent_move(const SystemContext& ctx, const GoodDecomposition& s, const GoodDecomposition& t) {
    require_same_total(s, t);
    if (s == t) fail(ErrorCode::domain, "descent needs two different good decompositions");
    const int n = ctx.n();
    const auto alt = remainder_alternatives(ctx, s.t2, t.t2);
    DescentMove move;
    move.distance_before = hamming_distance(s.t2, t.t2);

    if (alt.free_label) {
        const int i = *alt.free_label;
        const int j = first_label(n, [&](int x) { return t.t1[x] > s.t1[x] && t.t2[x] < s.t2[x]; });
        if (j == 0) fail(ErrorCode::internal, "no exchange label for the free-remainder move");
        const System ui = System::unit(n, i), uj = System::unit(n, j);
        move.kind = DescentMove::Kind::free_remainder;
        move.t_side = make_good(t.t1 - uj + ui, t.t2 + uj - ui, alt.free_witness->bases, n, j);
        move.s_side = s;
        move.distance_after = hamming_distance(move.t_side.t2, s.t2);
        return move;
    }

    const auto& [dec_s, dec_t] = alt.shared_witnesses.front();
    const int a = dec_s.remainder.support().labels().front();
    const int b = first_label(n, [&](int x) { return t.t1[x] > s.t1[x] && t.t2[x] < s.t2[x]; });
    const int c = first_label(n, [&](int x) { return t.t1[x] < s.t1[x] && t.t2[x] > s.t2[x]; });
    if (b == 0 || c == 0) fail(ErrorCode::internal, "no exchange labels for the shared-remainder move");
    const System ua = System::unit(n, a), ub = System::unit(n, b), uc = System::unit(n, c);
    move.kind = DescentMove::Kind::shared_remainder;
    move.t_side = make_good(t.t1 - ub + ua, t.t2 + ub - ua, dec_t.bases, n, b);
    move.s_side = make_good(s.t1 - uc + ua, s.t2 + uc - ua, dec_s.bases, n, c);
    move.distance_after = hamming_distance(move.t_side.t2, move.s_side.t2);
    return move;
}

std::vector<GoodDecomposition> descent_chain(const SystemContext& ctx, const GoodDecomposition& s,
                                             const GoodDecomposition& t) {
    std::vector<GoodDecomposition> left{s}, right{t};
    int guard = hamming_distance(s.t2, t.t2) / 2 + 1;
    while (!(left.back() == right.back())) {
        if (guard-- <= 0) fail(ErrorCode::internal, "descent did not terminate");
        const DescentMove move = descent_move(ctx, left.back(), right.back());
        if (move.distance_after != move.distance_before - 2)
            fail(ErrorCode::internal, "descent move did not reduce the distance by two");
        if (move.kind == DescentMove::Kind::shared_remainder) left.push_back(move.s_side);
        right.push_back(move.t_side);
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

}  // namespace fls
