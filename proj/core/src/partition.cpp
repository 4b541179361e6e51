#include "fls/partition.hpp"

#include <array>
#include <deque>
#include <limits>

#include "fls/error.hpp"

namespace fls {

PartitionProblem::PartitionProblem(std::vector<MatroidPtr> matroids)
    : PartitionProblem(matroids, matroids.empty() ? Subset{} : matroids.front()->ground_subset()) {}

PartitionProblem::PartitionProblem(std::vector<MatroidPtr> matroids, Subset universe)
    : ground_(matroids.empty() ? GroundSet(1) : matroids.front()->ground()),
      matroids_(std::move(matroids)),
      universe_(universe) {
    if (matroids_.empty()) fail(ErrorCode::domain, "partition problem needs at least one matroid");
    for (const auto& m : matroids_) {
        if (!m) fail(ErrorCode::domain, "null matroid in partition problem");
        if (m->ground() != ground_) fail(ErrorCode::domain, "matroids of a partition problem must share a ground set");
    }
    if (!universe_.is_subset_of(Subset::full(ground_.size())))
        fail(ErrorCode::domain, "partition universe is not contained in the ground set");
}

int PartitionProblem::rank_sum(Subset a, std::size_t count) const {
    int total = 0;
    for (std::size_t i = 0; i < count && i < matroids_.size(); ++i) total += matroids_[i]->rank(a);
    return total;
}

bool is_valid_certificate(const PartitionProblem& problem, const PartitionCertificate& cert) {
    if (cert.parts.size() != problem.count()) return false;
    Subset covered;
    for (std::size_t i = 0; i < cert.parts.size(); ++i) {
        const Subset part = cert.parts[i];
        if (!(part & covered).empty()) return false;
        if (!part.is_subset_of(problem.universe())) return false;
        if (!problem.matroid(i).is_independent(part)) return false;
        covered = covered | part;
    }
    return covered == problem.universe();
}

bool is_valid_witness(const PartitionProblem& problem, const DeficiencyWitness& witness) {
    if (!witness.set.is_subset_of(problem.universe())) return false;
    const int bound = problem.rank_sum(witness.set);
    return witness.size == witness.set.size() && witness.bound == bound && witness.size > bound;
}

PartitionResult solve_partition(const PartitionProblem& problem, const PartitionOptions& options) {
    const Subset universe = problem.universe();
    if (universe.size() > options.max_elements)
        fail(ErrorCode::size_bound, "partition limited to " + std::to_string(options.max_elements) +
                                        " elements, got " + std::to_string(universe.size()));

    const int m = static_cast<int>(problem.count());
    std::vector<Subset> parts(static_cast<std::size_t>(m));
    std::array<int, max_ground_size + 1> owner;
    owner.fill(-1);

    struct Step {
        int from = 0;  // element that enters `part`
        int part = -1; // part the current element is pushed out of
    };

    std::optional<DeficiencyWitness> witness;
    universe.for_each([&](int s) {
        if (witness) return;
        std::array<Step, max_ground_size + 1> prev{};
        Subset visited{s};
        std::deque<int> queue{s};
        int sink = 0;
        int sink_part = -1;

        while (!queue.empty() && sink == 0) {
            const int x = queue.front();
            queue.pop_front();
            for (int i = 0; i < m; ++i) {
                if (owner[x] == i) continue;
                if (problem.matroid(i).is_independent(parts[i].with(x))) {
                    sink = x;
                    sink_part = i;
                    break;
                }
            }
            if (sink != 0) break;
            for (int i = 0; i < m; ++i) {
                if (owner[x] == i) continue;
                parts[i].for_each([&](int y) {
                    if (visited.contains(y)) return;
                    if (problem.matroid(i).is_independent(parts[i].without(y).with(x))) {
                        visited.insert(y);
                        prev[y] = Step{x, i};
                        queue.push_back(y);
                    }
                });
            }
        }

        if (sink == 0) {
            DeficiencyWitness w{visited, problem.rank_sum(visited), visited.size()};
            if (w.size <= w.bound)
                fail(ErrorCode::invalid_matroid, "exchange closure " + visited.to_string() +
                                                     " is not deficient; an oracle violates the matroid axioms");
            witness = w;
            return;
        }

        std::vector<int> touched{sink_part};
        parts[sink_part].insert(sink);
        int x = sink;
        int x_part = sink_part;
        while (x != s) {
            const Step step = prev[x];
            parts[step.part].erase(x).insert(step.from);
            touched.push_back(step.part);
            owner[x] = x_part;
            x_part = step.part;
            x = step.from;
        }
        owner[s] = x_part;
        for (int p : touched)
            if (!problem.matroid(p).is_independent(parts[p]))
                fail(ErrorCode::invalid_matroid,
                     "augmentation produced a dependent part; an oracle violates the matroid axioms");
    });

    if (witness) return *witness;
    PartitionCertificate cert{parts};
    if (!is_valid_certificate(problem, cert))
        fail(ErrorCode::invalid_matroid, "partition certificate failed verification");
    return cert;
}

BetaCheck beta_holds_bruteforce(const PartitionProblem& problem, int max_elements) {
    const Subset universe = problem.universe();
    if (universe.size() > max_elements)
        fail(ErrorCode::size_bound, "brute-force rank check limited to " + std::to_string(max_elements) + " elements");
    BetaCheck out;
    int worst = 0;
    for_each_subset(universe, [&](Subset a) {
        const int bound = problem.rank_sum(a);
        const int deficiency = a.size() - bound;
        if (deficiency > worst) {
            worst = deficiency;
            out.holds = false;
            out.witness = DeficiencyWitness{a, bound, a.size()};
        }
    });
    return out;
}

int trailing_uniform_rank(const PartitionProblem& problem) {
    const auto* uniform = dynamic_cast<const UniformMatroid*>(problem.matroids().back().get());
    if (!uniform) fail(ErrorCode::precondition, "the last matroid must be uniform");
    return uniform->rank_bound();
}

namespace {

void require_partition(const PartitionProblem& problem) {
    if (!std::holds_alternative<PartitionCertificate>(solve_partition(problem)))
        fail(ErrorCode::precondition, "no partition of the universe exists");
}

}  // namespace

std::vector<Subset> g_family(const PartitionProblem& problem, int max_elements) {
    const Subset universe = problem.universe();
    if (universe.size() > max_elements)
        fail(ErrorCode::size_bound, "G enumeration limited to " + std::to_string(max_elements) + " elements");
    const int l = trailing_uniform_rank(problem);
    require_partition(problem);
    const std::size_t others = problem.count() - 1;
    std::vector<Subset> family;
    for_each_subset(universe, [&](Subset a) {
        if (a.size() == l + problem.rank_sum(a, others)) family.push_back(a);
    });
    if (family.empty() || family.back() != universe)
        fail(ErrorCode::precondition, "the universe is not a member of G");
    return family;
}

Subset a_min(const PartitionProblem& problem, int max_elements) {
    const auto family = g_family(problem, max_elements);
    Subset meet = problem.universe();
    for (Subset a : family) meet = meet & a;
    const int l = trailing_uniform_rank(problem);
    if (meet.size() != l + problem.rank_sum(meet, problem.count() - 1))
        fail(ErrorCode::internal, "intersection of G is not in G");
    return meet;
}

bool a_par_contains(const PartitionProblem& problem, int b) {
    const int l = trailing_uniform_rank(problem);
    if (l < 1) fail(ErrorCode::precondition, "A_par needs a uniform rank l >= 1");
    if (!problem.universe().contains(b)) fail(ErrorCode::domain, "element " + std::to_string(b) + " not in universe");
    std::vector<MatroidPtr> reduced(problem.matroids().begin(), problem.matroids().end() - 1);
    reduced.push_back(make_uniform(l - 1, problem.ground().size()));
    PartitionProblem probe(std::move(reduced), problem.universe().without(b));
    return std::holds_alternative<PartitionCertificate>(solve_partition(probe));
}

Subset a_par(const PartitionProblem& problem) {
    if (trailing_uniform_rank(problem) < 1) fail(ErrorCode::precondition, "A_par needs a uniform rank l >= 1");
    require_partition(problem);
    Subset out;
    problem.universe().for_each([&](int b) {
        if (a_par_contains(problem, b)) out.insert(b);
    });
    return out;
}

}  // namespace fls
