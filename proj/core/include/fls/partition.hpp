#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "fls/matroid.hpp"

namespace fls {

/// Matroids (E, F_1), ..., (E, F_m) on a common ground set E, together with
/// the subset of E that is to be partitioned (all of E unless restricted).
class PartitionProblem {
public:
    explicit PartitionProblem(std::vector<MatroidPtr> matroids);
    PartitionProblem(std::vector<MatroidPtr> matroids, Subset universe);

    const GroundSet& ground() const noexcept { return ground_; }
    const std::vector<MatroidPtr>& matroids() const noexcept { return matroids_; }
    const Matroid& matroid(std::size_t i) const { return *matroids_.at(i); }
    std::size_t count() const noexcept { return matroids_.size(); }
    Subset universe() const noexcept { return universe_; }

    /// sum_{i < count} r_i(a)
    int rank_sum(Subset a, std::size_t count) const;
    int rank_sum(Subset a) const { return rank_sum(a, matroids_.size()); }

private:
    GroundSet ground_;
    std::vector<MatroidPtr> matroids_;
    Subset universe_;
};

/// Parts I_1..I_m, pairwise disjoint, covering the universe, I_i in F_i.
struct PartitionCertificate {
    std::vector<Subset> parts;
    friend bool operator==(const PartitionCertificate&, const PartitionCertificate&) = default;
};

/// A set A with |A| > sum_i r_i(A).
struct DeficiencyWitness {
    Subset set;
    int bound = 0;
    int size = 0;
    friend bool operator==(const DeficiencyWitness&, const DeficiencyWitness&) = default;
};

using PartitionResult = std::variant<PartitionCertificate, DeficiencyWitness>;

struct PartitionOptions {
    int max_elements = 64;
};

bool is_valid_certificate(const PartitionProblem& problem, const PartitionCertificate& cert);
bool is_valid_witness(const PartitionProblem& problem, const DeficiencyWitness& witness);

/// Augmenting-path matroid partition. Elements are inserted in increasing
/// label order; each insertion runs a BFS over single-element exchanges and
/// augments along a shortest path. When no path exists the set reachable from
/// the new element is returned as a deficiency witness. The result is checked
/// before it is returned; a failed check means some oracle is not a matroid.
PartitionResult solve_partition(const PartitionProblem& problem, const PartitionOptions& options = {});

struct BetaCheck {
    bool holds = true;
    /// Set when !holds: a subset of maximal deficiency |A| - sum r_i(A)
    /// (ties broken by smallest mask).
    std::optional<DeficiencyWitness> witness;
};

/// Tests |A| <= sum_i r_i(A) for every A in the universe by enumeration.
BetaCheck beta_holds_bruteforce(const PartitionProblem& problem, int max_elements = 20);

/// G = {A in universe : |A| = l + sum_{i<m} r_i(A)} where the last matroid is
/// uniform of rank l and the sum runs over the other matroids. Requires that
/// a partition exists and that the universe itself lies in G.
std::vector<Subset> g_family(const PartitionProblem& problem, int max_elements = 20);

/// Intersection of g_family, checked to lie in G.
Subset a_min(const PartitionProblem& problem, int max_elements = 20);

/// True iff some partition puts b in the last (uniform) part. Decided by
/// deleting b, lowering the uniform rank by one and re-solving.
bool a_par_contains(const PartitionProblem& problem, int b);

/// {b : a_par_contains(problem, b)}. Requires l >= 1 and a partition of the
/// whole universe.
Subset a_par(const PartitionProblem& problem);

/// Rank of the trailing uniform matroid; Error{precondition} if the last
/// matroid is not uniform.
int trailing_uniform_rank(const PartitionProblem& problem);

}  // namespace fls
