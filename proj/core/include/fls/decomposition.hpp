#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "fls/matroid.hpp"
#include "fls/partition.hpp"
#include "fls/system.hpp"

namespace fls {

struct EnumerationLimits {
    int max_system_size = 32;
    std::size_t max_items = 200000;
};

/// The fixed data (J, F), k = r(J) and m that systems are measured against.
class SystemContext {
public:
    SystemContext(MatroidPtr matroid, int m);

    const Matroid& matroid() const noexcept { return *matroid_; }
    const MatroidPtr& matroid_ptr() const noexcept { return matroid_; }
    int n() const noexcept { return matroid_->ground().size(); }
    int k() const noexcept { return k_; }
    int m() const noexcept { return m_; }
    /// Indicator systems of the maximal independent sets, lexicographically sorted.
    const std::vector<System>& base_systems() const noexcept { return bases_; }

    void require_labels(const System& t) const;

private:
    MatroidPtr matroid_;
    int k_;
    int m_;
    std::vector<System> bases_;
};

/// T = bases[0] + ... + bases[m-1] + remainder; the bases are kept sorted.
struct StrongDecomposition {
    std::vector<System> bases;
    System remainder;

    System total() const;
    friend bool operator==(const StrongDecomposition&, const StrongDecomposition&) = default;
};

/// B with sum_{j in B} T(j) > l + m r(B): no strong decomposition can exist.
struct RankObstruction {
    Subset set;
    int mass = 0;
    int bound = 0;
};

/// T = t1 + t2 with t2 a strong (mk+1)-system; identity is (t1, t2) only.
struct GoodDecomposition {
    System t1;
    System t2;
    StrongDecomposition witness;

    friend bool operator==(const GoodDecomposition& a, const GoodDecomposition& b) {
        return a.t1 == b.t1 && a.t2 == b.t2;
    }
};

enum class MatchMode {
    /// Base parts compared as a multiset.
    unordered,
    /// Base parts compared index by index over all orderings of both sides.
    strict_order,
};

struct EquivalenceReport {
    std::vector<GoodDecomposition> nodes;
    /// Pairs (i, j), i < j, of locally related nodes, lexicographic.
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    /// component[i] is the component id of nodes[i], ids assigned in node order.
    std::vector<std::size_t> component;
    std::size_t component_count = 0;
};

/// Lift of (T, l): E = {1..|T|}, f sends T(j) consecutive elements to j, m
/// copies of the lifted matroid followed by U_{l,|T|}.
struct SystemLift {
    std::shared_ptr<const LiftedMatroid> lift;
    PartitionProblem problem;
};

SystemLift lift_system(const SystemContext& ctx, const System& t, int l);

bool is_base(const SystemContext& ctx, const System& t);

std::variant<StrongDecomposition, RankObstruction> try_strong_decomposition(const SystemContext& ctx,
                                                                           const System& t, int l);
std::optional<StrongDecomposition> find_strong_decomposition(const SystemContext& ctx, const System& t, int l);
bool is_strong(const SystemContext& ctx, const System& t, int l);

/// Every strong decomposition of t, bases as sorted multisets, deduplicated.
std::vector<StrongDecomposition> enumerate_strong_decompositions(const SystemContext& ctx, const System& t, int l,
                                                                 const EnumerationLimits& limits = {});

/// Some B violating sum_{j in B} T(j) <= l + m r(B), by enumeration over B.
std::optional<RankObstruction> rank_inequality_violation(const SystemContext& ctx, const System& t, int l);

std::vector<GoodDecomposition> all_good_decompositions(const SystemContext& ctx, const System& t,
                                                       const EnumerationLimits& limits = {});

bool locally_related(const SystemContext& ctx, const GoodDecomposition& a, const GoodDecomposition& b,
                     MatchMode mode = MatchMode::unordered);

EquivalenceReport equivalence_report(const SystemContext& ctx, const System& t,
                                     MatchMode mode = MatchMode::unordered, const EnumerationLimits& limits = {});

/// {B in supp T : sum_{j in B} T(j) = l + m r(B)}
std::vector<Subset> tight_family(const SystemContext& ctx, const System& t, int l);
/// Intersection of tight_family (unique minimal member).
Subset a_min_system(const SystemContext& ctx, const System& t, int l);
/// Labels that occur in the remainder of some strong decomposition, found by
/// one partition probe per label through the lift.
Subset a_dec(const SystemContext& ctx, const System& t, int l);

/// For strong (mk+1)-systems S and T, which of the two remainder
/// alternatives holds, with certificates.
struct RemainderAlternatives {
    /// T has a strong decomposition with remainder [free_label] and
    /// T(free_label) > S(free_label).
    std::optional<int> free_label;
    std::optional<StrongDecomposition> free_witness;
    /// Every remainder label of S is also a remainder label of T; one pair of
    /// decompositions with equal remainders per such label.
    bool shared = false;
    std::vector<std::pair<StrongDecomposition, StrongDecomposition>> shared_witnesses;
};

RemainderAlternatives remainder_alternatives(const SystemContext& ctx, const System& s, const System& t);

/// One distance-reducing step between two different good decompositions s
/// and t of the same system.
struct DescentMove {
    enum class Kind { free_remainder, shared_remainder };
    Kind kind = Kind::free_remainder;
    /// Replaces t; locally related to t.
    GoodDecomposition t_side;
    /// Replaces s (shared_remainder only; otherwise equal to s).
    GoodDecomposition s_side;
    int distance_before = 0;
    int distance_after = 0;
};

DescentMove descent_move(const SystemContext& ctx, const GoodDecomposition& s, const GoodDecomposition& t);

/// Chain of good decompositions from s to t, consecutive entries locally
/// related, built by repeated descent moves.
std::vector<GoodDecomposition> descent_chain(const SystemContext& ctx, const GoodDecomposition& s,
                                             const GoodDecomposition& t);

}  // namespace fls
