#pragma once

// Brute-force reference implementations used only by tests. None of them
// calls into the routine it is compared against.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fls/arrangement.hpp"
#include "fls/decomposition.hpp"
#include "fls/matroid.hpp"
#include "fls/partition.hpp"
#include "fls/rational.hpp"

namespace fls::oracle {

inline RationalMatrix random_rational_matrix(std::mt19937& rng, int n, int k, int spread = 3, int den = 2) {
    std::uniform_int_distribution<int> num(-spread, spread);
    std::uniform_int_distribution<int> dd(1, den);
    std::bernoulli_distribution zero(0.2);
    RationalMatrix out(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(k)));
    for (auto& row : out)
        for (auto& q : row) q = zero(rng) ? Rational(0) : Rational(num(rng), dd(rng));
    return out;
}

/// Determinant by cofactor expansion over Q.
inline Rational determinant(const RationalMatrix& a) {
    const std::size_t n = a.size();
    if (n == 0) return Rational(1);
    if (n == 1) return a[0][0];
    Rational acc(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (a[0][c] == 0) continue;
        RationalMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != c) row.push_back(a[r][cc]);
            minor.push_back(row);
        }
        const Rational term = a[0][c] * determinant(minor);
        acc += (c % 2 == 0) ? term : Rational(-term);
    }
    return acc;
}

/// Rows indexed by `a` are independent iff some maximal square minor is nonzero.
inline bool rows_independent_by_minors(const RationalMatrix& b, Subset a) {
    const auto rows = a.labels();
    const int k = b.empty() ? 0 : static_cast<int>(b.front().size());
    const int r = static_cast<int>(rows.size());
    if (r == 0) return true;
    if (r > k) return false;
    bool found = false;
    for_each_subset(Subset::full(k), [&](Subset cols) {
        if (found || cols.size() != r) return;
        RationalMatrix sq;
        for (int row : rows) {
            std::vector<Rational> line;
            for (int c : cols.labels()) line.push_back(b[row - 1][c - 1]);
            sq.push_back(line);
        }
        if (determinant(sq) != 0) found = true;
    });
    return found;
}

/// All maximal independent subsets of a, by enumeration.
inline std::vector<Subset> maximal_independent_subsets(const Matroid& m, Subset a) {
    std::vector<Subset> indep;
    for_each_subset(a, [&](Subset s) {
        if (m.is_independent(s)) indep.push_back(s);
    });
    std::vector<Subset> out;
    for (Subset s : indep) {
        bool maximal = true;
        a.for_each([&](int e) {
            if (!s.contains(e) && m.is_independent(s.with(e))) maximal = false;
        });
        if (maximal) out.push_back(s);
    }
    return out;
}

inline int rank_by_enumeration(const Matroid& m, Subset a) {
    int best = 0;
    for_each_subset(a, [&](Subset s) {
        if (s.size() > best && m.is_independent(s)) best = s.size();
    });
    return best;
}

/// Visits every assignment of universe elements to matroids that yields a
/// partition into independent parts; stops when fn returns false.
inline void for_each_partition(const PartitionProblem& p, const std::function<bool(const std::vector<Subset>&)>& fn) {
    const auto elements = p.universe().labels();
    const std::size_t m = p.count();
    std::vector<Subset> parts(m);
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (stop) return;
        if (idx == elements.size()) {
            if (!fn(parts)) stop = true;
            return;
        }
        for (std::size_t i = 0; i < m && !stop; ++i) {
            parts[i].insert(elements[idx]);
            if (p.matroid(i).is_independent(parts[i])) rec(idx + 1);
            parts[i].erase(elements[idx]);
        }
    };
    rec(0);
}

inline bool partition_exists(const PartitionProblem& p) {
    bool found = false;
    for_each_partition(p, [&](const std::vector<Subset>&) {
        found = true;
        return false;
    });
    return found;
}

/// Elements placed in the last part by some partition.
inline Subset last_part_union(const PartitionProblem& p) {
    Subset out;
    for_each_partition(p, [&](const std::vector<Subset>& parts) {
        out = out | parts.back();
        return true;
    });
    return out;
}

/// Strong decompositions by brute force: every way of writing t as m bases
/// plus a remainder of size l, parts sorted.
inline std::vector<std::vector<System>> strong_decompositions_bruteforce(const SystemContext& ctx, const System& t,
                                                                         int l) {
    std::vector<System> bases;
    for (Subset b : ctx.matroid().bases()) bases.push_back(System::indicator(ctx.n(), b));
    std::vector<std::vector<System>> out;
    std::vector<System> chosen;
    std::function<void(std::size_t, const System&)> rec = [&](std::size_t from, const System& rest) {
        if (static_cast<int>(chosen.size()) == ctx.m()) {
            if (rest.size() == l) {
                auto parts = chosen;
                parts.push_back(rest);
                out.push_back(parts);
            }
            return;
        }
        for (std::size_t i = from; i < bases.size(); ++i) {
            if (!bases[i].leq(rest)) continue;
            chosen.push_back(bases[i]);
            rec(i, rest - bases[i]);
            chosen.pop_back();
        }
    };
    rec(0, t);
    return out;
}

/// The family {B subset supp T : sum_B T = l + m r(B)} by enumeration.
inline std::vector<Subset> tight_sets(const SystemContext& ctx, const System& t, int l) {
    std::vector<Subset> out;
    for_each_subset(t.support(), [&](Subset b) {
        if (t.mass(b) == l + ctx.m() * ctx.matroid().rank(b)) out.push_back(b);
    });
    return out;
}

/// Connected components of the local relation graph, from brute-force
/// strong decompositions of each second member.
inline std::size_t components_bruteforce(const SystemContext& ctx, const System& t) {
    std::vector<std::pair<System, System>> nodes;
    for (const System& t2 : subsystems_of_size(t, ctx.m() * ctx.k() + 1))
        if (!strong_decompositions_bruteforce(ctx, t2, 1).empty()) nodes.emplace_back(t - t2, t2);
    if (nodes.empty()) return 0;
    std::vector<std::vector<System>> sums(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (const auto& dec : strong_decompositions_bruteforce(ctx, nodes[i].second, 1)) {
            System s(ctx.n());
            for (std::size_t j = 0; j + 1 < dec.size(); ++j) s += dec[j];
            sums[i].push_back(s);
        }
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            bool related = false;
            for (const auto& a : sums[i])
                for (const auto& b : sums[j])
                    if (a == b) related = true;
            if (related) parent[find(i)] = find(j);
        }
    std::size_t count = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (find(i) == i) ++count;
    return count;
}

/// Random k = 1 arrangement with n lines, integer slopes, positive weights and
/// a basepoint whose critical points are well separated.
inline ArrangementData random_line_arrangement(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> slope(1, 3);
    std::bernoulli_distribution sign(0.5);
    std::uniform_int_distribution<int> weight(1, 4);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    while (true) {
        ArrangementData d;
        for (int i = 0; i < n; ++i) {
            d.b.push_back({Rational(sign(rng) ? slope(rng) : -slope(rng))});
            d.weights.emplace_back(weight(rng) / 2.0, 0.0);
        }
        d.basepoint = Point(n);
        for (int i = 0; i < n; ++i) d.basepoint(i) = Complex(coord(rng), 0.5 * coord(rng));
        CriticalOptions strict;
        strict.margin = 5e-2;
        if (!discriminant_probe(d, d.basepoint, strict)) continue;
        const auto frame = critical_points(d, d.basepoint);
        bool separated = true;
        for (int s = 0; s < frame.mu(); ++s)
            for (int r = s + 1; r < frame.mu(); ++r)
                if ((frame.points[s] - frame.points[r]).norm() < 0.3) separated = false;
        bool away = true;
        for (const auto& t : frame.points) {
            const CVector vals = d.b_complex() * t + d.basepoint;
            if (vals.cwiseAbs().minCoeff() < 0.3) away = false;
        }
        if (separated && away) return d;
    }
}

inline ArrangementData two_line_fixture() {
    ArrangementData d;
    d.b = {{Rational(1)}, {Rational(1)}};
    d.weights = {1.0, 1.0};
    d.basepoint = Point(2);
    d.basepoint << 1.0, -1.0;
    return d;
}

}  // namespace fls::oracle
