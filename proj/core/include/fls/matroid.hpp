#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fls/rational.hpp"
#include "fls/subset.hpp"

namespace fls {

inline constexpr int default_circuit_bound = 20;

/// Independence-oracle matroid on {1, ..., n}.
///
/// Concrete matroids only implement `independent_impl`; rank, greedy maximal
/// subsets and circuit enumeration are derived here. Oracle answers are
/// memoized per subset behind a mutex, so a shared `const Matroid` can be
/// queried from several threads.
class Matroid {
public:
    explicit Matroid(GroundSet ground) : ground_(ground) {}
    virtual ~Matroid() = default;

    Matroid(const Matroid&) = delete;
    Matroid& operator=(const Matroid&) = delete;

    const GroundSet& ground() const noexcept { return ground_; }
    Subset ground_subset() const { return Subset::full(ground_.size()); }

    bool is_independent(Subset a) const;
    int rank(Subset a) const;
    /// r(J)
    int rank() const { return rank(ground_subset()); }

    /// Greedy in increasing label order; |result| == rank(a).
    Subset max_independent_subset(Subset a) const;

    /// All inclusion-minimal dependent subsets of `a`, by enumeration.
    std::vector<Subset> circuits_within(Subset a, int bound = default_circuit_bound) const;

    /// Maximal independent subsets of the whole ground set, increasing mask order.
    std::vector<Subset> bases() const;

    virtual std::string describe() const = 0;

protected:
    virtual bool independent_impl(Subset a) const = 0;

private:
    void check_domain(Subset a) const;

    GroundSet ground_;
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::uint64_t, bool> independence_cache_;
    mutable std::unordered_map<std::uint64_t, int> rank_cache_;
};

using MatroidPtr = std::shared_ptr<const Matroid>;

/// Row vectors v_1..v_n of an n x k rational matrix; A is independent iff
/// {v_i : i in A} is linearly independent over Q.
class LinearMatroid final : public Matroid {
public:
    explicit LinearMatroid(RationalMatrix rows);

    const RationalMatrix& matrix() const noexcept { return rows_; }
    int columns() const noexcept { return cols_; }
    std::string describe() const override;

protected:
    bool independent_impl(Subset a) const override;

private:
    RationalMatrix rows_;
    int cols_;
};

/// U_{l,n}: A is independent iff |A| <= l.
class UniformMatroid final : public Matroid {
public:
    UniformMatroid(int l, int n);

    int rank_bound() const noexcept { return l_; }
    std::string describe() const override;

protected:
    bool independent_impl(Subset a) const override { return a.size() <= l_; }

private:
    int l_;
};

/// Lift of a matroid along f: E -> J. A subset of E is independent iff f is
/// injective on it and its image is independent in the base matroid.
class LiftedMatroid final : public Matroid {
public:
    /// `image[e-1]` is f(e), a label of the base ground set.
    LiftedMatroid(MatroidPtr base, std::vector<int> image);

    const Matroid& base() const noexcept { return *base_; }
    int image_of(int e) const { return image_.at(static_cast<std::size_t>(e - 1)); }
    /// f(A)
    Subset image(Subset a) const;
    /// f^{-1}(B)
    Subset preimage(Subset b) const;
    std::string describe() const override;

protected:
    bool independent_impl(Subset a) const override;

private:
    MatroidPtr base_;
    std::vector<int> image_;
};

std::shared_ptr<const LinearMatroid> make_linear(RationalMatrix rows);
std::shared_ptr<const LinearMatroid> make_linear(const std::vector<std::vector<long>>& rows);
std::shared_ptr<const LinearMatroid> make_linear(std::initializer_list<std::initializer_list<long>> rows);
std::shared_ptr<const UniformMatroid> make_uniform(int l, int n);

}  // namespace fls
