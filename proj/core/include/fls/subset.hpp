#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fls {

/// Largest supported ground set; subsets are stored as 64-bit masks.
inline constexpr int max_ground_size = 64;

/// The label set {1, ..., n}.
class GroundSet {
public:
    explicit GroundSet(int n);

    int size() const noexcept { return n_; }
    bool contains(int label) const noexcept { return label >= 1 && label <= n_; }

    friend bool operator==(const GroundSet&, const GroundSet&) = default;

private:
    int n_;
};

/// Finite set of labels in 1..64, stored as a bit mask (bit i-1 <-> label i).
class Subset {
public:
    constexpr Subset() = default;
    Subset(std::initializer_list<int> labels);

    static constexpr Subset from_mask(std::uint64_t mask) noexcept {
        Subset s;
        s.bits_ = mask;
        return s;
    }
    /// {1, ..., n}
    static Subset full(int n);
    static Subset from_labels(const std::vector<int>& labels);

    constexpr std::uint64_t mask() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }

    bool contains(int label) const noexcept {
        return label >= 1 && label <= max_ground_size && ((bits_ >> (label - 1)) & 1u);
    }
    /// Largest label present, 0 when empty.
    int max_label() const noexcept { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }

    Subset& insert(int label);
    Subset& erase(int label);
    Subset with(int label) const { Subset s = *this; return s.insert(label); }
    Subset without(int label) const { Subset s = *this; return s.erase(label); }

    bool is_subset_of(Subset other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    /// Labels in increasing order.
    std::vector<int> labels() const;
    std::string to_string() const;

    friend constexpr Subset operator|(Subset a, Subset b) noexcept { return from_mask(a.bits_ | b.bits_); }
    friend constexpr Subset operator&(Subset a, Subset b) noexcept { return from_mask(a.bits_ & b.bits_); }
    friend constexpr Subset operator-(Subset a, Subset b) noexcept { return from_mask(a.bits_ & ~b.bits_); }
    friend constexpr bool operator==(Subset a, Subset b) noexcept = default;
    friend constexpr auto operator<=>(Subset a, Subset b) noexcept = default;

    /// Calls fn(label) for each label in increasing order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(std::countr_zero(b) + 1);
    }

private:
    std::uint64_t bits_ = 0;
};

/// Calls fn(sub) for every subset of `set` (including empty and `set`), in
/// increasing mask order.
template <class Fn>
void for_each_subset(Subset set, Fn&& fn) {
    const std::uint64_t m = set.mask();
    std::uint64_t sub = 0;
    while (true) {
        fn(Subset::from_mask(sub));
        if (sub == m) break;
        sub = (sub - m) & m;
    }
}

}  // namespace fls
