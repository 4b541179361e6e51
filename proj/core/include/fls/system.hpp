#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "fls/subset.hpp"

namespace fls {

/// A map J -> Z_{>=0} (multiset of labels), stored densely: entry i-1 is the
/// multiplicity of label i.
class System {
public:
    System() = default;
    explicit System(int n) : mult_(static_cast<std::size_t>(n), 0) {}
    explicit System(std::vector<int> multiplicities);

    /// [j] on n labels
    static System unit(int n, int j);
    /// sum_{j in s} [j]
    static System indicator(int n, Subset s);

    int labels() const noexcept { return static_cast<int>(mult_.size()); }
    int operator[](int label) const { return mult_.at(static_cast<std::size_t>(label - 1)); }
    int& at(int label) { return mult_.at(static_cast<std::size_t>(label - 1)); }
    const std::vector<int>& values() const noexcept { return mult_; }

    /// |T|
    int size() const noexcept;
    Subset support() const;
    bool is_zero() const noexcept { return size() == 0; }
    /// T! = prod_j T(j)!
    double factorial() const;

    /// sum_{j in b} T(j)
    int mass(Subset b) const;

    System& operator+=(const System& o);
    System& operator-=(const System& o);
    friend System operator+(System a, const System& b) { return a += b; }
    /// Componentwise; Error{domain} if a coordinate would become negative.
    friend System operator-(System a, const System& b) { return a -= b; }

    /// Componentwise S <= T.
    bool leq(const System& other) const;

    friend bool operator==(const System&, const System&) = default;
    /// Lexicographic on the multiplicity vector.
    friend auto operator<=>(const System& a, const System& b) { return a.mult_ <=> b.mult_; }

    std::string to_string() const;

private:
    std::vector<int> mult_;
};

/// d_H(S, T) = sum_j |S(j) - T(j)|
int hamming_distance(const System& a, const System& b);

/// All t-systems on n labels, lexicographically increasing.
std::vector<System> systems_of_size(int n, int t);

/// All subsystems S <= T with |S| = t, lexicographically increasing.
std::vector<System> subsystems_of_size(const System& t_sys, int t);

}  // namespace fls
