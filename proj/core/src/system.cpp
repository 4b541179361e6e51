#include "fls/system.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>

#include "fls/error.hpp"

namespace fls {

System::System(std::vector<int> multiplicities) : mult_(std::move(multiplicities)) {
    for (int v : mult_)
        if (v < 0) fail(ErrorCode::domain, "systems have nonnegative multiplicities");
}

System System::unit(int n, int j) {
    if (j < 1 || j > n) fail(ErrorCode::domain, "label " + std::to_string(j) + " outside 1.." + std::to_string(n));
    System s(n);
    s.at(j) = 1;
    return s;
}

System System::indicator(int n, Subset set) {
    System s(n);
    set.for_each([&](int j) { s.at(j) = 1; });
    return s;
}

int System::size() const noexcept {
    int total = 0;
    for (int v : mult_) total += v;
    return total;
}

Subset System::support() const {
    Subset s;
    for (std::size_t i = 0; i < mult_.size(); ++i)
        if (mult_[i] != 0) s.insert(static_cast<int>(i) + 1);
    return s;
}

double System::factorial() const {
    double f = 1.0;
    for (int v : mult_) f *= std::tgamma(static_cast<double>(v) + 1.0);
    return f;
}

int System::mass(Subset b) const {
    int total = 0;
    b.for_each([&](int j) {
        if (j <= labels()) total += (*this)[j];
    });
    return total;
}

System& System::operator+=(const System& o) {
    if (o.labels() != labels()) fail(ErrorCode::domain, "system length mismatch");
    for (std::size_t i = 0; i < mult_.size(); ++i) mult_[i] += o.mult_[i];
    return *this;
}

System& System::operator-=(const System& o) {
    if (o.labels() != labels()) fail(ErrorCode::domain, "system length mismatch");
    for (std::size_t i = 0; i < mult_.size(); ++i) {
        mult_[i] -= o.mult_[i];
        if (mult_[i] < 0) fail(ErrorCode::domain, "system difference has a negative multiplicity");
    }
    return *this;
}

bool System::leq(const System& other) const {
    if (other.labels() != labels()) return false;
    for (std::size_t i = 0; i < mult_.size(); ++i)
        if (mult_[i] > other.mult_[i]) return false;
    return true;
}

std::string System::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < mult_.size(); ++i) s += (i ? "," : "") + std::to_string(mult_[i]);
    return s + ")";
}

int hamming_distance(const System& a, const System& b) {
    if (a.labels() != b.labels()) fail(ErrorCode::domain, "system length mismatch");
    int d = 0;
    for (int j = 1; j <= a.labels(); ++j) d += std::abs(a[j] - b[j]);
    return d;
}

namespace {

void bounded_compositions(const std::vector<int>& caps, int t, std::vector<System>& out) {
    const int n = static_cast<int>(caps.size());
    std::vector<int> suffix(static_cast<std::size_t>(n) + 1, 0);
    for (int i = n - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + caps[i];
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            if (left == 0) out.emplace_back(cur);
            return;
        }
        for (int v = 0; v <= std::min(caps[i], left); ++v) {
            if (left - v > suffix[i + 1]) continue;
            cur[i] = v;
            rec(i + 1, left - v);
        }
        cur[i] = 0;
    };
    if (t >= 0 && t <= suffix[0]) rec(0, t);
}

}  // namespace

std::vector<System> systems_of_size(int n, int t) {
    std::vector<System> out;
    bounded_compositions(std::vector<int>(static_cast<std::size_t>(n), t), t, out);
    return out;
}

std::vector<System> subsystems_of_size(const System& sys, int t) {
    std::vector<System> out;
    bounded_compositions(sys.values(), t, out);
    return out;
}

}  // namespace fls
