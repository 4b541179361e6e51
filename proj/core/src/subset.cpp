#include "fls/subset.hpp"

#include "fls/error.hpp"

namespace fls {

GroundSet::GroundSet(int n) : n_(n) {
    if (n < 1 || n > max_ground_size)
        fail(ErrorCode::size_bound, "ground set size must lie in 1.." + std::to_string(max_ground_size) +
                                        ", got " + std::to_string(n));
}

Subset::Subset(std::initializer_list<int> labels) {
    for (int l : labels) insert(l);
}

Subset Subset::full(int n) {
    if (n < 0 || n > max_ground_size) fail(ErrorCode::size_bound, "subset size out of range");
    return from_mask(n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
}

Subset Subset::from_labels(const std::vector<int>& labels) {
    Subset s;
    for (int l : labels) s.insert(l);
    return s;
}

Subset& Subset::insert(int label) {
    if (label < 1 || label > max_ground_size)
        fail(ErrorCode::domain, "label " + std::to_string(label) + " outside 1..64");
    bits_ |= std::uint64_t{1} << (label - 1);
    return *this;
}

Subset& Subset::erase(int label) {
    if (label >= 1 && label <= max_ground_size) bits_ &= ~(std::uint64_t{1} << (label - 1));
    return *this;
}

std::vector<int> Subset::labels() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](int l) { out.push_back(l); });
    return out;
}

std::string Subset::to_string() const {
    std::string s = "{";
    bool first = true;
    for_each([&](int l) {
        if (!first) s += ",";
        s += std::to_string(l);
        first = false;
    });
    return s + "}";
}

}  // namespace fls
