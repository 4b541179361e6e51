#include "fls/matroid.hpp"

#include <sstream>

#include "fls/error.hpp"

namespace fls {

void Matroid::check_domain(Subset a) const {
    if (!a.is_subset_of(ground_subset()))
        fail(ErrorCode::domain, "subset " + a.to_string() + " is not contained in the ground set {1.." +
                                    std::to_string(ground_.size()) + "}");
}

bool Matroid::is_independent(Subset a) const {
    check_domain(a);
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = independence_cache_.find(a.mask()); it != independence_cache_.end()) return it->second;
    }
    const bool result = a.empty() ? true : independent_impl(a);
    std::lock_guard lock(cache_mutex_);
    independence_cache_.emplace(a.mask(), result);
    return result;
}

int Matroid::rank(Subset a) const {
    check_domain(a);
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = rank_cache_.find(a.mask()); it != rank_cache_.end()) return it->second;
    }
    const int r = max_independent_subset(a).size();
    std::lock_guard lock(cache_mutex_);
    rank_cache_.emplace(a.mask(), r);
    return r;
}

Subset Matroid::max_independent_subset(Subset a) const {
    check_domain(a);
    Subset picked;
    a.for_each([&](int label) {
        if (is_independent(picked.with(label))) picked.insert(label);
    });
    return picked;
}

std::vector<Subset> Matroid::circuits_within(Subset a, int bound) const {
    check_domain(a);
    if (a.size() > bound)
        fail(ErrorCode::size_bound, "circuit enumeration limited to " + std::to_string(bound) + " elements, got " +
                                        std::to_string(a.size()));
    std::vector<Subset> circuits;
    for_each_subset(a, [&](Subset c) {
        if (c.empty() || is_independent(c)) return;
        bool minimal = true;
        c.for_each([&](int e) {
            if (minimal && !is_independent(c.without(e))) minimal = false;
        });
        if (minimal) circuits.push_back(c);
    });
    return circuits;
}

std::vector<Subset> Matroid::bases() const {
    const int n = ground_.size();
    if (n > 24) fail(ErrorCode::size_bound, "base enumeration limited to ground sets of size <= 24");
    const int k = rank();
    std::vector<Subset> out;
    // k-combinations of {1..n} in increasing mask order (Gosper's hack).
    if (k == 0) return {Subset{}};
    std::uint64_t comb = (std::uint64_t{1} << k) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (comb < limit) {
        if (is_independent(Subset::from_mask(comb))) out.push_back(Subset::from_mask(comb));
        const std::uint64_t c = comb & (~comb + 1);
        const std::uint64_t r = comb + c;
        comb = (((r ^ comb) >> 2) / c) | r;
    }
    return out;
}

LinearMatroid::LinearMatroid(RationalMatrix rows)
    : Matroid(GroundSet(static_cast<int>(rows.size()))), rows_(std::move(rows)), cols_(0) {
    cols_ = static_cast<int>(rows_.front().size());
    for (const auto& r : rows_)
        if (static_cast<int>(r.size()) != cols_) fail(ErrorCode::schema, "linear matroid matrix is not rectangular");
}

bool LinearMatroid::independent_impl(Subset a) const {
    if (a.size() > cols_) return false;
    RationalMatrix sub;
    sub.reserve(static_cast<std::size_t>(a.size()));
    a.for_each([&](int i) { sub.push_back(rows_[static_cast<std::size_t>(i - 1)]); });
    return exact_rank(std::move(sub)) == a.size();
}

std::string LinearMatroid::describe() const {
    std::ostringstream os;
    os << "linear(" << ground().size() << "x" << cols_ << ": ";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        os << (i ? " " : "") << "(";
        for (std::size_t j = 0; j < rows_[i].size(); ++j) os << (j ? "," : "") << to_string(rows_[i][j]);
        os << ")";
    }
    os << ")";
    return os.str();
}

UniformMatroid::UniformMatroid(int l, int n) : Matroid(GroundSet(n)), l_(l) {
    if (l < 0 || l > n)
        fail(ErrorCode::domain, "uniform matroid needs 0 <= l <= n, got l=" + std::to_string(l) +
                                    " n=" + std::to_string(n));
}

std::string UniformMatroid::describe() const {
    return "U(" + std::to_string(l_) + "," + std::to_string(ground().size()) + ")";
}

LiftedMatroid::LiftedMatroid(MatroidPtr base, std::vector<int> image)
    : Matroid(GroundSet(static_cast<int>(image.size()))), base_(std::move(base)), image_(std::move(image)) {
    for (int j : image_)
        if (!base_->ground().contains(j))
            fail(ErrorCode::domain, "lift map hits label " + std::to_string(j) + " outside the base ground set");
}

Subset LiftedMatroid::image(Subset a) const {
    Subset out;
    a.for_each([&](int e) { out.insert(image_of(e)); });
    return out;
}

Subset LiftedMatroid::preimage(Subset b) const {
    Subset out;
    for (std::size_t e = 0; e < image_.size(); ++e)
        if (b.contains(image_[e])) out.insert(static_cast<int>(e) + 1);
    return out;
}

bool LiftedMatroid::independent_impl(Subset a) const {
    const Subset img = image(a);
    if (img.size() != a.size()) return false;
    return base_->is_independent(img);
}

std::string LiftedMatroid::describe() const {
    std::string s = "lift[" + base_->describe() + "; f=(";
    for (std::size_t e = 0; e < image_.size(); ++e) s += (e ? "," : "") + std::to_string(image_[e]);
    return s + ")]";
}

std::shared_ptr<const LinearMatroid> make_linear(RationalMatrix rows) {
    if (rows.empty()) fail(ErrorCode::schema, "linear matroid needs at least one row");
    return std::make_shared<const LinearMatroid>(std::move(rows));
}

std::shared_ptr<const LinearMatroid> make_linear(const std::vector<std::vector<long>>& rows) {
    RationalMatrix q;
    for (const auto& r : rows) {
        q.emplace_back();
        for (long v : r) q.back().emplace_back(v);
    }
    return make_linear(std::move(q));
}

std::shared_ptr<const UniformMatroid> make_uniform(int l, int n) {
    return std::make_shared<const UniformMatroid>(l, n);
}

std::shared_ptr<const LinearMatroid> make_linear(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<long>> out;
    for (const auto& row : rows) out.emplace_back(row);
    return make_linear(out);
}

}  // namespace fls
