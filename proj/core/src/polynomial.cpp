#include "fls/polynomial.hpp"

#include "fls/error.hpp"

namespace fls {

Polynomial::Polynomial(Point center) : center_(std::move(center)) {}

Complex Polynomial::coefficient(const System& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial::set(const System& t, Complex c) {
    if (t.labels() != variables()) fail(ErrorCode::domain, "monomial has the wrong number of variables");
    if (c == Complex{}) {
        terms_.erase(t);
        return;
    }
    terms_[t] = c;
}

Complex monomial(const System& t, const Point& z, const Point& x) {
    Complex v{1.0, 0.0};
    for (int j = 1; j <= t.labels(); ++j)
        for (int p = 0; p < t[j]; ++p) v *= z(j - 1) - x(j - 1);
    return v;
}

Complex Polynomial::evaluate(const Point& z) const {
    Complex sum{};
    for (const auto& [t, c] : terms_) sum += c * monomial(t, z, center_);
    return sum;
}

Complex Polynomial::derivative(const System& u, const Point& z) const {
    if (u.labels() != variables()) fail(ErrorCode::domain, "derivative multi-index has the wrong length");
    Complex sum{};
    for (const auto& [t, c] : terms_) {
        if (!u.leq(t)) continue;
        double falling = 1.0;
        for (int j = 1; j <= t.labels(); ++j)
            for (int p = 0; p < u[j]; ++p) falling *= t[j] - p;
        sum += c * falling * monomial(t - u, z, center_);
    }
    return sum;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [t, c] : terms_) d = std::max(d, t.size());
    return d;
}

bool Polynomial::is_homogeneous(int d) const {
    for (const auto& [t, c] : terms_)
        if (t.size() != d) return false;
    return true;
}

}  // namespace fls
