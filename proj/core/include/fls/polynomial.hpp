#pragma once

#include <map>

#include "fls/numeric.hpp"
#include "fls/system.hpp"

namespace fls {

/// sum_T c_T (z - center)^T with T ranging over systems on n labels.
class Polynomial {
public:
    explicit Polynomial(Point center);

    int variables() const noexcept { return static_cast<int>(center_.size()); }
    const Point& center() const noexcept { return center_; }
    const std::map<System, Complex>& terms() const noexcept { return terms_; }

    Complex coefficient(const System& t) const;
    void set(const System& t, Complex c);

    Complex evaluate(const Point& z) const;
    /// d_U evaluated at z, term by term:
    /// d_U (z-x)^T = T!/(T-U)! (z-x)^(T-U) if U <= T, else 0.
    Complex derivative(const System& u, const Point& z) const;

    /// Largest |T| with a nonzero coefficient, -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous(int d) const;

private:
    Point center_;
    std::map<System, Complex> terms_;
};

/// (z - x)^T
Complex monomial(const System& t, const Point& z, const Point& x);

}  // namespace fls
