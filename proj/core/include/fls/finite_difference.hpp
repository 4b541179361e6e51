#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "fls/numeric.hpp"
#include "fls/system.hpp"

namespace fls {

struct FdOptions {
    /// Base step for first derivatives, scaled by (1 + |x|_inf).
    double h = 1e-5;
    /// Combine steps h and h/2 as (4 D(h/2) - D(h)) / 3.
    bool richardson = true;
};

/// Step used for a derivative of total order d: (1 + |x|) * h^(2/(d+1)).
/// Equals the base step for d = 1 and grows with d so that the roundoff term
/// eps / step^d stays small.
inline double fd_step(const FdOptions& options, const Point& x, int order) {
    const double scale = 1.0 + sup_norm(x);
    if (order <= 1) return scale * options.h;
    return scale * std::pow(options.h, 2.0 / (order + 1));
}

namespace detail {

// Central stencil for the p-th derivative: offsets p/2 - i, weights (-1)^i C(p,i).
inline std::vector<std::pair<double, double>> central_stencil(int p) {
    std::vector<std::pair<double, double>> out;
    double binom = 1.0;
    for (int i = 0; i <= p; ++i) {
        out.emplace_back(0.5 * p - i, (i % 2 ? -1.0 : 1.0) * binom);
        binom = binom * (p - i) / (i + 1);
    }
    return out;
}

template <class R, class F>
R central_difference(F& f, const Point& x, const System& u, double step) {
    std::vector<int> vars;
    for (int j = 1; j <= u.labels(); ++j)
        if (u[j] > 0) vars.push_back(j);
    std::vector<std::vector<std::pair<double, double>>> stencils;
    for (int j : vars) stencils.push_back(central_stencil(u[j]));

    R acc{};
    bool first = true;
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
        Point z = x;
        double w = 1.0;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto& [offset, weight] = stencils[v][idx[v]];
            z(vars[v] - 1) += offset * step;
            w *= weight;
        }
        R val = f(z);
        if (first) {
            acc = val * w;
            first = false;
        } else {
            acc += val * w;
        }
        std::size_t v = 0;
        while (v < vars.size() && ++idx[v] == stencils[v].size()) idx[v++] = 0;
        if (v == vars.size()) break;
    }
    return acc * (1.0 / std::pow(step, u.size()));
}

}  // namespace detail

/// d_U f at x for a holomorphic f, by tensor-product central differences along
/// the real coordinate directions. R may be Complex, CVector or CMatrix.
template <class R, class F>
R partial_derivative(F&& f, const Point& x, const System& u, const FdOptions& options = {}) {
    if (u.size() == 0) return f(x);
    const double step = fd_step(options, x, u.size());
    R coarse = detail::central_difference<R>(f, x, u, step);
    if (!options.richardson) return coarse;
    R fine = detail::central_difference<R>(f, x, u, 0.5 * step);
    R out = fine * (4.0 / 3.0);
    out -= coarse * (1.0 / 3.0);
    return out;
}

}  // namespace fls
