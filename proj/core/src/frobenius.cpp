#include "fls/frobenius.hpp"

#include <algorithm>
#include <random>

#include "fls/error.hpp"

namespace fls {

FlatFrameStructure::FlatFrameStructure(MatroidPtr matroid, int m, int mu, Point basepoint)
    : matroid_(std::move(matroid)), k_(0), m_(m), mu_(mu), basepoint_(std::move(basepoint)) {
    if (!matroid_) fail(ErrorCode::domain, "structure needs a matroid");
    if (m_ < 1) fail(ErrorCode::domain, "structure order needs m >= 1");
    if (mu_ < 1) fail(ErrorCode::domain, "structure needs a bundle of positive rank");
    if (basepoint_.size() != matroid_->ground().size())
        fail(ErrorCode::domain, "basepoint dimension differs from the number of labels");
    k_ = matroid_->rank();
}

CMatrix FlatFrameStructure::connection(int, const Point&) const { return CMatrix::Zero(mu_, mu_); }

CMatrix higgs_power(const FlatFrameStructure& s, const System& t, const Point& z) {
    CMatrix out = CMatrix::Identity(s.mu(), s.mu());
    for (int i = 1; i <= t.labels(); ++i) {
        if (t[i] == 0) continue;
        const CMatrix c = s.higgs(i, z);
        for (int p = 0; p < t[i]; ++p) out = c * out;
    }
    return out;
}

CVector section(const FlatFrameStructure& s, const System& t, const Point& z) {
    return higgs_power(s, t, z) * s.unit(z);
}

Complex unit_pairing(const FlatFrameStructure& s, const System& t, const Point& z) {
    const CVector zeta = s.unit(z);
    std::vector<CVector> args(static_cast<std::size_t>(s.m()), zeta);
    args.front() = higgs_power(s, t, z) * zeta;
    return s.form(z, args);
}

Complex section_pairing(const FlatFrameStructure& s, const std::vector<System>& ts, const Point& z) {
    if (static_cast<int>(ts.size()) != s.m()) fail(ErrorCode::domain, "section_pairing needs m systems");
    std::vector<CVector> args;
    args.reserve(ts.size());
    for (const auto& t : ts) args.push_back(section(s, t, z));
    return s.form(z, args);
}

double AxiomReport::max() const {
    return std::max({commutativity, integrability, higgs_invariance, section_flatness, form_flatness});
}

std::vector<Point> polydisc_samples(const Point& x, double radius, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> out;
    for (int c = 0; c < count; ++c) {
        Point z = x;
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) += radius * Complex(u(rng), 0.5 * u(rng));
        out.push_back(std::move(z));
    }
    return out;
}

namespace {

double rel(double defect, double scale) { return defect / std::max(1.0, scale); }

std::vector<CVector> random_sections(int mu, int count, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<CVector> out;
    for (int c = 0; c < count; ++c) {
        CVector v(mu);
        for (int i = 0; i < mu; ++i) v(i) = Complex(u(rng), u(rng));
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

AxiomReport verify_axioms(const FlatFrameStructure& s, std::span<const Point> samples, const VerifyOptions& options) {
    const int n = s.n();
    const int m = s.m();
    AxiomReport report;
    report.samples = samples.size();
    std::mt19937 rng(options.seed);

    std::vector<System> bases;
    for (Subset b : s.matroid().bases()) bases.push_back(System::indicator(n, b));

    for (const Point& z : samples) {
        std::vector<CMatrix> c(static_cast<std::size_t>(n) + 1), gamma(static_cast<std::size_t>(n) + 1);
        for (int i = 1; i <= n; ++i) {
            c[i] = s.higgs(i, z);
            gamma[i] = s.frame_is_flat() ? CMatrix::Zero(s.mu(), s.mu()) : s.connection(i, z);
        }

        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const double d = sup_norm(CMatrix(c[i] * c[j] - c[j] * c[i]));
                report.commutativity = std::max(report.commutativity, rel(d, sup_norm(c[i]) * sup_norm(c[j])));
            }

        // nabla_i(C_j) = d_i C_j + [Gamma_i, C_j]
        std::vector<std::vector<CMatrix>> nabla(static_cast<std::size_t>(n) + 1,
                                                std::vector<CMatrix>(static_cast<std::size_t>(n) + 1));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                const CMatrix d = partial_derivative<CMatrix>([&](const Point& p) { return s.higgs(j, p); }, z,
                                                              System::unit(n, i), options.fd);
                nabla[i][j] = d + gamma[i] * c[j] - c[j] * gamma[i];
            }
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                const double d = sup_norm(CMatrix(nabla[i][j] - nabla[j][i]));
                report.integrability = std::max(
                    report.integrability, rel(d, std::max(sup_norm(nabla[i][j]), sup_norm(nabla[j][i]))));
            }

        const auto probes = random_sections(s.mu(), m * options.probe_sections, rng);
        for (int p = 0; p < options.probe_sections; ++p) {
            std::vector<CVector> args(probes.begin() + p * m, probes.begin() + (p + 1) * m);
            for (int i = 1; i <= n; ++i) {
                Complex reference{};
                for (int slot = 0; slot < m; ++slot) {
                    std::vector<CVector> moved = args;
                    moved[slot] = c[i] * moved[slot];
                    const Complex v = s.form(z, moved);
                    if (slot == 0) {
                        reference = v;
                        continue;
                    }
                    report.higgs_invariance =
                        std::max(report.higgs_invariance, rel(std::abs(v - reference), std::abs(reference)));
                }
                const Complex dv = partial_derivative<Complex>([&](const Point& q) { return s.form(q, args); }, z,
                                                               System::unit(n, i), options.fd);
                Complex expected{};
                for (int slot = 0; slot < m; ++slot) {
                    std::vector<CVector> moved = args;
                    moved[slot] = gamma[i] * moved[slot];
                    expected += s.form(z, moved);
                }
                report.form_flatness = std::max(report.form_flatness, rel(std::abs(dv - expected), std::abs(dv)));
            }
        }

        for (const System& base : bases) {
            const CVector sec = section(s, base, z);
            for (int i = 1; i <= n; ++i) {
                const CVector d = partial_derivative<CVector>([&](const Point& p) { return section(s, base, p); }, z,
                                                              System::unit(n, i), options.fd);
                const double defect = sup_norm(CVector(d + gamma[i] * sec));
                report.section_flatness =
                    std::max(report.section_flatness, rel(defect, std::max(sup_norm(sec), sup_norm(d))));
            }
        }
    }

    if (options.throw_on_violation && report.max() > options.hard_threshold)
        fail(ErrorCode::structure_invalid,
             "structure violates the axioms: commutativity=" + std::to_string(report.commutativity) +
                 " integrability=" + std::to_string(report.integrability) +
                 " higgs_invariance=" + std::to_string(report.higgs_invariance) +
                 " section_flatness=" + std::to_string(report.section_flatness) +
                 " form_flatness=" + std::to_string(report.form_flatness));
    return report;
}

Polynomial build_first_kind(const FlatFrameStructure& s, const PotentialOptions& options) {
    const SystemContext ctx(s.matroid_ptr(), s.m());
    const int n = s.n();
    const Point& x = s.basepoint();
    const auto resample = options.resample.empty() ? polydisc_samples(x, 0.05 * (1.0 + sup_norm(x)), 4)
                                                   : options.resample;
    Polynomial q(Point::Zero(n));
    for (const System& t : systems_of_size(n, s.m() * s.k())) {
        if (!is_strong(ctx, t, 0)) continue;
        const Complex value = unit_pairing(s, t, x);
        for (const Point& z : resample) {
            const Complex other = unit_pairing(s, t, z);
            if (rel(std::abs(other - value), std::abs(value)) > options.tolerance)
                fail(ErrorCode::flatness, "S(C_T zeta, zeta, ...) varies with z for T=" + t.to_string());
        }
        q.set(t, value / t.factorial());
    }
    return q;
}

Complex coefficient_candidate(const FlatFrameStructure& s, const System& t1, const System& t2, const FdOptions& fd) {
    const Complex d = partial_derivative<Complex>([&](const Point& z) { return unit_pairing(s, t2, z); },
                                                  s.basepoint(), t1, fd);
    return d / (t1 + t2).factorial();
}

TruncatedPotential build_second_kind(const FlatFrameStructure& s, int n_max, const PotentialOptions& options) {
    const SystemContext ctx(s.matroid_ptr(), s.m());
    const int n = s.n();
    const int first = s.m() * s.k() + 1;
    if (n_max < first) fail(ErrorCode::domain, "truncation order must be at least mk+1 = " + std::to_string(first));

    TruncatedPotential out(s.basepoint());
    out.order = n_max;
    for (int d = first; d <= n_max; ++d) {
        for (const System& t : systems_of_size(n, d)) {
            const auto goods = all_good_decompositions(ctx, t, options.limits);
            if (goods.empty()) continue;
            CoefficientProvenance prov;
            prov.first_t2 = goods.front().t2;
            prov.candidates = goods.size();
            Complex mean{};
            for (const auto& g : goods) {
                prov.values.push_back(coefficient_candidate(s, g.t1, g.t2, options.fd));
                mean += prov.values.back();
            }
            mean /= static_cast<double>(goods.size());
            for (const Complex& v : prov.values) prov.spread = std::max(prov.spread, rel(std::abs(v - mean), std::abs(mean)));
            if (options.fail_on_spread && prov.spread > options.tolerance)
                fail(ErrorCode::well_definedness, "coefficient candidates for T=" + t.to_string() + " spread by " +
                                                      std::to_string(prov.spread));
            out.spread_max = std::max(out.spread_max, prov.spread);
            out.series.set(t, mean);
            out.provenance.emplace(t, std::move(prov));
        }
    }
    return out;
}

namespace {

template <class Fn>
void for_each_base_tuple(const FlatFrameStructure& s, Fn&& fn) {
    std::vector<System> bases;
    for (Subset b : s.matroid().bases()) bases.push_back(System::indicator(s.n(), b));
    std::vector<std::size_t> idx(static_cast<std::size_t>(s.m()), 0);
    std::vector<System> tuple(static_cast<std::size_t>(s.m()));
    while (true) {
        for (std::size_t j = 0; j < idx.size(); ++j) tuple[j] = bases[idx[j]];
        fn(tuple);
        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == bases.size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
}

}  // namespace

double first_kind_defect(const FlatFrameStructure& s, const Polynomial& q, std::span<const Point> points) {
    double worst = 0.0;
    for (const Point& z : points) {
        for_each_base_tuple(s, [&](const std::vector<System>& tuple) {
            System u(s.n());
            for (const auto& t : tuple) u += t;
            const Complex lhs = q.derivative(u, z);
            const Complex rhs = section_pairing(s, tuple, z);
            worst = std::max(worst, rel(std::abs(lhs - rhs), std::abs(rhs)));
        });
    }
    return worst;
}

double second_kind_defect(const FlatFrameStructure& s, const Polynomial& l, const Point& z) {
    double worst = 0.0;
    for_each_base_tuple(s, [&](const std::vector<System>& tuple) {
        std::vector<CVector> args;
        System u(s.n());
        for (const auto& t : tuple) {
            args.push_back(section(s, t, z));
            u += t;
        }
        const CVector first = args.front();
        for (int i = 1; i <= s.n(); ++i) {
            args.front() = s.higgs(i, z) * first;
            const Complex rhs = s.form(z, args);
            const Complex lhs = l.derivative(u + System::unit(s.n(), i), z);
            worst = std::max(worst, rel(std::abs(lhs - rhs), std::abs(rhs)));
        }
    });
    return worst;
}

double flat_step_residual(const FlatFrameStructure& s, const System& t2, int a, int b, const FdOptions& fd) {
    const SystemContext ctx(s.matroid_ptr(), s.m());
    const int n = s.n();
    ctx.require_labels(t2);
    if (t2.size() != s.m() * s.k() + 1) fail(ErrorCode::domain, "T2 must be an (mk+1)-system");
    if (a < 1 || a > n || b < 1 || b > n) fail(ErrorCode::domain, "labels a, b must lie in 1..n");
    if (t2[a] < 1 || !is_strong(ctx, t2 - System::unit(n, a), 0))
        fail(ErrorCode::domain, "T2 has no strong decomposition with remainder [" + std::to_string(a) + "]");
    if (a == b) return 0.0;
    const System s2 = t2 + System::unit(n, b) - System::unit(n, a);
    const Point& x = s.basepoint();
    const Complex lhs = partial_derivative<Complex>([&](const Point& z) { return unit_pairing(s, t2, z); }, x,
                                                    System::unit(n, b), fd);
    const Complex rhs = partial_derivative<Complex>([&](const Point& z) { return unit_pairing(s, s2, z); }, x,
                                                    System::unit(n, a), fd);
    return rel(std::abs(lhs - rhs), std::abs(lhs));
}

}  // namespace fls
