#include "fls/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "fls/error.hpp"

namespace fls {

void ArrangementData::validate() const {
    const int rows = n();
    if (rows < 2) fail(ErrorCode::domain, "arrangement needs at least two hyperplanes");
    const int cols = k();
    if (cols < 1) fail(ErrorCode::domain, "arrangement needs k >= 1");
    for (const auto& row : b)
        if (static_cast<int>(row.size()) != cols) fail(ErrorCode::domain, "rows of B differ in length");
    if (cols >= rows) fail(ErrorCode::domain, "arrangement needs k < n");
    if (static_cast<int>(weights.size()) != rows) fail(ErrorCode::domain, "one weight per hyperplane is required");
    for (const Complex& a : weights)
        if (a == Complex{}) fail(ErrorCode::domain, "weights must be nonzero");
    if (basepoint.size() != rows) fail(ErrorCode::domain, "basepoint must have n coordinates");
    if (exact_rank(b) != cols) fail(ErrorCode::rank, "B must have rank k");
}

CMatrix ArrangementData::b_complex() const {
    CMatrix out(n(), k());
    for (int i = 0; i < n(); ++i)
        for (int j = 0; j < k(); ++j) out(i, j) = to_double(b[i][j]);
    return out;
}

MatroidPtr vector_matroid(const RationalMatrix& b) {
    const int cols = b.empty() ? 0 : static_cast<int>(b.front().size());
    if (exact_rank(b) != cols) fail(ErrorCode::rank, "B must have rank equal to its column count");
    return make_linear(b);
}

namespace {

CVector hyperplane_values(const CMatrix& b, const CVector& t, const Point& z) { return b * t + z; }

double scale_of(const Point& z) { return 1.0 + sup_norm(z); }

Complex determinant(const CMatrix& h) { return h.rows() == 1 ? h(0, 0) : h.determinant(); }

// Relative size of the gradient at t.
double gradient_residual(const ArrangementData& d, const CMatrix& b, const CVector& t, const Point& z) {
    const CVector f = hyperplane_values(b, t, z);
    CVector g = CVector::Zero(b.cols());
    double scale = 0.0;
    for (int i = 0; i < d.n(); ++i) {
        const CVector term = d.weights[i] * b.row(i).transpose() / f(i);
        g += term;
        scale += term.norm();
    }
    return g.norm() / std::max(scale, 1e-300);
}

// Newton on dPhi/dt = 0; returns false if it does not settle.
bool newton(const ArrangementData& d, const CMatrix& b, CVector& t, const Point& z, int iterations) {
    for (int it = 0; it < iterations; ++it) {
        const CVector g = master_gradient(d, t, z);
        const CMatrix h = master_hessian(d, t, z);
        const CVector step = h.fullPivLu().solve(g);
        if (!step.allFinite()) return false;
        t -= step;
        if (step.norm() <= 1e-15 * (1.0 + t.norm())) return true;
    }
    (void)b;
    return gradient_residual(d, b, t, z) <= 1e-10;
}

bool lex_less(const CVector& a, const CVector& b) {
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (a(j).real() != b(j).real()) return a(j).real() < b(j).real();
        if (a(j).imag() != b(j).imag()) return a(j).imag() < b(j).imag();
    }
    return false;
}

// Fills hessians and residuals and applies the margin checks.
CriticalPointFrame finish_frame(const ArrangementData& d, const CMatrix& b, std::vector<CVector> points,
                                const Point& z, const CriticalOptions& options) {
    if (points.empty()) fail(ErrorCode::near_discriminant, "fiber has no critical points");
    CriticalPointFrame out;
    const double zscale = scale_of(z);
    double tscale = 1.0;
    for (const auto& t : points) tscale = std::max(tscale, t.cwiseAbs().maxCoeff());
    for (auto& t : points) {
        const double res = gradient_residual(d, b, t, z);
        if (!(res <= options.residual_tol))
            fail(ErrorCode::near_discriminant, "critical point residual " + std::to_string(res) + " above tolerance");
        const CVector f = hyperplane_values(b, t, z);
        for (int i = 0; i < d.n(); ++i)
            if (std::abs(f(i)) <= options.margin * zscale)
                fail(ErrorCode::near_discriminant, "critical point lies on hyperplane " + std::to_string(i + 1));
        const CMatrix h = master_hessian(d, t, z);
        const Complex det = determinant(h);
        const double hnorm = h.norm();
        if (!(std::abs(det) > options.margin * std::pow(hnorm, static_cast<double>(h.rows()))))
            fail(ErrorCode::near_discriminant, "degenerate critical point");
        out.max_residual = std::max(out.max_residual, res);
        out.hessians.push_back(h);
        out.hessian_dets.push_back(det);
    }
    for (std::size_t s = 0; s < points.size(); ++s)
        for (std::size_t r = s + 1; r < points.size(); ++r)
            if ((points[s] - points[r]).norm() <= options.margin * tscale)
                fail(ErrorCode::near_discriminant, "coincident critical points");
    out.points = std::move(points);
    return out;
}

std::vector<Complex> poly_mul_linear(const std::vector<Complex>& p, Complex slope, Complex offset) {
    std::vector<Complex> out(p.size() + 1, Complex{});
    for (std::size_t e = 0; e < p.size(); ++e) {
        out[e] += p[e] * offset;
        out[e + 1] += p[e] * slope;
    }
    return out;
}

std::vector<CVector> roots_k1(const ArrangementData& d, const CMatrix& b, const Point& z,
                              const CriticalOptions& options) {
    std::vector<int> active;
    for (int i = 0; i < d.n(); ++i)
        if (b(i, 0) != Complex{}) active.push_back(i);

    // Numerator of sum_i a_i b_i / f_i over the common denominator.
    std::vector<Complex> num(1, Complex{});
    for (int i : active) {
        std::vector<Complex> term(1, d.weights[i] * b(i, 0));
        for (int j : active)
            if (j != i) term = poly_mul_linear(term, b(j, 0), z(j));
        if (num.size() < term.size()) num.resize(term.size(), Complex{});
        for (std::size_t e = 0; e < term.size(); ++e) num[e] += term[e];
    }
    double cmax = 0.0;
    for (const Complex& c : num) cmax = std::max(cmax, std::abs(c));
    while (num.size() > 1 && std::abs(num.back()) <= 1e-14 * cmax) num.pop_back();
    const int degree = static_cast<int>(num.size()) - 1;
    if (degree < 1) fail(ErrorCode::near_discriminant, "fiber has no critical points");

    CMatrix companion = CMatrix::Zero(degree, degree);
    for (int r = 1; r < degree; ++r) companion(r, r - 1) = 1.0;
    for (int r = 0; r < degree; ++r) companion(r, degree - 1) = -num[r] / num[degree];
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(ErrorCode::near_discriminant, "root finding failed");

    std::vector<CVector> points;
    for (int r = 0; r < degree; ++r) {
        CVector t(1);
        t(0) = solver.eigenvalues()(r);
        const CVector f = hyperplane_values(b, t, z);
        double fmin = INFINITY;
        for (int i : active) fmin = std::min(fmin, std::abs(f(i)));
        // A root of the numerator on a hyperplane is not a critical point.
        if (!(fmin > options.margin * scale_of(z)))
            fail(ErrorCode::near_discriminant, "numerator root on a hyperplane");
        newton(d, b, t, z, options.newton_iterations);
        points.push_back(t);
    }
    return points;
}

// Newton on the cleared system P_j = sum_i a_i b_i^j prod_{l != i} f_l, which
// has no solutions escaping to infinity along the gradient's decay.
bool cleared_newton(const ArrangementData& d, const CMatrix& b, CVector& t, const Point& z, int iterations) {
    const int n = d.n();
    const int k = d.k();
    for (int it = 0; it < iterations; ++it) {
        const CVector f = hyperplane_values(b, t, z);
        CVector p = CVector::Zero(k);
        CMatrix jac = CMatrix::Zero(k, k);
        for (int i = 0; i < n; ++i) {
            Complex others = 1.0;
            for (int l = 0; l < n; ++l)
                if (l != i) others *= f(l);
            p += d.weights[i] * others * b.row(i).transpose();
            for (int l = 0; l < n; ++l) {
                if (l == i) continue;
                Complex rest = 1.0;
                for (int q = 0; q < n; ++q)
                    if (q != i && q != l) rest *= f(q);
                jac += d.weights[i] * rest * (b.row(i).transpose() * b.row(l));
            }
        }
        const CVector step = jac.fullPivLu().solve(p);
        if (!step.allFinite()) return false;
        t -= step;
        if (step.norm() <= 1e-14 * (1.0 + t.norm())) return true;
    }
    return false;
}

std::vector<CVector> roots_multistart(const ArrangementData& d, const CMatrix& b, const Point& z,
                                      const CriticalOptions& options) {
    std::mt19937 rng(options.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double radius = 2.0 * scale_of(z);
    std::vector<CVector> points;
    for (int seed = 0; seed < options.multistart_seeds; ++seed) {
        CVector t(d.k());
        for (int j = 0; j < d.k(); ++j) t(j) = radius * Complex(u(rng), u(rng));
        if (!cleared_newton(d, b, t, z, options.newton_iterations)) continue;
        const CVector f = hyperplane_values(b, t, z);
        if (!(f.cwiseAbs().minCoeff() > options.margin * scale_of(z))) continue;
        newton(d, b, t, z, options.newton_iterations);
        if (!t.allFinite() || !(gradient_residual(d, b, t, z) <= options.residual_tol)) continue;
        bool fresh = true;
        for (const auto& p : points)
            if ((p - t).norm() <= 1e-6 * (1.0 + t.norm())) fresh = false;
        if (fresh) points.push_back(t);
    }
    return points;
}

}  // namespace

CVector master_gradient(const ArrangementData& d, const CVector& t, const Point& z) {
    const CMatrix b = d.b_complex();
    const CVector f = hyperplane_values(b, t, z);
    CVector g = CVector::Zero(d.k());
    for (int i = 0; i < d.n(); ++i) g += d.weights[i] * b.row(i).transpose() / f(i);
    return g;
}

CMatrix master_hessian(const ArrangementData& d, const CVector& t, const Point& z) {
    const CMatrix b = d.b_complex();
    const CVector f = hyperplane_values(b, t, z);
    CMatrix h = CMatrix::Zero(d.k(), d.k());
    for (int i = 0; i < d.n(); ++i)
        h -= d.weights[i] / (f(i) * f(i)) * (b.row(i).transpose() * b.row(i));
    return h;
}

CriticalPointFrame critical_points(const ArrangementData& d, const Point& z, const CriticalOptions& options) {
    if (z.size() != d.n()) fail(ErrorCode::domain, "z must have n coordinates");
    const CMatrix b = d.b_complex();
    std::vector<CVector> points;
    if (d.k() == 1) {
        points = roots_k1(d, b, z, options);
    } else {
        if (!options.allow_k_ge_2) fail(ErrorCode::domain, "k >= 2 arrangements need allow_k_ge_2");
        points = roots_multistart(d, b, z, options);
    }
    std::sort(points.begin(), points.end(), lex_less);
    return finish_frame(d, b, std::move(points), z, options);
}

CriticalPointFrame track_critical_points(const ArrangementData& d, const CriticalPointFrame& from,
                                         const Point& z_from, const Point& z_to, const CriticalOptions& options) {
    const CMatrix b = d.b_complex();
    const Point delta = z_to - z_from;
    std::vector<CVector> points = from.points;
    const auto separation = [&](const std::vector<CVector>& ps) {
        double sep = INFINITY;
        for (std::size_t s = 0; s < ps.size(); ++s)
            for (std::size_t r = s + 1; r < ps.size(); ++r) sep = std::min(sep, (ps[s] - ps[r]).norm());
        return sep;
    };

    double tau = 0.0;
    double dtau = 1.0;
    while (tau < 1.0) {
        const double step = std::min(dtau, 1.0 - tau);
        const Point za = z_from + tau * delta;
        const Point zb = z_from + (tau + step) * delta;
        const double sep = separation(points);
        std::vector<CVector> next;
        bool ok = true;
        for (const auto& t : points) {
            // dt/dtau = H^{-1} sum_r a_r b_r dz_r / f_r^2
            const CVector f = hyperplane_values(b, t, za);
            CVector rhs = CVector::Zero(d.k());
            for (int r = 0; r < d.n(); ++r)
                rhs += d.weights[r] * delta(r) / (f(r) * f(r)) * b.row(r).transpose();
            const CVector velocity = master_hessian(d, t, za).fullPivLu().solve(rhs);
            CVector guess = t + step * velocity;
            CVector corrected = guess;
            if (!newton(d, b, corrected, zb, 12) || !corrected.allFinite() ||
                (corrected - guess).norm() > 0.1 * std::min(sep, 1.0 + t.norm())) {
                ok = false;
                break;
            }
            next.push_back(corrected);
        }
        if (ok && next.size() > 1 && separation(next) < 0.25 * sep) ok = false;
        if (!ok) {
            dtau = 0.5 * step;
            if (dtau < 1e-9) fail(ErrorCode::continuation, "continuation step underflow");
            continue;
        }
        points = std::move(next);
        tau += step;
        dtau = std::min(1.0, 2.0 * step);
    }

    CriticalPointFrame fresh = d.k() == 1 || options.allow_k_ge_2 ? critical_points(d, z_to, options)
                                                                  : finish_frame(d, b, points, z_to, options);
    if (fresh.mu() != static_cast<int>(points.size()))
        fail(ErrorCode::continuation, "critical point count changed along the path");
    std::vector<int> match(points.size(), -1);
    std::vector<bool> used(points.size(), false);
    for (std::size_t s = 0; s < points.size(); ++s) {
        int best = -1;
        double best_dist = INFINITY;
        for (std::size_t r = 0; r < points.size(); ++r) {
            const double dist = (fresh.points[r] - points[s]).norm();
            if (dist < best_dist) {
                best_dist = dist;
                best = static_cast<int>(r);
            }
        }
        if (used[best]) fail(ErrorCode::continuation, "two tracked points matched the same critical point");
        if (best_dist > 1e-6 * (1.0 + points[s].norm()))
            fail(ErrorCode::continuation, "tracked point does not match a critical point");
        used[best] = true;
        match[s] = best;
    }
    CriticalPointFrame out;
    out.max_residual = fresh.max_residual;
    for (int r : match) {
        out.points.push_back(fresh.points[r]);
        out.hessians.push_back(fresh.hessians[r]);
        out.hessian_dets.push_back(fresh.hessian_dets[r]);
    }
    return out;
}

bool discriminant_probe(const ArrangementData& d, const Point& z, const CriticalOptions& options) {
    try {
        ArrangementData at = d;
        at.basepoint = z;
        at.validate();
        critical_points(at, z, options);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool ArrangementStructure::PointLess::operator()(const Point& a, const Point& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

ArrangementStructure::Prepared ArrangementStructure::prepare(ArrangementData data, int m,
                                                             const CriticalOptions& options) {
    // The residue pairing is a bilinear form; only m = 2 gives a flat one.
    if (m != 2) fail(ErrorCode::domain, "arrangement structures have order m = 2");
    data.validate();
    CriticalPointFrame frame = critical_points(data, data.basepoint, options);
    return Prepared{std::move(data), std::move(frame)};
}

ArrangementStructure::ArrangementStructure(ArrangementData data, int m, CriticalOptions options)
    : ArrangementStructure(prepare(std::move(data), m, options), m, options) {}

ArrangementStructure::ArrangementStructure(Prepared prepared, int m, const CriticalOptions& options)
    : FlatFrameStructure(vector_matroid(prepared.data.b), m, prepared.frame.mu(), prepared.data.basepoint),
      data_(std::move(prepared.data)),
      options_(options),
      base_frame_(std::move(prepared.frame)) {
    const int mu = base_frame_.mu();
    const Point& x = basepoint();
    std::vector<CVector> columns;
    const auto rank_of = [](const std::vector<CVector>& cols) {
        if (cols.empty()) return 0;
        CMatrix mat(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) mat.col(static_cast<Eigen::Index>(c)) = cols[c];
        Eigen::JacobiSVD<CMatrix> svd(mat);
        const auto& sv = svd.singularValues();
        int r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-9 * sv(0)) ++r;
        return r;
    };
    std::vector<CVector> all;
    for (Subset base : matroid().bases()) {
        CVector v = CVector::Ones(mu);
        for (int j : base.labels()) v = v.cwiseProduct(p_values(base_frame_, x, j));
        all.push_back(v);
        if (static_cast<int>(columns.size()) == mu) continue;
        columns.push_back(v);
        if (rank_of(columns) == static_cast<int>(columns.size())) {
            frame_bases_.push_back(base);
        } else {
            columns.pop_back();
        }
    }
    generation_rank_ = rank_of(all);
    generation_condition_ = generation_rank_ == mu;
    for (int s = 0; s < mu && static_cast<int>(columns.size()) < mu; ++s) {
        columns.push_back(CVector::Unit(mu, s));
        if (rank_of(columns) == static_cast<int>(columns.size())) {
            padding_.push_back(s);
        } else {
            columns.pop_back();
        }
    }
}

CriticalPointFrame ArrangementStructure::frame(const Point& z) const {
    if (z.size() != n()) fail(ErrorCode::domain, "z must have n coordinates");
    if (z == basepoint()) return base_frame_;
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(z);
        if (it != cache_.end()) return it->second;
    }
    CriticalPointFrame f = track_critical_points(data_, base_frame_, basepoint(), z, options_);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (cache_.size() > 50000) cache_.clear();
    cache_.emplace(z, f);
    return f;
}

CVector ArrangementStructure::p_values(const CriticalPointFrame& f, const Point& z, int l) const {
    const CMatrix b = data_.b_complex();
    CVector out(f.mu());
    for (int s = 0; s < f.mu(); ++s) {
        const Complex fl = (b.row(l - 1) * f.points[s])(0) + z(l - 1);
        out(s) = data_.weights[l - 1] / fl;
    }
    return out;
}

CVector ArrangementStructure::p_derivative(const CriticalPointFrame& f, const Point& z, int l, int r) const {
    // dp_l/dz_r = -a_l / f_l^2 (delta_lr + b_l . dt/dz_r), dt/dz_r = H^{-1} a_r b_r / f_r^2
    const CMatrix b = data_.b_complex();
    CVector out(f.mu());
    for (int s = 0; s < f.mu(); ++s) {
        const CVector vals = hyperplane_values(b, f.points[s], z);
        const Complex fr = vals(r - 1);
        const CVector rhs = data_.weights[r - 1] / (fr * fr) * b.row(r - 1).transpose();
        const CVector dt = f.hessians[s].fullPivLu().solve(rhs);
        const Complex fl = vals(l - 1);
        const Complex inner = (l == r ? 1.0 : 0.0) + (b.row(l - 1) * dt)(0);
        out(s) = -data_.weights[l - 1] / (fl * fl) * inner;
    }
    return out;
}

CMatrix ArrangementStructure::higgs(int i, const Point& z) const {
    if (i < 1 || i > n()) fail(ErrorCode::domain, "label out of range");
    return p_values(frame(z), z, i).asDiagonal();
}

CVector ArrangementStructure::unit(const Point&) const { return CVector::Ones(mu()); }

Complex ArrangementStructure::form(const Point& z, std::span<const CVector> args) const {
    if (static_cast<int>(args.size()) != m()) fail(ErrorCode::arity, "form takes exactly m arguments");
    const CriticalPointFrame f = frame(z);
    Complex out{};
    for (int s = 0; s < f.mu(); ++s) {
        Complex prod = 1.0;
        for (const auto& h : args) prod *= h(s);
        out += prod / f.hessian_dets[s];
    }
    return out;
}

CMatrix ArrangementStructure::higgs_derivative(int i, int r, const Point& z) const {
    if (i < 1 || i > n() || r < 1 || r > n()) fail(ErrorCode::domain, "label out of range");
    return p_derivative(frame(z), z, i, r).asDiagonal();
}

CMatrix ArrangementStructure::flat_frame(const Point& z) const {
    const CriticalPointFrame f = frame(z);
    CMatrix out(mu(), mu());
    Eigen::Index c = 0;
    for (Subset base : frame_bases_) {
        CVector v = CVector::Ones(mu());
        for (int j : base.labels()) v = v.cwiseProduct(p_values(f, z, j));
        out.col(c++) = v;
    }
    for (int s : padding_) out.col(c++) = CVector::Unit(mu(), s);
    return out;
}

CMatrix ArrangementStructure::flat_frame_derivative(int i, const Point& z) const {
    const CriticalPointFrame f = frame(z);
    CMatrix out = CMatrix::Zero(mu(), mu());
    Eigen::Index c = 0;
    for (Subset base : frame_bases_) {
        const auto labels = base.labels();
        CVector acc = CVector::Zero(mu());
        for (std::size_t a = 0; a < labels.size(); ++a) {
            CVector term = p_derivative(f, z, labels[a], i);
            for (std::size_t o = 0; o < labels.size(); ++o)
                if (o != a) term = term.cwiseProduct(p_values(f, z, labels[o]));
            acc += term;
        }
        out.col(c++) = acc;
    }
    return out;
}

CMatrix ArrangementStructure::connection(int i, const Point& z) const {
    if (i < 1 || i > n()) fail(ErrorCode::domain, "label out of range");
    const CMatrix frame_at = flat_frame(z);
    // Flat sections F c satisfy d_i F c + Gamma_i F c = 0.
    return -flat_frame_derivative(i, z) * frame_at.inverse();
}

std::shared_ptr<ArrangementStructure> structure_from_arrangement(ArrangementData data, int m,
                                                                  const CriticalOptions& options) {
    return std::make_shared<ArrangementStructure>(std::move(data), m, options);
}

ArrangementDiagnostics diagnose(const ArrangementStructure& s, std::span<const Point> samples) {
    ArrangementDiagnostics out;
    const int n = s.n();
    const int mu = s.mu();
    const ArrangementData& d = s.data();
    const CMatrix b = d.b_complex();
    std::mt19937 rng(5u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto random_vector = [&] {
        CVector v(mu);
        for (int i = 0; i < mu; ++i) v(i) = Complex(u(rng), u(rng));
        return v;
    };

    std::vector<Point> points(samples.begin(), samples.end());
    points.insert(points.begin(), s.basepoint());
    out.min_hessian_det = INFINITY;
    for (const Point& z : points) {
        const CriticalPointFrame f = s.frame(z);
        out.max_critical_residual = std::max(out.max_critical_residual, f.max_residual);
        for (const Complex& det : f.hessian_dets) out.min_hessian_det = std::min(out.min_hessian_det, std::abs(det));

        std::vector<CMatrix> c;
        double cmax = 0.0;
        for (int i = 1; i <= n; ++i) {
            c.push_back(s.higgs(i, z));
            cmax = std::max(cmax, sup_norm(c.back()));
        }
        for (int j = 0; j < d.k(); ++j) {
            CMatrix acc = CMatrix::Zero(mu, mu);
            for (int i = 0; i < n; ++i) acc += b(i, j) * c[i];
            out.linear_relation = std::max(out.linear_relation, sup_norm(acc) / std::max(1.0, cmax));
        }

        std::vector<CVector> args;
        for (int j = 0; j < s.m(); ++j) args.push_back(random_vector());
        const Complex base_value = s.form(z, args);
        const double scale = std::max(1.0, std::abs(base_value));
        if (s.m() >= 2) {
            std::vector<CVector> swapped = args;
            std::swap(swapped[0], swapped[1]);
            out.symmetry = std::max(out.symmetry, std::abs(s.form(z, swapped) - base_value) / scale);
            for (int i = 0; i < n; ++i) {
                std::vector<CVector> left = args, right = args;
                left[0] = c[i] * left[0];
                right[1] = c[i] * right[1];
                const Complex lv = s.form(z, left);
                out.multiplication_invariance = std::max(
                    out.multiplication_invariance, std::abs(lv - s.form(z, right)) / std::max(1.0, std::abs(lv)));
            }
        }
    }

    out.generation_rank = s.generation_rank();
    out.generation_condition = s.generation_condition();

    const Point& x = s.basepoint();
    CMatrix period(mu, n);
    for (int i = 1; i <= n; ++i) period.col(i - 1) = s.higgs(i, x).diagonal();
    Eigen::JacobiSVD<CMatrix> svd(period);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > 1e-9 * sv(0)) ++out.period_rank;
    for (int j = 0; j < d.k(); ++j) {
        const CVector col = b.col(j);
        out.period_kernel_residual =
            std::max(out.period_kernel_residual, (period * col).norm() / std::max(1e-300, sv(0) * col.norm()));
    }

    if (s.m() == 2) {
        const CriticalPointFrame f = s.frame(x);
        double lo = INFINITY, hi = 0.0;
        for (const Complex& det : f.hessian_dets) {
            lo = std::min(lo, 1.0 / std::abs(det));
            hi = std::max(hi, 1.0 / std::abs(det));
        }
        out.form_condition = hi / lo;
    }
    return out;
}

}  // namespace fls
