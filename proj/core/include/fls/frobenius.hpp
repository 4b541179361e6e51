#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "fls/decomposition.hpp"
#include "fls/finite_difference.hpp"
#include "fls/matroid.hpp"
#include "fls/numeric.hpp"
#include "fls/polynomial.hpp"

namespace fls {

/// Numerical access to a Frobenius like structure of order (n, k, m) near a
/// basepoint: commuting Higgs endomorphisms C_{d_i}, a unit section zeta, an
/// m-linear form S and a matroid of rank k on the coordinate labels, all
/// expressed in one working frame of a rank-mu bundle.
///
/// If the working frame is not flat, `connection(i, z)` returns Gamma_i with
/// nabla_i s = d_i s + Gamma_i s in frame coordinates.
class FlatFrameStructure {
public:
    FlatFrameStructure(MatroidPtr matroid, int m, int mu, Point basepoint);
    virtual ~FlatFrameStructure() = default;

    int n() const noexcept { return matroid_->ground().size(); }
    int k() const noexcept { return k_; }
    int m() const noexcept { return m_; }
    int mu() const noexcept { return mu_; }
    const Matroid& matroid() const noexcept { return *matroid_; }
    const MatroidPtr& matroid_ptr() const noexcept { return matroid_; }
    const Point& basepoint() const noexcept { return basepoint_; }

    /// C_{d_i} at z, i in 1..n.
    virtual CMatrix higgs(int i, const Point& z) const = 0;
    virtual CVector unit(const Point& z) const = 0;
    /// S(args[0], ..., args[m-1]) at z; args.size() == m.
    virtual Complex form(const Point& z, std::span<const CVector> args) const = 0;
    virtual bool frame_is_flat() const = 0;
    virtual CMatrix connection(int i, const Point& z) const;

private:
    MatroidPtr matroid_;
    int k_;
    int m_;
    int mu_;
    Point basepoint_;
};

/// C_T = prod_i C_{d_i}^{T(i)}
CMatrix higgs_power(const FlatFrameStructure& s, const System& t, const Point& z);
/// C_T zeta
CVector section(const FlatFrameStructure& s, const System& t, const Point& z);
/// S(C_T zeta, zeta, ..., zeta)
Complex unit_pairing(const FlatFrameStructure& s, const System& t, const Point& z);
/// S(C_{t_1} zeta, ..., C_{t_m} zeta)
Complex section_pairing(const FlatFrameStructure& s, const std::vector<System>& ts, const Point& z);

struct AxiomReport {
    /// All residuals are relative: |defect| / max(1, size of the compared terms).
    double commutativity = 0.0;
    double integrability = 0.0;
    double higgs_invariance = 0.0;
    double section_flatness = 0.0;
    double form_flatness = 0.0;
    std::size_t samples = 0;

    double max() const;
};

struct VerifyOptions {
    FdOptions fd;
    /// Residuals above this raise Error{structure_invalid}.
    double hard_threshold = 1e-4;
    bool throw_on_violation = true;
    /// Random constant-coordinate sections used for the invariance tests.
    int probe_sections = 3;
    unsigned seed = 20170314u;
};

AxiomReport verify_axioms(const FlatFrameStructure& s, std::span<const Point> samples,
                          const VerifyOptions& options = {});

/// Deterministic points in a real polydisc of the given radius around x.
std::vector<Point> polydisc_samples(const Point& x, double radius, int count, unsigned seed = 7u);

struct PotentialOptions {
    FdOptions fd;
    /// Relative tolerance for coefficient spread and z-constancy.
    double tolerance = 1e-6;
    bool fail_on_spread = true;
    EnumerationLimits limits;
    /// Points at which first-kind coefficients are re-evaluated; empty means
    /// polydisc_samples(x, 0.05 (1 + |x|), 4).
    std::vector<Point> resample;
};

/// sum over strong mk-systems T of S(C_T zeta, zeta, ..., zeta)/T! * z^T.
/// Coefficients of non-strong monomials are 0.
Polynomial build_first_kind(const FlatFrameStructure& s, const PotentialOptions& options = {});

struct CoefficientProvenance {
    /// Second member of the first good decomposition (lexicographic).
    System first_t2;
    std::size_t candidates = 0;
    /// max |candidate - mean| / max(1, |mean|)
    double spread = 0.0;
    std::vector<Complex> values;
};

struct TruncatedPotential {
    Point basepoint;
    int order = 0;
    Polynomial series;
    std::map<System, CoefficientProvenance> provenance;
    double spread_max = 0.0;

    explicit TruncatedPotential(Point x) : basepoint(x), series(x) {}
};

/// Truncation of the second-kind potential at x up to total degree n_max.
/// For every T with a good decomposition (T1, T2) the coefficient is the mean
/// of d_{T1} S(C_{T2} zeta, zeta, ...)(x) / T! over all good decompositions;
/// all other coefficients are 0.
TruncatedPotential build_second_kind(const FlatFrameStructure& s, int n_max, const PotentialOptions& options = {});

/// Candidate coefficient for T = t1 + t2 from one good decomposition.
Complex coefficient_candidate(const FlatFrameStructure& s, const System& t1, const System& t2, const FdOptions& fd);

/// max over m-tuples of bases (I_1..I_m) and points z of
/// |d_{I_1}...d_{I_m} Q(z) - S(C_{I_1} zeta, ..., C_{I_m} zeta)(z)|, relative.
double first_kind_defect(const FlatFrameStructure& s, const Polynomial& q, std::span<const Point> points);

/// max over labels i and m-tuples of bases of
/// |d_i d_{I_1}...d_{I_m} L(z) - S(C_i C_{I_1} zeta, ..., C_{I_m} zeta)(z)|, relative.
double second_kind_defect(const FlatFrameStructure& s, const Polynomial& l, const Point& z);

/// For T2 with remainder [a] and S2 = T2 + [b] - [a], the relative gap
/// |d_b S(C_{T2} zeta, ...) - d_a S(C_{S2} zeta, ...)| at x.
double flat_step_residual(const FlatFrameStructure& s, const System& t2, int a, int b, const FdOptions& fd = {});

}  // namespace fls
