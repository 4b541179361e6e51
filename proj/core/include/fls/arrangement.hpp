#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "fls/frobenius.hpp"
#include "fls/matroid.hpp"
#include "fls/numeric.hpp"
#include "fls/rational.hpp"

namespace fls {

/// Weighted family of affine arrangements: f_i(t, z) = sum_j b_i^j t_j + z_i,
/// master function sum_i a_i log f_i.
struct ArrangementData {
    /// n x k, rank k, k < n.
    RationalMatrix b;
    std::vector<Complex> weights;
    Point basepoint;

    int n() const { return static_cast<int>(b.size()); }
    int k() const { return b.empty() ? 0 : static_cast<int>(b.front().size()); }
    /// Checks shapes, exact rank and nonzero weights.
    void validate() const;
    /// b as a complex matrix.
    CMatrix b_complex() const;
};

/// Linear matroid of the rows of b. Throws Error{rank} unless rank b == k.
MatroidPtr vector_matroid(const RationalMatrix& b);

struct CriticalOptions {
    /// Newton stops when |dPhi/dt| <= residual_tol * scale.
    double residual_tol = 1e-12;
    /// Relative margins for |f_i|, |det Hess| and point separation.
    double margin = 1e-8;
    int newton_iterations = 60;
    /// Enables the multi-start Newton path for k >= 2.
    bool allow_k_ge_2 = false;
    int multistart_seeds = 400;
    unsigned seed = 99u;
};

struct CriticalPointFrame {
    std::vector<CVector> points;
    std::vector<CMatrix> hessians;
    std::vector<Complex> hessian_dets;
    /// max over points of |dPhi/dt| / (1 + sum_i |a_i b_i / f_i|)
    double max_residual = 0.0;

    int mu() const { return static_cast<int>(points.size()); }
};

/// dPhi/dt at (t, z).
CVector master_gradient(const ArrangementData& d, const CVector& t, const Point& z);
/// Matrix of second t-derivatives of the master function.
CMatrix master_hessian(const ArrangementData& d, const CVector& t, const Point& z);

/// All critical points in the fiber over z, sorted lexicographically by
/// (Re, Im) of their coordinates. Throws Error{near_discriminant} for
/// degenerate or coincident points.
CriticalPointFrame critical_points(const ArrangementData& d, const Point& z, const CriticalOptions& options = {});

/// Continues `from` (critical points over z_from) along the segment to z_to
/// and returns the points over z_to in the same order.
CriticalPointFrame track_critical_points(const ArrangementData& d, const CriticalPointFrame& from,
                                         const Point& z_from, const Point& z_to,
                                         const CriticalOptions& options = {});

/// True iff the critical points over z are distinct, nondegenerate and away
/// from every hyperplane, with margins.
bool discriminant_probe(const ArrangementData& d, const Point& z, const CriticalOptions& options = {});

/// Frobenius like structure of an arrangement family in the frame of values at
/// the critical points: C_i = diag(a_i / f_i(t_s)), unit = (1, ..., 1),
/// S(h_1, ..., h_m) = sum_s h_1(s) ... h_m(s) / det Hess_s.
///
/// That frame moves with z, so the structure carries the connection in which
/// the sections C_I zeta are flat. Only m = 2 is accepted.
class ArrangementStructure final : public FlatFrameStructure {
public:
    ArrangementStructure(ArrangementData data, int m, CriticalOptions options = {});

    const ArrangementData& data() const noexcept { return data_; }
    const CriticalOptions& options() const noexcept { return options_; }

    /// Critical points over z, ordered like those over the basepoint.
    CriticalPointFrame frame(const Point& z) const;

    CMatrix higgs(int i, const Point& z) const override;
    CVector unit(const Point& z) const override;
    Complex form(const Point& z, std::span<const CVector> args) const override;
    bool frame_is_flat() const override { return false; }
    CMatrix connection(int i, const Point& z) const override;

    /// d C_i / d z_r, from the implicit function theorem.
    CMatrix higgs_derivative(int i, int r, const Point& z) const;

    /// Bases I whose sections C_I zeta make up the flat frame.
    const std::vector<Subset>& frame_bases() const noexcept { return frame_bases_; }
    /// Whether the C_I zeta over all maximal independent I span the fiber.
    bool generation_condition() const noexcept { return generation_condition_; }
    /// Rank of {C_I zeta(x)}.
    int generation_rank() const noexcept { return generation_rank_; }

    /// Columns of the flat frame at z (C_I zeta for frame_bases, then
    /// constant unit vectors if the generation condition fails).
    CMatrix flat_frame(const Point& z) const;

private:
    struct Prepared {
        ArrangementData data;
        CriticalPointFrame frame;
    };
    static Prepared prepare(ArrangementData data, int m, const CriticalOptions& options);
    ArrangementStructure(Prepared prepared, int m, const CriticalOptions& options);

    CMatrix flat_frame_derivative(int i, const Point& z) const;
    /// dp_l(t_s)/dz_r for every critical point s.
    CVector p_derivative(const CriticalPointFrame& f, const Point& z, int l, int r) const;
    CVector p_values(const CriticalPointFrame& f, const Point& z, int l) const;

    ArrangementData data_;
    CriticalOptions options_;
    CriticalPointFrame base_frame_;
    std::vector<Subset> frame_bases_;
    /// Unit vectors e_s completing the frame when the generation condition fails.
    std::vector<int> padding_;
    bool generation_condition_ = true;
    int generation_rank_ = 0;

    struct PointLess {
        bool operator()(const Point& a, const Point& b) const;
    };
    mutable std::mutex cache_mutex_;
    mutable std::map<Point, CriticalPointFrame, PointLess> cache_;
};

std::shared_ptr<ArrangementStructure> structure_from_arrangement(ArrangementData data, int m,
                                                                  const CriticalOptions& options = {});

struct ArrangementDiagnostics {
    /// max_j |sum_i b_i^j C_i| relative to max |C_i|.
    double linear_relation = 0.0;
    /// |S(h_1, h_2, ...) - S(h_2, h_1, ...)| relative.
    double symmetry = 0.0;
    /// |S(C_i h_1, h_2, ...) - S(h_1, C_i h_2, ...)| relative.
    double multiplication_invariance = 0.0;
    int generation_rank = 0;
    bool generation_condition = false;
    /// Rank of the map d_i -> C_i zeta at x.
    int period_rank = 0;
    /// Largest |P b^j| / (|P| |b^j|), P the matrix of that map.
    double period_kernel_residual = 0.0;
    /// 2-norm condition number of the Gram matrix S(e_s, e_t) for m = 2; 0 otherwise.
    double form_condition = 0.0;
    double min_hessian_det = 0.0;
    double max_critical_residual = 0.0;
};

ArrangementDiagnostics diagnose(const ArrangementStructure& s, std::span<const Point> samples);

}  // namespace fls
