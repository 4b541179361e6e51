#include <random>

#include "doctest.h"
#include "fls/error.hpp"
#include "fls/frobenius.hpp"
#include "oracles.hpp"
#include "structures.hpp"

using namespace fls;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

System sys(std::vector<int> v) { return System(std::move(v)); }

oracle::ConstantStructure diagonal_constant(double scale) {
    // U(1,3), mu = 2, diagonal Higgs matrices
    std::vector<CMatrix> h;
    for (int i = 0; i < 3; ++i) {
        CMatrix c = CMatrix::Zero(2, 2);
        c(0, 0) = scale * (i + 1);
        c(1, 1) = scale * (2 - i);
        h.push_back(c);
    }
    CVector w(2);
    w << 0.5, -1.5;
    Point x(3);
    x << 0.1, 0.2, 0.3;
    return oracle::ConstantStructure(make_uniform(1, 3), 2, h, CVector::Ones(2), w, x);
}

}  // namespace

TEST_CASE("finite differences of a polynomial") {
    Point x(2);
    x << 0.3, -0.7;
    auto f = [](const Point& z) { return z(0) * z(0) * z(0) * z(1) * z(1); };
    CHECK(std::abs(partial_derivative<Complex>(f, x, sys({1, 0})) - 3.0 * 0.09 * 0.49) < 1e-9);
    CHECK(std::abs(partial_derivative<Complex>(f, x, sys({2, 1})) - 6.0 * 0.3 * 2.0 * -0.7) < 1e-6);
    CHECK(std::abs(partial_derivative<Complex>(f, x, sys({3, 2})) - 12.0) < 1e-4);
    CHECK(partial_derivative<Complex>(f, x, sys({0, 0})) == f(x));
}

TEST_CASE("central differences converge at second order") {
    Point x(2);
    x << 0.4, 0.1;
    auto f = [](const Point& z) { return std::exp(z(0)) * std::sin(z(1)); };
    const Complex exact = std::exp(Complex(0.4)) * std::cos(Complex(0.1));
    FdOptions coarse{1e-2, false}, fine{5e-3, false};
    const double e1 = std::abs(partial_derivative<Complex>(f, x, sys({0, 1}), coarse) - exact);
    const double e2 = std::abs(partial_derivative<Complex>(f, x, sys({0, 1}), fine) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("polynomial derivatives") {
    Point c(2);
    c << 1.0, 2.0;
    Polynomial p(c);
    p.set(sys({2, 1}), 3.0);
    p.set(sys({0, 1}), -1.0);
    Point z(2);
    z << 2.0, 4.0;
    CHECK(p.evaluate(z) == Complex(3.0 * 1.0 * 2.0 - 2.0));
    CHECK(p.derivative(sys({2, 0}), z) == Complex(6.0 * 2.0));
    CHECK(p.derivative(sys({2, 1}), z) == Complex(6.0));
    CHECK(p.derivative(sys({3, 0}), z) == Complex(0.0));
    CHECK(p.degree() == 3);
    p.set(sys({0, 1}), 0.0);
    CHECK(p.is_homogeneous(3));
}

TEST_CASE("constant commuting structure satisfies the axioms exactly") {
    const auto s = diagonal_constant(1.0);
    const auto samples = polydisc_samples(s.basepoint(), 0.2, 3);
    const auto r = verify_axioms(s, samples);
    CHECK(r.commutativity == 0.0);
    CHECK(r.integrability == 0.0);
    CHECK(r.higgs_invariance < 1e-15);
    CHECK(r.section_flatness == 0.0);
    CHECK(r.form_flatness == 0.0);
}

TEST_CASE("zero Higgs field gives vanishing potentials") {
    const auto s = diagonal_constant(0.0);
    const auto q = build_first_kind(s);
    for (const auto& [t, c] : q.terms()) CHECK(c == Complex{});
    const auto l = build_second_kind(s, 4);
    CHECK(l.series.degree() == -1);
    CHECK(l.spread_max == 0.0);
}

TEST_CASE("constant structure potentials") {
    const auto s = diagonal_constant(1.0);
    const auto q = build_first_kind(s);
    CHECK(q.is_homogeneous(2));
    const auto samples = polydisc_samples(s.basepoint(), 0.2, 2);
    CHECK(first_kind_defect(s, q, samples) < 1e-12);
    const auto l = build_second_kind(s, 5);
    CHECK(l.spread_max < 1e-6);
    CHECK(second_kind_defect(s, l.series, s.basepoint()) < 1e-9);
    CHECK(code_of([&] { build_second_kind(s, 2); }) == ErrorCode::domain);
}

TEST_CASE("two-line fixture potentials") {
    auto s = structure_from_arrangement(oracle::two_line_fixture(), 2);
    const auto q = build_first_kind(*s);
    CHECK(q.coefficient(sys({2, 0})).real() == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(q.coefficient(sys({1, 1})).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(q.is_homogeneous(2));
    const auto samples = polydisc_samples(s->basepoint(), 0.1, 3);
    CHECK(first_kind_defect(*s, q, samples) < 1e-9);

    const auto l = build_second_kind(*s, 5);
    CHECK(l.spread_max < 1e-6);
    CHECK(second_kind_defect(*s, l.series, s->basepoint()) < 1e-6);
    for (const auto& [t, prov] : l.provenance) CHECK(prov.candidates >= 1);
}

TEST_CASE("flat step identity") {
    auto s = structure_from_arrangement(oracle::two_line_fixture(), 2);
    CHECK(flat_step_residual(*s, sys({2, 1}), 1, 1) == 0.0);
    CHECK(flat_step_residual(*s, sys({2, 1}), 1, 2) < 1e-7);
    CHECK(code_of([&] { flat_step_residual(*s, sys({0, 3}), 1, 2); }) == ErrorCode::domain);
    CHECK(code_of([&] { flat_step_residual(*s, sys({1, 1}), 1, 2); }) == ErrorCode::domain);
}

TEST_CASE("swapped Higgs matrices are detected") {
    std::mt19937 rng(5);
    std::shared_ptr<const ArrangementStructure> inner = structure_from_arrangement(oracle::random_line_arrangement(rng, 4), 2);
    oracle::SwappedStructure bad(inner, 2, 3);
    const auto samples = polydisc_samples(inner->basepoint(), 0.05, 2);
    CHECK(code_of([&] { verify_axioms(bad, samples); }) == ErrorCode::structure_invalid);
    VerifyOptions lenient;
    lenient.throw_on_violation = false;
    CHECK(verify_axioms(bad, samples, lenient).max() > 1e-3);
    CHECK(flat_step_residual(bad, sys({0, 0, 2, 1}), 4, 3) > 1e-3);
}

TEST_CASE("locally related decompositions give equal candidates") {
    std::mt19937 rng(6);
    auto s = structure_from_arrangement(oracle::random_line_arrangement(rng, 3), 2);
    const SystemContext ctx(s->matroid_ptr(), 2);
    for (const System& t : systems_of_size(3, 5)) {
        const auto goods = all_good_decompositions(ctx, t);
        for (const auto& a : goods)
            for (const auto& b : goods) {
                if (!locally_related(ctx, a, b)) continue;
                const Complex ca = coefficient_candidate(*s, a.t1, a.t2, {});
                const Complex cb = coefficient_candidate(*s, b.t1, b.t2, {});
                CHECK(std::abs(ca - cb) / std::max(1.0, std::abs(ca)) < 1e-6);
            }
    }
}

TEST_CASE("axiom residuals shrink at second order without extrapolation") {
    std::mt19937 rng(7);
    auto s = structure_from_arrangement(oracle::random_line_arrangement(rng, 3), 2);
    const auto samples = polydisc_samples(s->basepoint(), 0.05, 2);
    VerifyOptions coarse, fine;
    coarse.fd = {1e-3, false};
    fine.fd = {5e-4, false};
    const double r1 = verify_axioms(*s, samples, coarse).integrability;
    const double r2 = verify_axioms(*s, samples, fine).integrability;
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
}
