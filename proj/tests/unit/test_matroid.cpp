#include <random>

#include "doctest.h"
#include "fls/error.hpp"
#include "fls/matroid.hpp"
#include "fls/rational.hpp"
#include "oracles.hpp"

using namespace fls;

namespace {

MatroidPtr triangle() { return make_linear({{1, 0}, {0, 1}, {1, 1}}); }
MatroidPtr parallel_pair() { return make_linear({{1, 0}, {2, 0}, {0, 1}}); }

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

}  // namespace

TEST_CASE("subset basics") {
    Subset a{1, 3};
    CHECK(a.size() == 2);
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(2));
    CHECK(a.to_string() == "{1,3}");
    CHECK((a | Subset{2}) == Subset::full(3));
    CHECK((Subset::full(3) - a) == Subset{2});
    CHECK(a.max_label() == 3);
    int count = 0;
    for_each_subset(Subset::full(4), [&](Subset) { ++count; });
    CHECK(count == 16);
    CHECK(code_of([] { GroundSet g(0); }) == ErrorCode::size_bound);
}

TEST_CASE("rational parsing and exact rank") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK(code_of([] { parse_rational("1/0"); }) == ErrorCode::schema);
    CHECK(code_of([] { parse_rational("x"); }) == ErrorCode::schema);
    CHECK(exact_rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
    CHECK(exact_rank({{Rational(1, 3), Rational(0)}, {Rational(0), Rational(5, 7)}}) == 2);
}

TEST_CASE("independence examples") {
    CHECK(triangle()->is_independent({1, 3}));
    CHECK(triangle()->is_independent({}));
    CHECK(make_uniform(0, 3)->is_independent({}));
    CHECK_FALSE(parallel_pair()->is_independent({1, 2}));
    CHECK(code_of([] { triangle()->is_independent({4}); }) == ErrorCode::domain);
}

TEST_CASE("rank examples") {
    CHECK(make_uniform(2, 5)->rank({1, 2, 3}) == 2);
    CHECK(parallel_pair()->rank({1, 2}) == 1);
    CHECK(triangle()->rank({1, 2, 3}) == 2);
    CHECK(triangle()->rank() == 2);
}

TEST_CASE("greedy maximal subset") {
    CHECK(make_uniform(1, 3)->max_independent_subset({2, 3}) == Subset{2});
    CHECK(parallel_pair()->max_independent_subset({1, 2, 3}) == Subset{1, 3});
    CHECK(triangle()->max_independent_subset({}).empty());
}

TEST_CASE("circuits") {
    auto c = parallel_pair()->circuits_within({1, 2, 3});
    REQUIRE(c.size() == 1);
    CHECK(c.front() == Subset{1, 2});
    auto u = make_uniform(2, 3)->circuits_within({1, 2, 3});
    REQUIRE(u.size() == 1);
    CHECK(u.front() == Subset{1, 2, 3});
    CHECK(triangle()->circuits_within({1, 2}).empty());
    CHECK(code_of([] { make_uniform(1, 30)->circuits_within(Subset::full(21)); }) == ErrorCode::size_bound);
}

TEST_CASE("zero row is a loop") {
    auto m = make_linear({{1}, {0}, {2}});
    CHECK_FALSE(m->is_independent({2}));
    CHECK(m->bases() == std::vector<Subset>{Subset{1}, Subset{3}});
}

TEST_CASE("uniform matroid validation") {
    CHECK(code_of([] { make_uniform(4, 3); }) == ErrorCode::domain);
    CHECK(code_of([] { make_uniform(-1, 3); }) == ErrorCode::domain);
}

TEST_CASE("linear independence agrees with determinant oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 5;
        const int k = 1 + trial % 4;
        const auto b = oracle::random_rational_matrix(rng, n, k);
        auto m = make_linear(b);
        for_each_subset(Subset::full(n), [&](Subset a) {
            CHECK(m->is_independent(a) == oracle::rows_independent_by_minors(b, a));
        });
    }
}

TEST_CASE("maximal independent subsets share a size") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + trial % 5;
        const int k = 1 + trial % 4;
        auto m = make_linear(oracle::random_rational_matrix(rng, n, k));
        for_each_subset(Subset::full(n), [&](Subset a) {
            const auto maximal = oracle::maximal_independent_subsets(*m, a);
            for (Subset s : maximal) CHECK(s.size() == m->rank(a));
            CHECK(m->rank(a) == oracle::rank_by_enumeration(*m, a));
        });
    }
}

TEST_CASE("an independent set plus one element holds at most one circuit") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + trial % 4;
        auto m = make_linear(oracle::random_rational_matrix(rng, n, 1 + trial % 4));
        for_each_subset(Subset::full(n), [&](Subset i) {
            if (!m->is_independent(i)) return;
            (Subset::full(n) - i).for_each([&](int e) { CHECK(m->circuits_within(i.with(e)).size() <= 1); });
        });
    }
}

TEST_CASE("union and intersection of compatible maximal subsets") {
    std::mt19937 rng(14);
    std::uniform_int_distribution<std::uint64_t> pick(0, 63);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = make_linear(oracle::random_rational_matrix(rng, 6, 1 + trial % 3));
        for (int draw = 0; draw < 40; ++draw) {
            const Subset a1 = Subset::from_mask(pick(rng));
            const Subset a2 = Subset::from_mask(pick(rng));
            for (Subset i1 : oracle::maximal_independent_subsets(*m, a1))
                for (Subset i2 : oracle::maximal_independent_subsets(*m, a2)) {
                    if (!m->is_independent(i1 | i2)) continue;
                    CHECK((i1 | i2).size() == m->rank(a1 | a2));
                    CHECK((i1 & i2).size() == m->rank(a1 & a2));
                }
        }
    }
}

TEST_CASE("lifted rank is the rank of the image") {
    auto base = triangle();
    LiftedMatroid lift(base, {1, 1, 2, 3, 3, 3, 2, 1, 2, 3});
    for_each_subset(Subset::full(10), [&](Subset a) {
        CHECK(lift.rank(a) == base->rank(lift.image(a)));
    });
    CHECK(lift.preimage({2}) == Subset{3, 7, 9});
    CHECK_FALSE(lift.is_independent({1, 2}));
}

TEST_CASE("bases of the triangle") {
    CHECK(triangle()->bases() == std::vector<Subset>{Subset{1, 2}, Subset{1, 3}, Subset{2, 3}});
}
