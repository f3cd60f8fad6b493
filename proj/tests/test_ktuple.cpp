#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "gowers/ktuple.hpp"

using namespace gowers;

namespace {

KTuple random_tuple(std::mt19937& rng, int k, Coord lo, Coord hi) {
    std::uniform_int_distribution<Coord> dist(lo, hi);
    std::vector<Coord> coords(static_cast<std::size_t>(k));
    for (auto& c : coords) c = dist(rng);
    return KTuple{coords};
}

}  // namespace

TEST_CASE("tetris shift") {
    CHECK(tetris_shift(KTuple{{2, 3, 1}}) == KTuple{{0, 2, 3}});
    CHECK(tetris_shift(KTuple{{0, 0, 0}}) == KTuple{{0, 0, 0}});

    // k shifts exhaust every coordinate
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 5);
        CHECK(tetris_power(random_tuple(rng, k, 0, 9), k) == KTuple::zeros(k));
    }
}

TEST_CASE("multiplicative shift") {
    CHECK(mult_shift(KTuple{{2, 3}}) == KTuple{{1, 2}});
    CHECK(mult_shift(KTuple{{1, 1, 1}}) == KTuple{{1, 1, 1}});
    CHECK_THROWS_AS(mult_shift(KTuple{{2, 0}}), std::invalid_argument);

    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 5);
        CHECK(mult_power(random_tuple(rng, k, 1, 9), k) == KTuple::ones(k));
    }
}

TEST_CASE("componentwise arithmetic") {
    CHECK(componentwise_add(KTuple{{1, 0}}, KTuple{{0, 2}}) == KTuple{{1, 2}});
    CHECK(componentwise_add(KTuple{{2, 5}}, KTuple{{1, 0}}) == KTuple{{3, 5}});
    CHECK(componentwise_mul(KTuple{{2, 1}}, KTuple{{1, 3}}) == KTuple{{2, 3}});
    CHECK(componentwise_mul(KTuple{{3, 2}}, KTuple{{1, 2}}) == KTuple{{3, 4}});

    std::mt19937 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 4);
        const KTuple x = random_tuple(rng, k, 0, 100);
        CHECK(componentwise_add(x, KTuple::zeros(k)) == x);
        CHECK(componentwise_mul(x, KTuple::ones(k)) == x);
    }

    CHECK_THROWS_AS(componentwise_add(KTuple{{1}}, KTuple{{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(componentwise_mul(KTuple{{1}}, KTuple{{1, 2}}), std::invalid_argument);

    const Coord big = std::numeric_limits<Coord>::max();
    CHECK_THROWS_AS(componentwise_add(KTuple{{big}}, KTuple{{1}}), std::overflow_error);
    CHECK_THROWS_AS(componentwise_mul(KTuple{{big}}, KTuple{{2}}), std::overflow_error);
}

TEST_CASE("space membership") {
    CHECK(in_space(KTuple{{1, 0}}, Space::Xk));
    CHECK_FALSE(in_space(KTuple{{0, 1}}, Space::Xk));
    CHECK(in_space(KTuple{{2, 1}}, Space::Yk));
    CHECK_FALSE(in_space(KTuple{{1, 2}}, Space::Yk));
    CHECK_FALSE(in_space(KTuple{{2, 0}}, Space::Yk));
    CHECK(in_space(KTuple{{0, 0}}, Space::FullN0k));
    CHECK_FALSE(in_space(KTuple{{0, 1}}, Space::FullNk));
    CHECK(parse_space("Xk") == Space::Xk);
    CHECK_THROWS_AS(parse_space("Zk"), std::invalid_argument);
}

TEST_CASE("mixed-dimension sum") {
    CHECK(mixed_sum(KTuple{{5}}, KTuple{{2, 3}}) == KTuple{{2, 8}});
    CHECK(mixed_sum(KTuple{{4}}, KTuple{{1, 0, 2}}) == KTuple{{1, 0, 6}});

    CHECK_THROWS_AS(mixed_sum(KTuple{{1, 2}}, KTuple{{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(mixed_sum(KTuple{{1, 2, 3}}, KTuple{{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(mixed_sum(KTuple{{0}}, KTuple{{1, 2}}), std::invalid_argument);

    std::mt19937 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 4);
        const int j = 1 + static_cast<int>(rng() % (k - 1));
        auto with_positive_head = [](KTuple t) {
            auto coords = t.coords();
            if (coords[0] == 0) coords[0] = 1;
            return KTuple{coords};
        };
        const KTuple m = with_positive_head(random_tuple(rng, j, 0, 20));
        const KTuple n = with_positive_head(random_tuple(rng, k, 0, 20));
        const KTuple sum = mixed_sum(m, n);

        // first coordinate is copied from n, so the result stays in X_k
        CHECK(sum[0] == n[0]);
        CHECK(in_space(sum, Space::Xk));

        // dropping the first k-j coordinates leaves m + tail(n)
        std::vector<Coord> tail_sum(sum.coords().end() - j, sum.coords().end());
        std::vector<Coord> tail_n(n.coords().end() - j, n.coords().end());
        CHECK(KTuple{tail_sum} == componentwise_add(m, KTuple{tail_n}));
    }
}

TEST_CASE("scaling identity") {
    // j = 0 is plain distributivity
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 4);
        const auto res = check_scaling_identity(random_tuple(rng, k, 1, 9),
                                                random_tuple(rng, k, 0, 9),
                                                random_tuple(rng, k, 0, 9), 0);
        CHECK(res.pass);
    }

    // constant nbar commutes with the shift
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 3);
        const Coord c = 1 + static_cast<Coord>(rng() % 5);
        const KTuple nbar{std::vector<Coord>(static_cast<std::size_t>(k), c)};
        const int j = static_cast<int>(rng() % k);
        const auto res = check_scaling_identity(nbar, random_tuple(rng, k, 0, 9),
                                                random_tuple(rng, k, 0, 9), j);
        CHECK(res.pass);
    }

    const auto bad = check_scaling_identity(KTuple{{1, 2}}, KTuple{{1, 0}}, KTuple{{1, 1}}, 1);
    CHECK_FALSE(bad.pass);
    CHECK(bad.lhs == KTuple{{1, 1}});
    CHECK(bad.rhs == KTuple{{1, 2}});

    CHECK_THROWS_AS(check_scaling_identity(KTuple{{1}}, KTuple{{1}}, KTuple{{1}}, 1),
                    std::invalid_argument);
}

TEST_CASE("tuple formatting and validation") {
    CHECK(KTuple{{3}}.to_string() == "3");
    CHECK(KTuple{{1, 0, 2}}.to_string() == "(1,0,2)");
    CHECK_THROWS_AS((KTuple{std::vector<Coord>{}}), std::invalid_argument);
    CHECK_THROWS_AS((KTuple{{-1, 2}}), std::invalid_argument);
}
