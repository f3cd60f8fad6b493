#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gowers/structures.hpp"
#include "naive_ref.hpp"

using namespace gowers;

namespace {

std::vector<KTuple> from_naive(const std::set<naive::Tup>& values) {
    std::vector<KTuple> out;
    for (const auto& v : values) out.push_back(KTuple{v});
    return out;
}

std::vector<naive::Tup> to_naive(const std::vector<KTuple>& gens) {
    std::vector<naive::Tup> out;
    for (const auto& g : gens) out.push_back(g.coords());
    return out;
}

GeneratorSet random_sum_generators(std::mt19937& rng, int k, int m) {
    std::uniform_int_distribution<Coord> coord(0, 4);
    std::vector<KTuple> members;
    for (int i = 0; i < m; ++i) {
        std::vector<Coord> coords(static_cast<std::size_t>(k));
        for (auto& c : coords) c = coord(rng);
        coords[0] = 1 + static_cast<Coord>(rng() % 4);
        members.push_back(KTuple{coords});
    }
    return GeneratorSet{k, members, false};
}

GeneratorSet random_product_generators(std::mt19937& rng, int k, int m) {
    std::uniform_int_distribution<Coord> coord(1, 4);
    std::vector<KTuple> members;
    for (int i = 0; i < m; ++i) {
        std::vector<Coord> coords(static_cast<std::size_t>(k));
        for (auto& c : coords) c = coord(rng);
        coords[0] = 2 + static_cast<Coord>(rng() % 3);
        members.push_back(KTuple{coords});
    }
    return GeneratorSet{k, members, false};
}

}  // namespace

TEST_CASE("generator set validation") {
    GeneratorSet gens{2, {KTuple{{1, 0}}, KTuple{{0, 1}}}, false};
    CHECK_THROWS_AS(gens.validate(Space::Xk), std::invalid_argument);   // (0,1) not in X_2

    GeneratorSet dupes{1, {KTuple{{3}}, KTuple{{3}}}, true};
    CHECK_THROWS_AS(dupes.validate(Space::Xk), std::invalid_argument);
    dupes.distinct_values = false;
    CHECK_NOTHROW(dupes.validate(Space::Xk));

    GeneratorSet not_yk{1, {KTuple{{1}}}, false};
    CHECK_THROWS_AS(not_yk.validate(Space::Yk), std::invalid_argument);
}

TEST_CASE("expression count formula") {
    CHECK(expression_count(1, 2) == 3);
    CHECK(expression_count(2, 3) == 19);   // 27 - 8
    CHECK(expression_count(3, 1) == 1);

    std::mt19937 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 3);
        const auto gens = random_sum_generators(rng, k, m);
        CHECK(gowers_sum_expressions(gens).size() == expression_count(k, m));
        const auto pgens = random_product_generators(rng, k, m);
        CHECK(gowers_product_expressions(pgens).size() == expression_count(k, m));
    }
}

TEST_CASE("sum structure examples") {
    const GeneratorSet g1{1, {KTuple{{3}}, KTuple{{5}}}, false};
    CHECK(gowers_sum_values(g1) == std::vector<KTuple>{KTuple{{3}}, KTuple{{5}}, KTuple{{8}}});

    const GeneratorSet g2{2, {KTuple{{1, 0}}, KTuple{{2, 5}}}, false};
    const std::vector<KTuple> expected{KTuple{{1, 0}}, KTuple{{1, 2}}, KTuple{{2, 5}},
                                       KTuple{{2, 6}}, KTuple{{3, 5}}};
    CHECK(gowers_sum_values(g2) == expected);
    CHECK(gowers_sum_expressions(g2).size() == 5);
}

TEST_CASE("product structure examples") {
    const GeneratorSet g1{1, {KTuple{{2}}, KTuple{{3}}}, false};
    CHECK(gowers_product_values(g1) == std::vector<KTuple>{KTuple{{2}}, KTuple{{3}}, KTuple{{6}}});

    const GeneratorSet g2{2, {KTuple{{2, 1}}, KTuple{{3, 2}}}, false};
    const std::vector<KTuple> expected{KTuple{{2, 1}}, KTuple{{2, 3}}, KTuple{{3, 2}},
                                       KTuple{{3, 4}}, KTuple{{6, 2}}};
    CHECK(gowers_product_values(g2) == expected);

    // a single generator admits only B_1 = {1}
    const GeneratorSet single{2, {KTuple{{4, 7}}}, false};
    CHECK(gowers_product_values(single) == std::vector<KTuple>{KTuple{{4, 7}}});
}

TEST_CASE("structure values agree with the naive enumeration") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 3);
        const auto sum_gens = random_sum_generators(rng, k, m);
        CHECK(gowers_sum_values(sum_gens) ==
              from_naive(naive::sum_subspace(to_naive(sum_gens.members), k)));
        const auto prod_gens = random_product_generators(rng, k, m);
        CHECK(gowers_product_values(prod_gens) ==
              from_naive(naive::product_subspace(to_naive(prod_gens.members), k)));
    }
}

TEST_CASE("closure membership of generated values") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 3);
        for (const auto& v : gowers_sum_values(random_sum_generators(rng, k, m)))
            CHECK(in_space(v, Space::Xk));
        for (const auto& v : gowers_product_values(random_product_generators(rng, k, m))) {
            CHECK(in_space(v, Space::Yk));
            CHECK(v[0] >= 2);
        }
    }
}

TEST_CASE("dimension one reduces to FS and FP") {
    std::mt19937 rng(24);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        std::vector<KTuple> sums, prods;
        for (int i = 0; i < m; ++i) {
            sums.push_back(KTuple{{1 + static_cast<Coord>(rng() % 50)}});
            prods.push_back(KTuple{{2 + static_cast<Coord>(rng() % 49)}});
        }
        CHECK(gowers_sum_values(GeneratorSet{1, sums, false}) == finite_sums(sums));
        CHECK(gowers_product_values(GeneratorSet{1, prods, false}) == finite_products(prods));
    }
}

TEST_CASE("finite sums and products") {
    const std::vector<KTuple> xs{KTuple{{3}}, KTuple{{5}}, KTuple{{7}}};
    CHECK(finite_sums(xs) == std::vector<KTuple>{KTuple{{3}}, KTuple{{5}}, KTuple{{7}}, KTuple{{8}},
                                                 KTuple{{10}}, KTuple{{12}}, KTuple{{15}}});
    CHECK(finite_sums({KTuple{{9}}}) == std::vector<KTuple>{KTuple{{9}}});
    CHECK(finite_products({KTuple{{2}}, KTuple{{3}}}) ==
          std::vector<KTuple>{KTuple{{2}}, KTuple{{3}}, KTuple{{6}}});

    CHECK_THROWS_AS(finite_sums({}), std::invalid_argument);
    CHECK_THROWS_AS(finite_products({KTuple{{0}}}), std::invalid_argument);
    CHECK_THROWS_AS(finite_products({}), std::invalid_argument);
}
