#include <doctest.h>

#include "bnsl/metrics.hpp"
#include "test_util.hpp"

using namespace bnsl;
using namespace bnsl::testutil;

TEST_CASE("structural_difference examples") {
    auto empty = dag_to_cpdag(Dag(3));
    auto edge = dag_to_cpdag(Dag(3, {{0, 1}}));
    auto chain = dag_to_cpdag(Dag(3, {{0, 1}, {1, 2}}));
    auto collider = dag_to_cpdag(Dag(3, {{0, 1}, {2, 1}}));

    CHECK(structural_difference(chain, chain) == 0);
    CHECK(structural_difference(empty, edge) == 1);
    // (0,1) directed vs undirected, (1,2) directed vs undirected, (0,2)
    // absent in both.
    CHECK(structural_difference(collider, chain) == 2);
    CHECK_THROWS_AS(structural_difference(empty, dag_to_cpdag(Dag(2))),
                    std::invalid_argument);
}

TEST_CASE("structural_difference properties over all classes (n=3)") {
    std::vector<CompletedPdag> classes;
    for (auto& [key, c] : all_classes(3)) classes.push_back(c);
    REQUIRE(classes.size() == 11);
    const int max_pairs = 3;

    for (const auto& a : classes) {
        for (const auto& b : classes) {
            int d_ab = structural_difference(a, b);
            CHECK(d_ab == structural_difference(b, a));
            CHECK(d_ab >= 0);
            CHECK(d_ab <= max_pairs);
            CHECK((d_ab == 0) == cpdag_equal(a, b));
            for (const auto& c : classes) {
                CHECK(d_ab <= structural_difference(a, c) + structural_difference(c, b));
            }
        }
    }
}
