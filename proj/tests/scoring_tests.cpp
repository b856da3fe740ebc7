#include <doctest.h>

#include <cmath>

#include "bnsl/netgen.hpp"
#include "bnsl/scoring.hpp"
#include "test_util.hpp"

using namespace bnsl;
using namespace bnsl::testutil;

namespace {

Dataset binary_dataset(int n, const std::vector<std::vector<int>>& rows) {
    return Dataset(VariableTable::binary(n), rows);
}

// Oracle wrapper: scores (node, parents) on a dataset via the sequential
// posterior-predictive product.
double oracle_local(const Dataset& d, int node, const std::vector<int>& parents,
                    double ess) {
    std::vector<uint64_t> configs;
    std::vector<int> states;
    for (int t = 0; t < d.case_count(); ++t) {
        uint64_t j = 0;
        for (int p : parents) {
            j = j * static_cast<uint64_t>(d.variables().arity(p)) + d.value(p, t);
        }
        configs.push_back(j);
        states.push_back(d.value(node, t));
    }
    return sequential_predictive_log_score(
        configs, states, d.variables().arity(node),
        parent_config_count(d.variables(), parents), ess);
}

}  // namespace

TEST_CASE("dataset validates values") {
    CHECK_THROWS_AS(binary_dataset(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(binary_dataset(2, {{0}}), std::invalid_argument);
    Dataset d = binary_dataset(2, {{0, 1}, {1, 0}});
    CHECK(d.case_count() == 2);
    CHECK(d.value(1, 0) == 1);
}

TEST_CASE("sufficient stats") {
    SUBCASE("no cases") {
        Dataset d = binary_dataset(1, {});
        auto s = sufficient_stats(d, 0, {});
        CHECK(s.rows.empty());
        CHECK(s.total() == 0);
    }
    SUBCASE("no parents") {
        Dataset d = binary_dataset(1, {{0}, {0}, {1}});
        auto s = sufficient_stats(d, 0, {});
        REQUIRE(s.rows.size() == 1);
        CHECK(s.rows.at(0) == std::vector<int64_t>{2, 1});
        CHECK(s.row_total(0) == 3);
    }
    SUBCASE("one binary parent") {
        Dataset d = binary_dataset(2, {{0, 0}, {1, 1}});
        auto s = sufficient_stats(d, 1, {0});
        CHECK(s.rows.at(0) == std::vector<int64_t>{1, 0});
        CHECK(s.rows.at(1) == std::vector<int64_t>{0, 1});
        CHECK(s.total() == 2);
    }
    SUBCASE("mixed radix puts the first parent most significant") {
        VariableTable vt({"a", "b", "c"}, {2, 3, 2});
        Dataset d(vt, {{1, 2, 0}});
        auto s = sufficient_stats(d, 2, {0, 1});
        // j = a * 3 + b = 5
        CHECK(s.rows.count(5) == 1);
    }
    SUBCASE("rejects node in parents") {
        Dataset d = binary_dataset(2, {});
        CHECK_THROWS_AS(sufficient_stats(d, 0, {0}), std::invalid_argument);
    }
}

TEST_CASE("bdeu_local examples") {
    ScoringConfig cfg{8.0};
    SUBCASE("zero cases scores zero") {
        Dataset d = binary_dataset(1, {});
        CHECK(bdeu_local(sufficient_stats(d, 0, {}), cfg, 2, 1.0) == 0.0);
    }
    SUBCASE("one case: first observation has probability alpha_jk/alpha_j") {
        Dataset d = binary_dataset(1, {{0}});
        double got = bdeu_local(sufficient_stats(d, 0, {}), cfg, 2, 1.0);
        CHECK(close_rel(got, std::log(4.0 / 8.0)));
        CHECK(close_rel(got, oracle_local(d, 0, {}, 8.0)));
        CHECK(got == doctest::Approx(-0.693147).epsilon(1e-6));
    }
    SUBCASE("two cases: posterior updates after the first") {
        Dataset d = binary_dataset(1, {{0}, {0}});
        double got = bdeu_local(sufficient_stats(d, 0, {}), cfg, 2, 1.0);
        CHECK(close_rel(got, std::log(20.0 / 72.0)));
        CHECK(close_rel(got, oracle_local(d, 0, {}, 8.0)));
        CHECK(got == doctest::Approx(-1.280934).epsilon(1e-6));
    }
    SUBCASE("rejects bad ess") {
        Dataset d = binary_dataset(1, {{0}});
        CHECK_THROWS_AS(bdeu_local(sufficient_stats(d, 0, {}), ScoringConfig{0.0}, 2, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(bdeu_local(sufficient_stats(d, 0, {}), ScoringConfig{-1.0}, 2, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("sequential predictive oracle on randomized small families") {
    Rng rng(99);
    ScoringConfig cfg{8.0};
    for (int trial = 0; trial < 60; ++trial) {
        int parents = static_cast<int>(rng.next_u64() % 3);     // 0..2
        int cases = static_cast<int>(rng.next_u64() % 6);       // 0..5
        int n = parents + 1;
        std::vector<std::vector<int>> rows;
        for (int t = 0; t < cases; ++t) {
            std::vector<int> row(n);
            for (int v = 0; v < n; ++v) row[v] = static_cast<int>(rng.next_u64() % 2);
            rows.push_back(row);
        }
        Dataset d = binary_dataset(n, rows);
        std::vector<int> pa;
        for (int p = 1; p <= parents; ++p) pa.push_back(p);
        double got = bdeu_local(sufficient_stats(d, 0, pa), cfg, 2,
                                parent_config_count(d.variables(), pa));
        CHECK(close_rel(got, oracle_local(d, 0, pa, cfg.ess)));
    }
}

TEST_CASE("bdeu_total examples") {
    ScoringConfig cfg{8.0};
    SUBCASE("empty dataset scores zero for any structure") {
        Dataset d = binary_dataset(3, {});
        CHECK(bdeu_total(Dag(3), d, cfg) == 0.0);
        CHECK(bdeu_total(Dag(3, {{0, 1}, {1, 2}}), d, cfg) == 0.0);
    }
    SUBCASE("single-edge dags score identically") {
        Dataset d = forward_sample(random_network(2, 0.5, 4, 42), 100, 7);
        double s1 = bdeu_total(Dag(2, {{0, 1}}), d, cfg);
        double s2 = bdeu_total(Dag(2, {{1, 0}}), d, cfg);
        CHECK(close_rel(s1, s2));
    }
    SUBCASE("single variable matches the local example") {
        Dataset d = binary_dataset(1, {{0}, {0}});
        CHECK(close_rel(bdeu_total(Dag(1), d, cfg), std::log(20.0 / 72.0)));
    }
    SUBCASE("graph and dataset must agree") {
        Dataset d = binary_dataset(2, {});
        CHECK_THROWS_AS(bdeu_total(Dag(3), d, cfg), std::invalid_argument);
    }
}

TEST_CASE("score equivalence across class members (n<=3, seeded datasets)") {
    ScoringConfig cfg{8.0};
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        Dataset d = forward_sample(random_network(3, 0.5, 4, seed), 100, seed * 13);
        for (const Dag& g : enumerate_all_dags(3)) {
            double base = bdeu_total(g, d, cfg);
            for (const Dag& member : enumerate_class(g)) {
                CHECK(close_rel(base, bdeu_total(member, d, cfg)));
            }
        }
    }
}

TEST_CASE("decomposability: local edits touch only local terms") {
    ScoringConfig cfg{8.0};
    Dataset d = forward_sample(random_network(4, 0.5, 4, 5), 200, 17);
    Dag g(4, {{0, 1}, {1, 2}, {0, 3}});

    SUBCASE("adding an edge changes exactly one local term") {
        Dag g2 = g.with_edge(2, 3);
        for (int v = 0; v < 4; ++v) {
            double before = local_score(d, cfg, v, g.parents(v), nullptr);
            double after = local_score(d, cfg, v, g2.parents(v), nullptr);
            if (v == 3) {
                CHECK(before != after);
            } else {
                CHECK(before == after);
            }
        }
        CHECK(close_rel(bdeu_total(g2, d, cfg) - bdeu_total(g, d, cfg),
                        local_score(d, cfg, 3, g2.parents(3), nullptr) -
                            local_score(d, cfg, 3, g.parents(3), nullptr)));
    }
    SUBCASE("reversing an edge changes exactly two local terms") {
        Dag g2 = g.with_edge_reversed(1, 2);
        int changed = 0;
        for (int v = 0; v < 4; ++v) {
            if (g.parents(v) != g2.parents(v)) ++changed;
        }
        CHECK(changed == 2);
        double delta = local_score(d, cfg, 1, g2.parents(1), nullptr) -
                       local_score(d, cfg, 1, g.parents(1), nullptr) +
                       local_score(d, cfg, 2, g2.parents(2), nullptr) -
                       local_score(d, cfg, 2, g.parents(2), nullptr);
        CHECK(close_rel(bdeu_total(g2, d, cfg) - bdeu_total(g, d, cfg), delta));
    }
}

TEST_CASE("cache transparency: warm, cold, and absent agree bitwise") {
    ScoringConfig cfg{8.0};
    Dataset d = forward_sample(random_network(4, 0.5, 4, 3), 150, 23);
    Dag g(4, {{0, 1}, {2, 1}, {2, 3}});

    double bare = bdeu_total(g, d, cfg, nullptr);
    ScoreCache cold;
    double first = bdeu_total(g, d, cfg, &cold);
    double warm = bdeu_total(g, d, cfg, &cold);
    CHECK(bare == first);
    CHECK(first == warm);
    CHECK(cold.size() > 0);
}

TEST_CASE("score_cpdag uses the witness and is member-independent") {
    ScoringConfig cfg{8.0};
    SUBCASE("zero cases") {
        Dataset d = binary_dataset(3, {});
        CHECK(score_cpdag(dag_to_cpdag(Dag(3, {{0, 1}})), d, cfg) == 0.0);
    }
    SUBCASE("class score equals any member's score") {
        Dataset d = forward_sample(random_network(3, 0.6, 4, 11), 120, 31);
        Dag member(3, {{0, 1}, {1, 2}});
        CompletedPdag cls = dag_to_cpdag(member);
        CHECK(close_rel(score_cpdag(cls, d, cfg), bdeu_total(member, d, cfg)));
        CHECK(close_rel(score_cpdag(cls, d, cfg),
                        bdeu_total(Dag(3, {{1, 0}, {2, 1}}), d, cfg)));
    }
    SUBCASE("empty-graph cpdag decomposes into parentless locals") {
        Dataset d = forward_sample(random_network(3, 0.0, 4, 2), 50, 19);
        double expected = 0.0;
        for (int v = 0; v < 3; ++v) expected += local_score(d, ScoringConfig{8.0}, v, {}, nullptr);
        CHECK(close_rel(score_cpdag(dag_to_cpdag(Dag(3)), d, ScoringConfig{8.0}), expected));
    }
}

TEST_CASE("scores of non-empty data are log-probabilities, hence <= 0") {
    ScoringConfig cfg{8.0};
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        Dataset d = forward_sample(random_network(3, 0.5, 4, seed), 30, seed);
        for (const Dag& g : enumerate_all_dags(3)) {
            CHECK(bdeu_total(g, d, cfg) <= 0.0);
        }
    }
}
