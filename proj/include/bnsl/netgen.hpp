#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "bnsl/graph.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

// Conditional probability table for one node. Row j is the distribution
// over the node's states given parent configuration j; configurations are
// mixed-radix over the ordered parent list, first parent most significant
// (the same convention scoring uses).
struct Cpt {
    int node = -1;
    std::vector<int> parents;
    std::vector<std::vector<double>> rows;
};

struct BayesianNetwork {
    VariableTable variables;
    Dag dag;
    std::vector<Cpt> cpts;  // indexed by node

    // Throws std::invalid_argument if cpt parent lists disagree with the
    // dag, row counts or widths disagree with arities, any entry is
    // negative, or a row does not sum to 1 within 1e-9.
    void validate() const;
};

// Deterministic seedable generator: mt19937_64 with hand-rolled draws so
// output depends only on the seed, not on library distribution internals.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }
    // Uniform on (0, 1); never returns an endpoint.
    double uniform();
    // Index sampled from a probability vector (entries assumed to sum
    // to ~1; numerical leftovers fall into the last state).
    int categorical(const std::vector<double>& probs);
    // Dirichlet(1, ..., 1): normalized unit exponentials.
    std::vector<double> dirichlet_uniform(int k);
    // Fisher-Yates.
    void shuffle(std::vector<int>& values);

private:
    std::mt19937_64 engine_;
};

// splitmix64-style mixing of a base seed with a derivation path, used to
// give every replication its own independent stream.
uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> path);

// Random gold-standard structure: draw a uniformly random node
// permutation, then visit ordered position pairs (a, b), a < b, and insert
// the edge perm[a] -> perm[b] with probability edge_prob unless the child
// already has max_parents parents. One uniform draw is consumed per pair
// whether or not the cap blocks the insertion, so the stream layout is
// fixed. Orientation along the permutation guarantees acyclicity.
Dag random_dag(int n, double edge_prob, int max_parents, uint64_t seed);

// Same draw, with the pre-cap acceptance counts exposed for statistical
// checks.
struct RandomDagTrace {
    Dag dag;
    int64_t pair_draws = 0;
    int64_t precap_insertions = 0;
};
RandomDagTrace random_dag_traced(int n, double edge_prob, int max_parents,
                                 uint64_t seed);

// Every cpt row drawn independently from Dirichlet(1, ..., 1) over the
// child's states. Rows are generated in node order, configuration order.
BayesianNetwork random_parameters(const Dag& g, const VariableTable& vt,
                                  uint64_t seed);

// Binary-variable gold standard: random_dag then random_parameters, on
// seeds derived from the one given.
BayesianNetwork random_network(int n, double edge_prob, int max_parents,
                               uint64_t seed);

// m complete cases by sampling nodes in topological order, each from its
// cpt row under the sampled parent configuration.
Dataset forward_sample(const BayesianNetwork& bn, int cases, uint64_t seed);

}  // namespace bnsl
