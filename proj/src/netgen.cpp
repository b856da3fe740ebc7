#include "bnsl/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bnsl {

void BayesianNetwork::validate() const {
    const int n = variables.size();
    if (dag.node_count() != n) {
        throw std::invalid_argument("network: dag/variable count mismatch");
    }
    if (static_cast<int>(cpts.size()) != n) {
        throw std::invalid_argument("network: one cpt per node required");
    }
    for (int v = 0; v < n; ++v) {
        const Cpt& cpt = cpts[v];
        if (cpt.node != v) {
            throw std::invalid_argument("network: cpt indexed under wrong node");
        }
        std::vector<int> sorted = cpt.parents;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != dag.parents(v)) {
            throw std::invalid_argument("network: cpt parents disagree with structure for " +
                                        variables.name(v));
        }
        double q = parent_config_count(variables, cpt.parents);
        if (static_cast<double>(cpt.rows.size()) != q) {
            throw std::invalid_argument("network: wrong cpt row count for " +
                                        variables.name(v));
        }
        for (const auto& row : cpt.rows) {
            if (static_cast<int>(row.size()) != variables.arity(v)) {
                throw std::invalid_argument("network: cpt row width mismatch for " +
                                            variables.name(v));
            }
            double sum = 0.0;
            for (double p : row) {
                if (p < 0.0) {
                    throw std::invalid_argument("network: negative probability for " +
                                                variables.name(v));
                }
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9) {
                throw std::invalid_argument("network: cpt row for " + variables.name(v) +
                                            " sums to " + std::to_string(sum));
            }
        }
    }
}

double Rng::uniform() {
    // 53 random bits shifted into (0, 1); the +0.5 keeps both endpoints out.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

int Rng::categorical(const std::vector<double>& probs) {
    double u = uniform();
    double acc = 0.0;
    for (size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
}

std::vector<double> Rng::dirichlet_uniform(int k) {
    std::vector<double> row(k);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        row[i] = -std::log(uniform());
        sum += row[i];
    }
    for (double& p : row) p /= sum;
    return row;
}

void Rng::shuffle(std::vector<int>& values) {
    for (size_t i = values.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(engine_() % i);
        std::swap(values[i - 1], values[j]);
    }
}

uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> path) {
    uint64_t z = base;
    for (uint64_t step : path) {
        z += 0x9e3779b97f4a7c15ull + step;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
    }
    return z;
}

RandomDagTrace random_dag_traced(int n, double edge_prob, int max_parents,
                                 uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_dag: n must be >= 1");
    if (edge_prob < 0.0 || edge_prob > 1.0) {
        throw std::invalid_argument("random_dag: edge_prob outside [0, 1]");
    }
    if (max_parents < 0) throw std::invalid_argument("random_dag: negative parent cap");

    Rng rng(seed);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);

    RandomDagTrace trace{Dag(n), 0, 0};
    std::vector<int> parent_count(n, 0);
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            int from = perm[a];
            int to = perm[b];
            ++trace.pair_draws;
            bool hit = rng.uniform() < edge_prob;
            if (!hit) continue;
            ++trace.precap_insertions;
            if (parent_count[to] >= max_parents) continue;
            edges.push_back({from, to});
            ++parent_count[to];
        }
    }
    trace.dag = Dag(n, edges);
    return trace;
}

Dag random_dag(int n, double edge_prob, int max_parents, uint64_t seed) {
    return random_dag_traced(n, edge_prob, max_parents, seed).dag;
}

BayesianNetwork random_parameters(const Dag& g, const VariableTable& vt,
                                  uint64_t seed) {
    if (g.node_count() != vt.size()) {
        throw std::invalid_argument("random_parameters: dag/variable count mismatch");
    }
    Rng rng(seed);
    BayesianNetwork bn{vt, g, {}};
    bn.cpts.reserve(vt.size());
    for (int v = 0; v < vt.size(); ++v) {
        Cpt cpt;
        cpt.node = v;
        cpt.parents = g.parents(v);
        auto q = static_cast<int64_t>(parent_config_count(vt, cpt.parents));
        cpt.rows.reserve(q);
        for (int64_t j = 0; j < q; ++j) {
            cpt.rows.push_back(rng.dirichlet_uniform(vt.arity(v)));
        }
        bn.cpts.push_back(std::move(cpt));
    }
    return bn;
}

BayesianNetwork random_network(int n, double edge_prob, int max_parents,
                               uint64_t seed) {
    Dag g = random_dag(n, edge_prob, max_parents, derive_seed(seed, {1}));
    return random_parameters(g, VariableTable::binary(n), derive_seed(seed, {2}));
}

Dataset forward_sample(const BayesianNetwork& bn, int cases, uint64_t seed) {
    if (cases < 0) throw std::invalid_argument("forward_sample: negative case count");
    const int n = bn.variables.size();
    Rng rng(seed);
    const std::vector<int> order = bn.dag.topological_order();

    std::vector<std::vector<int>> rows(cases, std::vector<int>(n, 0));
    for (int t = 0; t < cases; ++t) {
        auto& row = rows[t];
        for (int v : order) {
            const Cpt& cpt = bn.cpts[v];
            uint64_t j = 0;
            for (int p : cpt.parents) {
                j = j * static_cast<uint64_t>(bn.variables.arity(p)) + row[p];
            }
            row[v] = rng.categorical(cpt.rows[j]);
        }
    }
    return Dataset(bn.variables, rows);
}

}  // namespace bnsl
