#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bnsl/equivalence.hpp"
#include "bnsl/graph.hpp"

namespace bnsl {

// Complete discrete cases over a variable table. Values are 0-based state
// indices, validated against arities at construction. Stored column-major;
// immutable and freely shareable.
class Dataset {
public:
    explicit Dataset(VariableTable vt);
    // rows[t][i] = state of variable i in case t.
    Dataset(VariableTable vt, const std::vector<std::vector<int>>& rows);

    const VariableTable& variables() const { return vt_; }
    int variable_count() const { return vt_.size(); }
    int case_count() const { return case_count_; }
    int value(int var, int case_index) const { return columns_[var][case_index]; }
    const std::vector<uint8_t>& column(int var) const { return columns_.at(var); }

private:
    VariableTable vt_;
    int case_count_ = 0;
    std::vector<std::vector<uint8_t>> columns_;
};

struct ScoringConfig {
    // Equivalent sample size (prior precision). Must be > 0.
    double ess = 8.0;
};

// Counts for one (node, ordered parent list) family. Parent configurations
// are mixed-radix with the first parent most significant; rows are stored
// sparsely keyed by observed configuration index, so unobserved
// configurations never materialize.
struct SufficientStats {
    int node = -1;
    std::vector<int> parents;
    // configuration j -> per-child-state counts (length = child arity)
    std::map<uint64_t, std::vector<int64_t>> rows;

    int64_t row_total(uint64_t j) const;
    int64_t total() const;
};

SufficientStats sufficient_stats(const Dataset& d, int node,
                                 const std::vector<int>& parents);

// Number of parent configurations, as an exactly computed product of
// parent arities (double holds it exactly at sane scales).
double parent_config_count(const VariableTable& vt, const std::vector<int>& parents);

// Log marginal likelihood contribution of one family under uniform
// Dirichlet priors with alpha_jk = ess/(r*q) and alpha_j = ess/q:
//
//   sum_j [lgamma(a_j) - lgamma(a_j + N_j)]
//       + sum_{j,k} [lgamma(a_jk + N_jk) - lgamma(a_jk)]
//
// Unobserved configurations contribute 0 (the gamma ratios cancel).
// Natural log throughout. Throws on ess <= 0.
double bdeu_local(const SufficientStats& stats, const ScoringConfig& cfg,
                  int child_arity, double parent_configs);

// Memo of local scores keyed by (node, parent set). The key is the sorted
// parent index list, so lookups are insensitive to parent order (the local
// score is too). Unbounded; guarded by a mutex so concurrent evaluation
// fan-outs can share one instance.
class ScoreCache {
public:
    std::optional<double> lookup(int node, const std::vector<int>& sorted_parents) const;
    void store(int node, const std::vector<int>& sorted_parents, double value);
    size_t size() const;

private:
    struct Key {
        int node;
        std::vector<int> parents;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        size_t operator()(const Key& k) const;
    };

    mutable std::mutex mutex_;
    std::unordered_map<Key, double, KeyHash> map_;
};

// Local score of (node, parents) through the cache (nullptr for none).
// Parents may be given in any order.
double local_score(const Dataset& d, const ScoringConfig& cfg, int node,
                   const std::vector<int>& parents, ScoreCache* cache);

// Decomposable total: sum of local scores over every node with its parent
// set in g. Uniform structure prior (constant, dropped).
double bdeu_total(const Dag& g, const Dataset& d, const ScoringConfig& cfg,
                  ScoreCache* cache = nullptr);

// Score of an equivalence class, evaluated on the stored witness
// extension. By score equivalence the choice of class member is
// immaterial.
double score_cpdag(const CompletedPdag& p, const Dataset& d,
                   const ScoringConfig& cfg, ScoreCache* cache = nullptr);

}  // namespace bnsl
