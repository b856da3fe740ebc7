#include "bnsl/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bnsl {

Dataset::Dataset(VariableTable vt) : vt_(std::move(vt)), columns_(vt_.size()) {}

Dataset::Dataset(VariableTable vt, const std::vector<std::vector<int>>& rows)
    : vt_(std::move(vt)) {
    const int n = vt_.size();
    case_count_ = static_cast<int>(rows.size());
    columns_.assign(n, {});
    for (auto& col : columns_) col.reserve(rows.size());
    for (size_t t = 0; t < rows.size(); ++t) {
        if (static_cast<int>(rows[t].size()) != n) {
            throw std::invalid_argument("dataset: case " + std::to_string(t) +
                                        " has wrong width");
        }
        for (int i = 0; i < n; ++i) {
            int v = rows[t][i];
            if (v < 0 || v >= vt_.arity(i)) {
                throw std::invalid_argument("dataset: value out of range for " +
                                            vt_.name(i) + " in case " + std::to_string(t));
            }
            columns_[i].push_back(static_cast<uint8_t>(v));
        }
    }
}

int64_t SufficientStats::row_total(uint64_t j) const {
    auto it = rows.find(j);
    if (it == rows.end()) return 0;
    return std::accumulate(it->second.begin(), it->second.end(), int64_t{0});
}

int64_t SufficientStats::total() const {
    int64_t t = 0;
    for (const auto& [j, counts] : rows) {
        t += std::accumulate(counts.begin(), counts.end(), int64_t{0});
    }
    return t;
}

SufficientStats sufficient_stats(const Dataset& d, int node,
                                 const std::vector<int>& parents) {
    const auto& vt = d.variables();
    if (node < 0 || node >= vt.size()) {
        throw std::invalid_argument("sufficient_stats: node out of range");
    }
    for (int p : parents) {
        if (p < 0 || p >= vt.size()) {
            throw std::invalid_argument("sufficient_stats: parent out of range");
        }
        if (p == node) {
            throw std::invalid_argument("sufficient_stats: node cannot be its own parent");
        }
    }

    SufficientStats stats;
    stats.node = node;
    stats.parents = parents;
    const int r = vt.arity(node);
    const auto& child_col = d.column(node);
    const int m = d.case_count();
    for (int t = 0; t < m; ++t) {
        uint64_t j = 0;
        for (int p : parents) {
            j = j * static_cast<uint64_t>(vt.arity(p)) + d.value(p, t);
        }
        auto [it, fresh] = stats.rows.try_emplace(j, std::vector<int64_t>(r, 0));
        ++it->second[child_col[t]];
    }
    return stats;
}

double parent_config_count(const VariableTable& vt, const std::vector<int>& parents) {
    double q = 1.0;
    for (int p : parents) q *= vt.arity(p);
    return q;
}

double bdeu_local(const SufficientStats& stats, const ScoringConfig& cfg,
                  int child_arity, double parent_configs) {
    if (cfg.ess <= 0.0) throw std::invalid_argument("bdeu: ess must be > 0");
    if (child_arity < 1) throw std::invalid_argument("bdeu: child arity < 1");
    if (parent_configs < 1.0) throw std::invalid_argument("bdeu: parent configs < 1");

    const double alpha_j = cfg.ess / parent_configs;
    const double alpha_jk = alpha_j / child_arity;
    const double lg_alpha_j = std::lgamma(alpha_j);
    const double lg_alpha_jk = std::lgamma(alpha_jk);

    double score = 0.0;
    for (const auto& [j, counts] : stats.rows) {
        int64_t nj = 0;
        for (int64_t c : counts) nj += c;
        score += lg_alpha_j - std::lgamma(alpha_j + static_cast<double>(nj));
        for (int64_t c : counts) {
            if (c > 0) score += std::lgamma(alpha_jk + static_cast<double>(c)) - lg_alpha_jk;
        }
    }
    return score;
}

size_t ScoreCache::KeyHash::operator()(const Key& k) const {
    // FNV-1a over the node index and parent indices.
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(k.node));
    for (int p : k.parents) mix(static_cast<uint64_t>(p) + 0x9e3779b97f4a7c15ull);
    return static_cast<size_t>(h);
}

std::optional<double> ScoreCache::lookup(int node,
                                         const std::vector<int>& sorted_parents) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = map_.find(Key{node, sorted_parents});
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

void ScoreCache::store(int node, const std::vector<int>& sorted_parents, double value) {
    std::lock_guard<std::mutex> lock(mutex_);
    map_.emplace(Key{node, sorted_parents}, value);
}

size_t ScoreCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return map_.size();
}

double local_score(const Dataset& d, const ScoringConfig& cfg, int node,
                   const std::vector<int>& parents, ScoreCache* cache) {
    std::vector<int> key = parents;
    std::sort(key.begin(), key.end());
    if (cache) {
        if (auto hit = cache->lookup(node, key)) return *hit;
    }
    SufficientStats stats = sufficient_stats(d, node, parents);
    double score = bdeu_local(stats, cfg, d.variables().arity(node),
                              parent_config_count(d.variables(), parents));
    if (cache) cache->store(node, key, score);
    return score;
}

double bdeu_total(const Dag& g, const Dataset& d, const ScoringConfig& cfg,
                  ScoreCache* cache) {
    if (g.node_count() != d.variable_count()) {
        throw std::invalid_argument("bdeu_total: graph does not match dataset variables");
    }
    double total = 0.0;
    for (int v = 0; v < g.node_count(); ++v) {
        total += local_score(d, cfg, v, g.parents(v), cache);
    }
    return total;
}

double score_cpdag(const CompletedPdag& p, const Dataset& d, const ScoringConfig& cfg,
                   ScoreCache* cache) {
    return bdeu_total(p.witness(), d, cfg, cache);
}

}  // namespace bnsl
