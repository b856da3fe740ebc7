#include "bnsl/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bnsl {

namespace {

std::string arrow(int a, int b) {
    return std::to_string(a) + "->" + std::to_string(b);
}

std::string line(int a, int b) {
    return std::to_string(a) + "--" + std::to_string(b);
}

// BFS over directed children; optionally pretends one edge is absent.
bool has_path(const Dag& g, int from, int to, std::optional<Edge> skip = {}) {
    if (from == to) return true;
    std::vector<uint8_t> seen(g.node_count(), 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : g.children(v)) {
            if (skip && skip->from == v && skip->to == c) continue;
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
        }
    }
    return false;
}

bool add_is_acyclic(const Dag& g, int x, int y) { return !has_path(g, y, x); }

bool reverse_is_acyclic(const Dag& g, int x, int y) {
    return !has_path(g, x, y, Edge{x, y});
}

}  // namespace

std::string BOperator::describe() const {
    switch (kind) {
        case BOpKind::Add: return "add(" + arrow(x, y) + ")";
        case BOpKind::Delete: return "delete(" + arrow(x, y) + ")";
        case BOpKind::Reverse: return "reverse(" + arrow(x, y) + ")";
    }
    return "?";
}

std::string EOperator::describe() const {
    switch (kind) {
        case EOpKind::DeleteUndirected: return "delete(" + line(x, y) + ")";
        case EOpKind::DeleteDirected: return "delete(" + arrow(x, y) + ")";
        case EOpKind::ReverseDirected: return "reverse(" + arrow(x, y) + ")";
        case EOpKind::InsertUndirected: return "insert(" + line(x, y) + ")";
        case EOpKind::InsertDirected: return "insert(" + arrow(x, y) + ")";
        case EOpKind::InsertVStructure:
            return "insert-v(" + arrow(x, y) + "<-" + std::to_string(z) + ")";
    }
    return "?";
}

std::vector<BOperator> b_neighbors(const Dag& g) {
    const int n = g.node_count();
    std::vector<BOperator> ops;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y || g.adjacent(x, y)) continue;
            if (add_is_acyclic(g, x, y)) ops.push_back({BOpKind::Add, x, y});
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int y : g.children(x)) ops.push_back({BOpKind::Delete, x, y});
    }
    for (int x = 0; x < n; ++x) {
        for (int y : g.children(x)) {
            if (reverse_is_acyclic(g, x, y)) ops.push_back({BOpKind::Reverse, x, y});
        }
    }
    return ops;
}

Dag apply_b(const Dag& g, const BOperator& op) {
    const int n = g.node_count();
    if (op.x < 0 || op.x >= n || op.y < 0 || op.y >= n || op.x == op.y) {
        throw std::invalid_argument("apply_b: bad operator nodes");
    }
    switch (op.kind) {
        case BOpKind::Add:
            if (g.adjacent(op.x, op.y) || !add_is_acyclic(g, op.x, op.y)) {
                throw std::invalid_argument("apply_b: illegal add " + op.describe());
            }
            return g.with_edge(op.x, op.y);
        case BOpKind::Delete:
            if (!g.has_edge(op.x, op.y)) {
                throw std::invalid_argument("apply_b: illegal delete " + op.describe());
            }
            return g.without_edge(op.x, op.y);
        case BOpKind::Reverse:
            if (!g.has_edge(op.x, op.y) || !reverse_is_acyclic(g, op.x, op.y)) {
                throw std::invalid_argument("apply_b: illegal reverse " + op.describe());
            }
            return g.with_edge_reversed(op.x, op.y);
    }
    throw std::invalid_argument("apply_b: unknown kind");
}

std::vector<EOperator> e_candidates(const CompletedPdag& p) {
    const Pdag& g = p.graph();
    const int n = g.node_count();
    std::vector<EOperator> ops;

    for (const Edge& e : g.undirected_edges()) {
        ops.push_back({EOpKind::DeleteUndirected, e.from, e.to});
    }
    for (const Edge& e : g.directed_edges()) {
        ops.push_back({EOpKind::DeleteDirected, e.from, e.to});
    }
    for (const Edge& e : g.directed_edges()) {
        ops.push_back({EOpKind::ReverseDirected, e.from, e.to});
    }
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (!g.adjacent(x, y)) ops.push_back({EOpKind::InsertUndirected, x, y});
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x != y && !g.adjacent(x, y)) ops.push_back({EOpKind::InsertDirected, x, y});
        }
    }
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (y == x) continue;
            for (int z = x + 1; z < n; ++z) {
                if (z == y || g.adjacent(x, z)) continue;
                if (!g.adjacent(x, y) && !g.adjacent(z, y)) continue;
                // Arcs already leaving y are ReverseDirected territory.
                if (g.has_directed(y, x) || g.has_directed(y, z)) continue;
                ops.push_back({EOpKind::InsertVStructure, x, y, z});
            }
        }
    }
    return ops;
}

namespace {

struct EdgeMatrix {
    int n;
    std::vector<uint8_t> dir;
    std::vector<uint8_t> und;

    explicit EdgeMatrix(const Pdag& p)
        : n(p.node_count()),
          dir(static_cast<size_t>(n) * n, 0),
          und(static_cast<size_t>(n) * n, 0) {
        for (const Edge& e : p.directed_edges()) d(e.from, e.to) = 1;
        for (const Edge& e : p.undirected_edges()) {
            u(e.from, e.to) = 1;
            u(e.to, e.from) = 1;
        }
    }

    uint8_t& d(int a, int b) { return dir[static_cast<size_t>(a) * n + b]; }
    uint8_t& u(int a, int b) { return und[static_cast<size_t>(a) * n + b]; }

    // absent -> new directed arc; undirected -> redirected toward `to`.
    void point_at(int from, int to) {
        u(from, to) = 0;
        u(to, from) = 0;
        d(from, to) = 1;
    }

    Pdag to_pdag() const {
        std::vector<Edge> directed;
        std::vector<Edge> undirected;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (dir[static_cast<size_t>(a) * n + b]) directed.push_back({a, b});
                if (b > a && und[static_cast<size_t>(a) * n + b]) {
                    undirected.push_back({a, b});
                }
            }
        }
        return Pdag(n, directed, undirected);
    }
};

}  // namespace

std::optional<CompletedPdag> apply_e(const CompletedPdag& p, const EOperator& op) {
    const Pdag& g = p.graph();
    const int n = g.node_count();
    auto in_range = [n](int v) { return v >= 0 && v < n; };
    if (!in_range(op.x) || !in_range(op.y) || op.x == op.y) {
        throw std::invalid_argument("apply_e: bad operator nodes");
    }

    EdgeMatrix work(g);
    switch (op.kind) {
        case EOpKind::DeleteUndirected:
            if (!g.has_undirected(op.x, op.y)) {
                throw std::invalid_argument("apply_e: no undirected edge " + op.describe());
            }
            work.u(op.x, op.y) = 0;
            work.u(op.y, op.x) = 0;
            break;
        case EOpKind::DeleteDirected:
            if (!g.has_directed(op.x, op.y)) {
                throw std::invalid_argument("apply_e: no directed edge " + op.describe());
            }
            work.d(op.x, op.y) = 0;
            break;
        case EOpKind::ReverseDirected:
            if (!g.has_directed(op.x, op.y)) {
                throw std::invalid_argument("apply_e: no directed edge " + op.describe());
            }
            work.d(op.x, op.y) = 0;
            work.d(op.y, op.x) = 1;
            break;
        case EOpKind::InsertUndirected:
            if (g.adjacent(op.x, op.y)) {
                throw std::invalid_argument("apply_e: nodes adjacent " + op.describe());
            }
            work.u(op.x, op.y) = 1;
            work.u(op.y, op.x) = 1;
            break;
        case EOpKind::InsertDirected:
            if (g.adjacent(op.x, op.y)) {
                throw std::invalid_argument("apply_e: nodes adjacent " + op.describe());
            }
            work.d(op.x, op.y) = 1;
            break;
        case EOpKind::InsertVStructure: {
            if (!in_range(op.z) || op.z == op.x || op.z == op.y) {
                throw std::invalid_argument("apply_e: bad v-structure triple");
            }
            if (g.adjacent(op.x, op.z)) {
                throw std::invalid_argument("apply_e: v-structure endpoints adjacent");
            }
            if (!g.adjacent(op.x, op.y) && !g.adjacent(op.z, op.y)) {
                throw std::invalid_argument("apply_e: v-structure lacks an adjacency");
            }
            if (g.has_directed(op.y, op.x) || g.has_directed(op.y, op.z)) {
                throw std::invalid_argument("apply_e: v-structure would flip an arc");
            }
            work.point_at(op.x, op.y);
            work.point_at(op.z, op.y);
            break;
        }
    }

    Pdag modified = work.to_pdag();
    if (pdag_has_directed_cycle(modified)) return std::nullopt;
    auto extension = pdag_to_dag(modified);
    if (!extension) return std::nullopt;
    return dag_to_cpdag(*extension);
}

CompletedPdag SearchResult::result_class() const {
    if (const Dag* g = dag()) return dag_to_cpdag(*g);
    return *cpdag();
}

std::string SearchResult::format_trace() const {
    std::string out;
    char buf[64];
    for (size_t i = 0; i < trace.size(); ++i) {
        out += "step " + std::to_string(i) + " " + trace[i].op;
        std::snprintf(buf, sizeof buf, " %.6f %.6f\n", trace[i].delta, trace[i].score);
        out += buf;
    }
    return out;
}

namespace {

// Score difference between two class members, summed over the nodes whose
// parent sets differ. With score equivalence this equals the difference of
// the class scores no matter which members are compared.
double parent_diff_delta(const Dag& before, const Dag& after, const Dataset& d,
                         const ScoringConfig& cfg, ScoreCache* cache) {
    double delta = 0.0;
    for (int v = 0; v < before.node_count(); ++v) {
        if (before.parents(v) == after.parents(v)) continue;
        delta += local_score(d, cfg, v, after.parents(v), cache) -
                 local_score(d, cfg, v, before.parents(v), cache);
    }
    return delta;
}

void check_incremental(double incremental, double scratch, const char* where) {
    double tol = 1e-9 * std::max(1.0, std::abs(scratch));
    if (std::abs(incremental - scratch) > tol) {
        throw std::logic_error(std::string(where) +
                               ": incremental score drifted from rescore");
    }
}

// Strict float improvement terminates on any real data, but exact score
// ties between distinct states can round to +-1 ulp; a generous bound
// turns a hypothetical tie-noise loop into an error.
int64_t step_bound(int n) { return 200 + static_cast<int64_t>(20) * n * n; }

void check_step_bound(size_t steps, int n, const char* where) {
    if (static_cast<int64_t>(steps) > step_bound(n)) {
        throw std::logic_error(std::string(where) + ": step bound exceeded");
    }
}

double b_delta(const Dag& g, const BOperator& op, const Dataset& d,
               const ScoringConfig& cfg, ScoreCache* cache) {
    auto with_parent = [](std::vector<int> pa, int p) {
        pa.push_back(p);
        return pa;
    };
    auto without_parent = [](std::vector<int> pa, int p) {
        pa.erase(std::remove(pa.begin(), pa.end(), p), pa.end());
        return pa;
    };
    switch (op.kind) {
        case BOpKind::Add:
            return local_score(d, cfg, op.y, with_parent(g.parents(op.y), op.x), cache) -
                   local_score(d, cfg, op.y, g.parents(op.y), cache);
        case BOpKind::Delete:
            return local_score(d, cfg, op.y, without_parent(g.parents(op.y), op.x), cache) -
                   local_score(d, cfg, op.y, g.parents(op.y), cache);
        case BOpKind::Reverse:
            return local_score(d, cfg, op.y, without_parent(g.parents(op.y), op.x), cache) -
                   local_score(d, cfg, op.y, g.parents(op.y), cache) +
                   local_score(d, cfg, op.x, with_parent(g.parents(op.x), op.y), cache) -
                   local_score(d, cfg, op.x, g.parents(op.x), cache);
    }
    return 0.0;
}

}  // namespace

SearchResult greedy_b(const Dataset& d, const ScoringConfig& cfg, ScoreCache* cache,
                      const SearchOptions& opts) {
    Dag g(d.variable_count());
    double score = bdeu_total(g, d, cfg, cache);

    SearchResult result{g, score, {}, 0, 0};
    for (;;) {
        std::optional<BOperator> best;
        double best_delta = 0.0;
        for (const BOperator& op : b_neighbors(g)) {
            double delta = b_delta(g, op, d, cfg, cache);
            ++result.evaluations;
            if (delta > best_delta) {
                best = op;
                best_delta = delta;
            }
        }
        if (!best) break;
        g = apply_b(g, *best);
        score += best_delta;
        if (opts.validate_deltas) {
            check_incremental(score, bdeu_total(g, d, cfg, cache), "greedy_b");
        }
        result.trace.push_back({best->describe(), best_delta, score});
        check_step_bound(result.trace.size(), g.node_count(), "greedy_b");
    }
    result.state = g;
    result.score = bdeu_total(g, d, cfg, cache);
    return result;
}

SearchResult greedy_e(const Dataset& d, const ScoringConfig& cfg, ScoreCache* cache,
                      const SearchOptions& opts) {
    CompletedPdag state = dag_to_cpdag(Dag(d.variable_count()));
    double score = score_cpdag(state, d, cfg, cache);

    SearchResult result{state, score, {}, 0, 0};
    for (;;) {
        std::optional<CompletedPdag> best_state;
        std::string best_desc;
        double best_delta = 0.0;
        for (const EOperator& op : e_candidates(state)) {
            auto next = apply_e(state, op);
            if (!next) {
                ++result.illegal;
                continue;
            }
            double delta =
                parent_diff_delta(state.witness(), next->witness(), d, cfg, cache);
            ++result.evaluations;
            if (delta > best_delta) {
                best_state = std::move(next);
                best_desc = op.describe();
                best_delta = delta;
            }
        }
        if (!best_state) break;
        state = std::move(*best_state);
        score += best_delta;
        if (opts.validate_deltas) {
            check_incremental(score, score_cpdag(state, d, cfg, cache), "greedy_e");
        }
        result.trace.push_back({best_desc, best_delta, score});
        check_step_bound(result.trace.size(), state.node_count(), "greedy_e");
    }
    result.state = state;
    result.score = score_cpdag(state, d, cfg, cache);
    return result;
}

SearchResult greedy(SearchSpace space, const Dataset& d, const ScoringConfig& cfg,
                    ScoreCache* cache, const SearchOptions& opts) {
    switch (space) {
        case SearchSpace::B: return greedy_b(d, cfg, cache, opts);
        case SearchSpace::E: return greedy_e(d, cfg, cache, opts);
        case SearchSpace::Hybrid: return hybrid_greedy(d, cfg, cache, opts);
    }
    throw std::invalid_argument("greedy: unknown search space");
}

SearchResult hybrid_greedy(const Dataset& d, const ScoringConfig& cfg, ScoreCache* cache,
                           const SearchOptions& opts) {
    Dag g(d.variable_count());
    double score = bdeu_total(g, d, cfg, cache);

    SearchResult result{g, score, {}, 0, 0};
    for (;;) {
        // Dag-space phase, to a local maximum.
        for (;;) {
            std::optional<BOperator> best;
            double best_delta = 0.0;
            for (const BOperator& op : b_neighbors(g)) {
                double delta = b_delta(g, op, d, cfg, cache);
                ++result.evaluations;
                if (delta > best_delta) {
                    best = op;
                    best_delta = delta;
                }
            }
            if (!best) break;
            g = apply_b(g, *best);
            score += best_delta;
            if (opts.validate_deltas) {
                check_incremental(score, bdeu_total(g, d, cfg, cache), "hybrid_greedy/b");
            }
            result.trace.push_back({"b:" + best->describe(), best_delta, score});
            check_step_bound(result.trace.size(), g.node_count(), "hybrid_greedy");
        }

        // One class-space step, if anything improves.
        CompletedPdag state = dag_to_cpdag(g);
        std::optional<CompletedPdag> best_state;
        std::string best_desc;
        double best_delta = 0.0;
        for (const EOperator& op : e_candidates(state)) {
            auto next = apply_e(state, op);
            if (!next) {
                ++result.illegal;
                continue;
            }
            double delta = parent_diff_delta(g, next->witness(), d, cfg, cache);
            ++result.evaluations;
            if (delta > best_delta) {
                best_state = std::move(next);
                best_desc = op.describe();
                best_delta = delta;
            }
        }
        if (!best_state) {
            result.state = state;
            result.score = score_cpdag(state, d, cfg, cache);
            return result;
        }
        score += best_delta;
        g = best_state->witness();
        if (opts.validate_deltas) {
            check_incremental(score, bdeu_total(g, d, cfg, cache), "hybrid_greedy/e");
        }
        result.trace.push_back({"e:" + best_desc, best_delta, score});
        check_step_bound(result.trace.size(), g.node_count(), "hybrid_greedy");
    }
}

}  // namespace bnsl
