#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bnsl {

struct Edge {
    int from = 0;
    int to = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend bool operator<(const Edge& a, const Edge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    }
};

// Ordered set of named discrete variables. Index order is fixed for the
// lifetime of a problem instance; all graph types refer to variables by
// dense index and names appear only at I/O boundaries.
class VariableTable {
public:
    VariableTable() = default;
    // Throws std::invalid_argument on duplicate names, empty names, or
    // arity < 1. Data-bearing variables are expected to have arity >= 2.
    VariableTable(std::vector<std::string> names, std::vector<int> arities);

    // n binary variables named x0..x{n-1}.
    static VariableTable binary(int n);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    int arity(int i) const { return arities_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& arities() const { return arities_; }

    // -1 if the name is unknown.
    int index_of(const std::string& name) const;

    friend bool operator==(const VariableTable& a, const VariableTable& b) {
        return a.names_ == b.names_ && a.arities_ == b.arities_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> arities_;
    std::unordered_map<std::string, int> index_;
};

// True iff the directed edge set over node_count nodes has no directed
// cycle. Accepts arbitrary candidate edge sets (duplicates allowed,
// self-loops count as cycles).
bool is_acyclic(int node_count, const std::vector<Edge>& edges);

// Directed acyclic graph over dense node indices. Construction validates
// eagerly: self-loops, duplicate edges, out-of-range endpoints and directed
// cycles are all rejected. Immutable; the with_/without_ helpers return
// modified copies.
class Dag {
public:
    explicit Dag(int node_count = 0);
    Dag(int node_count, const std::vector<Edge>& edges);

    int node_count() const { return n_; }
    int edge_count() const { return edge_count_; }
    bool has_edge(int from, int to) const { return adj_[idx(from, to)] != 0; }
    bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

    const std::vector<int>& parents(int v) const { return parents_.at(v); }
    const std::vector<int>& children(int v) const { return children_.at(v); }

    // Edges sorted by (from, to).
    std::vector<Edge> edges() const;

    // Deterministic order: Kahn's algorithm picking the smallest ready index.
    std::vector<int> topological_order() const;

    Dag with_edge(int from, int to) const;
    Dag without_edge(int from, int to) const;
    Dag with_edge_reversed(int from, int to) const;

    friend bool operator==(const Dag& a, const Dag& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    size_t idx(int from, int to) const { return static_cast<size_t>(from) * n_ + to; }

    int n_ = 0;
    int edge_count_ = 0;
    std::vector<uint8_t> adj_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

// Partially directed graph: a pair of nodes carries at most one edge,
// either directed or undirected. The one-edge-per-pair rule is enforced at
// construction; acyclicity of the directed part is NOT (operator
// application needs to build tentative pdags), so callers check with
// pdag_has_directed_cycle where it matters.
class Pdag {
public:
    explicit Pdag(int node_count = 0);
    Pdag(int node_count, const std::vector<Edge>& directed,
         const std::vector<Edge>& undirected);

    // Any dag interpreted as a pdag represents its own equivalence class.
    static Pdag from_dag(const Dag& g);

    int node_count() const { return n_; }
    int directed_count() const { return directed_count_; }
    int undirected_count() const { return undirected_count_; }
    int edge_count() const { return directed_count_ + undirected_count_; }

    bool has_directed(int from, int to) const { return dir_[idx(from, to)] != 0; }
    bool has_undirected(int a, int b) const { return und_[idx(a, b)] != 0; }
    bool adjacent(int a, int b) const {
        return dir_[idx(a, b)] || dir_[idx(b, a)] || und_[idx(a, b)];
    }

    std::vector<Edge> directed_edges() const;
    // Canonical from < to, sorted.
    std::vector<Edge> undirected_edges() const;

    std::vector<int> directed_parents(int v) const;
    std::vector<int> directed_children(int v) const;
    std::vector<int> undirected_neighbors(int v) const;
    // All adjacent nodes regardless of edge kind.
    std::vector<int> neighbors(int v) const;

    friend bool operator==(const Pdag& a, const Pdag& b) {
        return a.n_ == b.n_ && a.dir_ == b.dir_ && a.und_ == b.und_;
    }

private:
    size_t idx(int a, int b) const { return static_cast<size_t>(a) * n_ + b; }

    int n_ = 0;
    int directed_count_ = 0;
    int undirected_count_ = 0;
    std::vector<uint8_t> dir_;
    std::vector<uint8_t> und_;  // symmetric
};

// Cycle check over the directed edges alone; undirected edges do not
// participate. The raw-edge-set overload accepts inputs the Pdag type
// itself would reject (e.g. a 2-cycle) so the definition is testable.
bool has_directed_cycle(int node_count, const std::vector<Edge>& directed);
bool pdag_has_directed_cycle(const Pdag& p);

// Unordered adjacent pairs, canonical a < b, sorted.
std::vector<std::pair<int, int>> skeleton(const Dag& g);
std::vector<std::pair<int, int>> skeleton(const Pdag& p);

// Triples (x, y, z) with arcs x->y and z->y where x and z are not adjacent.
// Only directed edges form arcs; adjacency counts any edge. Canonicalized
// x < z and sorted, so equality is plain vector comparison.
std::vector<std::array<int, 3>> v_structures(const Dag& g);
std::vector<std::array<int, 3>> v_structures(const Pdag& p);

// Same skeleton and same v-structures. Throws std::invalid_argument on
// node-count mismatch.
bool dags_equivalent(const Dag& a, const Dag& b);

}  // namespace bnsl
