#include "bnsl/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace bnsl {

VariableTable::VariableTable(std::vector<std::string> names, std::vector<int> arities)
    : names_(std::move(names)), arities_(std::move(arities)) {
    if (names_.size() != arities_.size()) {
        throw std::invalid_argument("variable table: names/arities size mismatch");
    }
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i].empty()) {
            throw std::invalid_argument("variable table: empty name");
        }
        if (arities_[i] < 1) {
            throw std::invalid_argument("variable table: arity < 1 for " + names_[i]);
        }
        auto [it, fresh] = index_.emplace(names_[i], static_cast<int>(i));
        if (!fresh) {
            throw std::invalid_argument("variable table: duplicate name " + names_[i]);
        }
    }
}

VariableTable VariableTable::binary(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return VariableTable(std::move(names), std::vector<int>(n, 2));
}

int VariableTable::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

namespace {

void check_endpoints(int n, const Edge& e, const char* what) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
        throw std::invalid_argument(std::string(what) + ": edge endpoint out of range");
    }
}

// Kahn's algorithm over an adjacency-count representation.
bool acyclic_impl(int n, const std::vector<std::vector<int>>& children,
                  std::vector<int> in_degree) {
    std::vector<int> ready;
    for (int v = 0; v < n; ++v) {
        if (in_degree[v] == 0) ready.push_back(v);
    }
    int removed = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++removed;
        for (int c : children[v]) {
            if (--in_degree[c] == 0) ready.push_back(c);
        }
    }
    return removed == n;
}

}  // namespace

bool is_acyclic(int node_count, const std::vector<Edge>& edges) {
    std::vector<std::vector<int>> children(node_count);
    std::vector<int> in_degree(node_count, 0);
    for (const Edge& e : edges) {
        check_endpoints(node_count, e, "is_acyclic");
        if (e.from == e.to) return false;
        children[e.from].push_back(e.to);
        ++in_degree[e.to];
    }
    return acyclic_impl(node_count, children, std::move(in_degree));
}

Dag::Dag(int node_count) : n_(node_count), adj_(static_cast<size_t>(n_) * n_, 0),
                           parents_(n_), children_(n_) {
    if (node_count < 0) throw std::invalid_argument("dag: negative node count");
}

Dag::Dag(int node_count, const std::vector<Edge>& edges) : Dag(node_count) {
    for (const Edge& e : edges) {
        check_endpoints(n_, e, "dag");
        if (e.from == e.to) throw std::invalid_argument("dag: self-loop");
        if (adj_[idx(e.from, e.to)]) throw std::invalid_argument("dag: duplicate edge");
        adj_[idx(e.from, e.to)] = 1;
        parents_[e.to].push_back(e.from);
        children_[e.from].push_back(e.to);
        ++edge_count_;
    }
    std::vector<int> in_degree(n_);
    for (int v = 0; v < n_; ++v) {
        in_degree[v] = static_cast<int>(parents_[v].size());
        std::sort(parents_[v].begin(), parents_[v].end());
        std::sort(children_[v].begin(), children_[v].end());
    }
    if (!acyclic_impl(n_, children_, std::move(in_degree))) {
        throw std::invalid_argument("dag: directed cycle");
    }
}

std::vector<Edge> Dag::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int a = 0; a < n_; ++a) {
        for (int b : children_[a]) out.push_back({a, b});
    }
    return out;
}

std::vector<int> Dag::topological_order() const {
    std::vector<int> in_degree(n_);
    for (int v = 0; v < n_; ++v) in_degree[v] = static_cast<int>(parents_[v].size());
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < n_; ++v) {
        if (in_degree[v] == 0) ready.push(v);
    }
    std::vector<int> order;
    order.reserve(n_);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int c : children_[v]) {
            if (--in_degree[c] == 0) ready.push(c);
        }
    }
    return order;
}

Dag Dag::with_edge(int from, int to) const {
    auto es = edges();
    es.push_back({from, to});
    return Dag(n_, es);
}

Dag Dag::without_edge(int from, int to) const {
    if (!has_edge(from, to)) throw std::invalid_argument("dag: no such edge to remove");
    auto es = edges();
    es.erase(std::remove(es.begin(), es.end(), Edge{from, to}), es.end());
    return Dag(n_, es);
}

Dag Dag::with_edge_reversed(int from, int to) const {
    if (!has_edge(from, to)) throw std::invalid_argument("dag: no such edge to reverse");
    auto es = edges();
    for (Edge& e : es) {
        if (e.from == from && e.to == to) e = {to, from};
    }
    return Dag(n_, es);
}

Pdag::Pdag(int node_count)
    : n_(node_count),
      dir_(static_cast<size_t>(n_) * n_, 0),
      und_(static_cast<size_t>(n_) * n_, 0) {
    if (node_count < 0) throw std::invalid_argument("pdag: negative node count");
}

Pdag::Pdag(int node_count, const std::vector<Edge>& directed,
           const std::vector<Edge>& undirected) : Pdag(node_count) {
    for (const Edge& e : directed) {
        check_endpoints(n_, e, "pdag");
        if (e.from == e.to) throw std::invalid_argument("pdag: self-loop");
        if (adjacent(e.from, e.to)) {
            throw std::invalid_argument("pdag: pair carries more than one edge");
        }
        dir_[idx(e.from, e.to)] = 1;
        ++directed_count_;
    }
    for (const Edge& e : undirected) {
        check_endpoints(n_, e, "pdag");
        if (e.from == e.to) throw std::invalid_argument("pdag: self-loop");
        if (adjacent(e.from, e.to)) {
            throw std::invalid_argument("pdag: pair carries more than one edge");
        }
        und_[idx(e.from, e.to)] = 1;
        und_[idx(e.to, e.from)] = 1;
        ++undirected_count_;
    }
}

Pdag Pdag::from_dag(const Dag& g) {
    return Pdag(g.node_count(), g.edges(), {});
}

std::vector<Edge> Pdag::directed_edges() const {
    std::vector<Edge> out;
    out.reserve(directed_count_);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b) {
            if (dir_[idx(a, b)]) out.push_back({a, b});
        }
    }
    return out;
}

std::vector<Edge> Pdag::undirected_edges() const {
    std::vector<Edge> out;
    out.reserve(undirected_count_);
    for (int a = 0; a < n_; ++a) {
        for (int b = a + 1; b < n_; ++b) {
            if (und_[idx(a, b)]) out.push_back({a, b});
        }
    }
    return out;
}

std::vector<int> Pdag::directed_parents(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (dir_[idx(u, v)]) out.push_back(u);
    }
    return out;
}

std::vector<int> Pdag::directed_children(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (dir_[idx(v, u)]) out.push_back(u);
    }
    return out;
}

std::vector<int> Pdag::undirected_neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (und_[idx(v, u)]) out.push_back(u);
    }
    return out;
}

std::vector<int> Pdag::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (u != v && adjacent(v, u)) out.push_back(u);
    }
    return out;
}

bool has_directed_cycle(int node_count, const std::vector<Edge>& directed) {
    std::vector<std::vector<int>> children(node_count);
    std::vector<int> in_degree(node_count, 0);
    for (const Edge& e : directed) {
        check_endpoints(node_count, e, "has_directed_cycle");
        if (e.from == e.to) return true;
        children[e.from].push_back(e.to);
        ++in_degree[e.to];
    }
    return !acyclic_impl(node_count, children, std::move(in_degree));
}

bool pdag_has_directed_cycle(const Pdag& p) {
    return has_directed_cycle(p.node_count(), p.directed_edges());
}

std::vector<std::pair<int, int>> skeleton(const Dag& g) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : g.edges()) {
        out.emplace_back(std::min(e.from, e.to), std::max(e.from, e.to));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> skeleton(const Pdag& p) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : p.directed_edges()) {
        out.emplace_back(std::min(e.from, e.to), std::max(e.from, e.to));
    }
    for (const Edge& e : p.undirected_edges()) {
        out.emplace_back(e.from, e.to);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Shared over Dag and Pdag: HasArc tells whether x->y is an arc, Adjacent
// whether any edge joins the pair.
template <typename HasArc, typename Adjacent>
std::vector<std::array<int, 3>> v_structures_impl(int n, HasArc has_arc,
                                                  Adjacent adjacent) {
    std::vector<std::array<int, 3>> out;
    for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
            if (x == y || !has_arc(x, y)) continue;
            for (int z = x + 1; z < n; ++z) {
                if (z == y || !has_arc(z, y)) continue;
                if (!adjacent(x, z)) out.push_back({x, y, z});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::array<int, 3>> v_structures(const Dag& g) {
    return v_structures_impl(
        g.node_count(), [&](int a, int b) { return g.has_edge(a, b); },
        [&](int a, int b) { return g.adjacent(a, b); });
}

std::vector<std::array<int, 3>> v_structures(const Pdag& p) {
    return v_structures_impl(
        p.node_count(), [&](int a, int b) { return p.has_directed(a, b); },
        [&](int a, int b) { return p.adjacent(a, b); });
}

bool dags_equivalent(const Dag& a, const Dag& b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("dags_equivalent: node count mismatch");
    }
    return skeleton(a) == skeleton(b) && v_structures(a) == v_structures(b);
}

}  // namespace bnsl
