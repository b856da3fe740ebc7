#include "bnsl/equivalence.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnsl {

CompletedPdag::CompletedPdag(Pdag p, Dag witness)
    : pdag_(std::move(p)), witness_(std::move(witness)) {}

CompletedPdag CompletedPdag::from_pdag(const Pdag& p) {
    auto ext = pdag_to_dag(p);
    if (!ext) {
        throw std::invalid_argument("completed pdag: no consistent extension");
    }
    CompletedPdag completed = dag_to_cpdag(*ext);
    if (!(completed.pdag_ == p)) {
        throw std::invalid_argument(
            "completed pdag: input is not the completed form of its class");
    }
    return completed;
}

bool is_consistent_extension(const Dag& g, const Pdag& p) {
    if (g.node_count() != p.node_count()) {
        throw std::invalid_argument("is_consistent_extension: node count mismatch");
    }
    if (skeleton(g) != skeleton(p)) return false;
    if (v_structures(g) != v_structures(p)) return false;
    for (const Edge& e : p.directed_edges()) {
        if (!g.has_edge(e.from, e.to)) return false;
    }
    return true;
}

std::optional<Dag> pdag_to_dag(const Pdag& p) {
    const int n = p.node_count();

    // Working copies; peeling mutates them.
    std::vector<uint8_t> dir(static_cast<size_t>(n) * n, 0);
    std::vector<uint8_t> und(static_cast<size_t>(n) * n, 0);
    auto at = [n](std::vector<uint8_t>& m, int a, int b) -> uint8_t& {
        return m[static_cast<size_t>(a) * n + b];
    };
    for (const Edge& e : p.directed_edges()) at(dir, e.from, e.to) = 1;
    for (const Edge& e : p.undirected_edges()) {
        at(und, e.from, e.to) = 1;
        at(und, e.to, e.from) = 1;
    }

    std::vector<Edge> oriented = p.directed_edges();
    std::vector<uint8_t> alive(n, 1);
    int edges_left = p.edge_count();

    auto adjacent = [&](int a, int b) {
        return at(dir, a, b) || at(dir, b, a) || at(und, a, b);
    };

    while (edges_left > 0) {
        int picked = -1;
        for (int x = 0; x < n && picked < 0; ++x) {
            if (!alive[x]) continue;
            bool sink = true;
            for (int y = 0; y < n && sink; ++y) {
                if (alive[y] && at(dir, x, y)) sink = false;
            }
            if (!sink) continue;
            // Every undirected neighbor of x must be adjacent to all of
            // x's other neighbors.
            bool ok = true;
            for (int y = 0; y < n && ok; ++y) {
                if (!alive[y] || !at(und, x, y)) continue;
                for (int w = 0; w < n && ok; ++w) {
                    if (!alive[w] || w == x || w == y) continue;
                    if (adjacent(x, w) && !adjacent(y, w)) ok = false;
                }
            }
            if (ok) picked = x;
        }
        if (picked < 0) return std::nullopt;

        for (int y = 0; y < n; ++y) {
            if (!alive[y]) continue;
            if (at(und, picked, y)) {
                oriented.push_back({y, picked});
                at(und, picked, y) = 0;
                at(und, y, picked) = 0;
                --edges_left;
            }
            if (at(dir, y, picked)) {
                at(dir, y, picked) = 0;
                --edges_left;
            }
        }
        alive[picked] = 0;
    }
    return Dag(n, oriented);
}

namespace {

// Fixpoint closure of the pattern under the sound orientation rules. dir
// and und are adjacency matrices mutated in place.
void orient_forced(int n, std::vector<uint8_t>& dir, std::vector<uint8_t>& und) {
    auto d = [&](int a, int b) -> uint8_t& { return dir[static_cast<size_t>(a) * n + b]; };
    auto u = [&](int a, int b) -> uint8_t& { return und[static_cast<size_t>(a) * n + b]; };
    auto adjacent = [&](int a, int b) { return d(a, b) || d(b, a) || u(a, b); };
    auto direct = [&](int a, int b) {
        u(a, b) = 0;
        u(b, a) = 0;
        d(a, b) = 1;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                if (a == b || !u(a, b)) continue;
                // Orienting a-b the other way would create a new
                // v-structure: some x->a with x, b non-adjacent.
                bool force = false;
                for (int x = 0; x < n && !force; ++x) {
                    if (x != b && d(x, a) && !adjacent(x, b)) force = true;
                }
                // Orienting b->a would close a directed cycle a -> x -> b.
                for (int x = 0; x < n && !force; ++x) {
                    if (x != a && x != b && d(a, x) && d(x, b)) force = true;
                }
                if (!force) {
                    // Induced closure: two non-adjacent directed parents
                    // x->b, y->b reached from a by undirected edges force
                    // a->b (otherwise some orientation of the pair would
                    // create a v-structure at a).
                    for (int x = 0; x < n && !force; ++x) {
                        if (x == a || x == b || !u(a, x) || !d(x, b)) continue;
                        for (int y = x + 1; y < n && !force; ++y) {
                            if (y == a || y == b || !u(a, y) || !d(y, b)) continue;
                            if (!adjacent(x, y)) force = true;
                        }
                    }
                }
                if (force) {
                    direct(a, b);
                    changed = true;
                }
            }
        }
    }
}

}  // namespace

CompletedPdag dag_to_cpdag(const Dag& g) {
    const int n = g.node_count();
    std::vector<uint8_t> dir(static_cast<size_t>(n) * n, 0);
    std::vector<uint8_t> und(static_cast<size_t>(n) * n, 0);
    for (const Edge& e : g.edges()) {
        und[static_cast<size_t>(e.from) * n + e.to] = 1;
        und[static_cast<size_t>(e.to) * n + e.from] = 1;
    }
    for (const auto& [x, y, z] : v_structures(g)) {
        und[static_cast<size_t>(x) * n + y] = 0;
        und[static_cast<size_t>(y) * n + x] = 0;
        und[static_cast<size_t>(z) * n + y] = 0;
        und[static_cast<size_t>(y) * n + z] = 0;
        dir[static_cast<size_t>(x) * n + y] = 1;
        dir[static_cast<size_t>(z) * n + y] = 1;
    }
    orient_forced(n, dir, und);

    std::vector<Edge> directed;
    std::vector<Edge> undirected;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (dir[static_cast<size_t>(a) * n + b]) directed.push_back({a, b});
            if (b > a && und[static_cast<size_t>(a) * n + b]) undirected.push_back({a, b});
        }
    }
    Pdag completed(n, directed, undirected);
    auto witness = pdag_to_dag(completed);
    if (!witness) {
        throw std::logic_error("dag_to_cpdag: completed pdag lost its extension");
    }
    return CompletedPdag(std::move(completed), std::move(*witness));
}

std::vector<Dag> enumerate_class(const Dag& g) {
    if (g.node_count() > 6) {
        throw std::invalid_argument("enumerate_class: node count exceeds guard (6)");
    }
    const auto pairs = skeleton(g);
    const size_t e = pairs.size();
    std::vector<Dag> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << e); ++mask) {
        std::vector<Edge> edges;
        edges.reserve(e);
        for (size_t i = 0; i < e; ++i) {
            auto [a, b] = pairs[i];
            if (mask & (uint64_t{1} << i)) {
                edges.push_back({a, b});
            } else {
                edges.push_back({b, a});
            }
        }
        if (!is_acyclic(g.node_count(), edges)) continue;
        Dag candidate(g.node_count(), edges);
        if (dags_equivalent(g, candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

bool cpdag_equal(const CompletedPdag& a, const CompletedPdag& b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("cpdag_equal: node count mismatch");
    }
    return a == b;
}

}  // namespace bnsl
