#pragma once

#include <optional>
#include <vector>

#include "bnsl/graph.hpp"

namespace bnsl {

// Canonical representation of one Markov equivalence class: a pdag whose
// directed edges are exactly the class's compelled edges and whose
// undirected edges are exactly its reversible edges. Two completed pdags
// are equal iff they represent the same class, which makes state
// comparison in equivalence-class search a plain edge-set comparison.
//
// Each instance stores one consistent extension (the witness), recomputed
// on construction via pdag_to_dag so it is deterministic. The witness is
// what scoring functions that take a dag consume.
class CompletedPdag {
public:
    // Validating constructor for externally supplied pdags (file input):
    // recovers an extension, recompletes it, and requires the result to
    // equal the input. Throws std::invalid_argument otherwise.
    static CompletedPdag from_pdag(const Pdag& p);

    const Pdag& graph() const { return pdag_; }
    const Dag& witness() const { return witness_; }
    int node_count() const { return pdag_.node_count(); }
    int edge_count() const { return pdag_.edge_count(); }

    friend bool operator==(const CompletedPdag& a, const CompletedPdag& b) {
        return a.pdag_ == b.pdag_;
    }

private:
    friend CompletedPdag dag_to_cpdag(const Dag& g);
    CompletedPdag(Pdag p, Dag witness);

    Pdag pdag_;
    Dag witness_;
};

// True iff g has the same skeleton and v-structures as p and every
// directed edge of p keeps its orientation in g. Throws on node-count
// mismatch. Note the asymmetry with class membership: every consistent
// extension of p lies in Class(p), but a class member may flip an edge p
// happens to direct.
bool is_consistent_extension(const Dag& g, const Pdag& p);

// Returns a consistent extension of p if one exists, nullopt otherwise.
// Sink-peeling construction: repeatedly pick the lowest-index node with no
// outgoing directed edges whose every undirected neighbor is adjacent to
// all of the node's other neighbors, orient its undirected edges inward,
// and remove it. The lowest-index rule makes the choice among multiple
// valid extensions deterministic.
std::optional<Dag> pdag_to_dag(const Pdag& p);

// Completed pdag representation of Class(g): start from the skeleton,
// direct exactly the v-structure arcs, then close under the sound local
// orientation rules (no new v-structure, no directed cycle, induced
// closure) until fixpoint. Remaining edges stay undirected.
CompletedPdag dag_to_cpdag(const Dag& g);

// Brute-force oracle: all dags equivalent to g, found by enumerating every
// orientation of g's skeleton. Guarded to node_count <= 6; throws beyond.
std::vector<Dag> enumerate_class(const Dag& g);

// Edge-set equality of two completed pdags, which coincides with equality
// of the represented classes. Throws on node-count mismatch.
bool cpdag_equal(const CompletedPdag& a, const CompletedPdag& b);

}  // namespace bnsl
