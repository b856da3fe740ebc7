#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bnsl/equivalence.hpp"
#include "bnsl/graph.hpp"
#include "bnsl/scoring.hpp"

namespace bnsl {

// Local move over individual dags: add an edge between non-adjacent nodes,
// or delete or reverse an existing edge, always subject to acyclicity.
enum class BOpKind : uint8_t { Add, Delete, Reverse };

struct BOperator {
    BOpKind kind;
    int x;
    int y;

    std::string describe() const;
    friend bool operator==(const BOperator&, const BOperator&) = default;
};

// All legal moves from g, in the fixed total order used for tie-breaking:
// kind rank (Add < Delete < Reverse), then (x, y) lexicographic. Deletes
// are always legal; adds and reversals are filtered by acyclicity.
std::vector<BOperator> b_neighbors(const Dag& g);

// Throws std::invalid_argument if the operator is not legal for g.
Dag apply_b(const Dag& g, const BOperator& op);

// Moves over completed pdags. Pair operators carry (x, y); the v-structure
// insertion carries a triple (x, y, z), canonicalized x < z, with x and z
// non-adjacent and at least one of them adjacent to y.
enum class EOpKind : uint8_t {
    DeleteUndirected,
    DeleteDirected,
    ReverseDirected,
    InsertUndirected,
    InsertDirected,
    InsertVStructure,
};

struct EOperator {
    EOpKind kind;
    int x;
    int y;
    int z = -1;

    std::string describe() const;
    friend bool operator==(const EOperator&, const EOperator&) = default;
};

// The syntactic candidate set, before legality filtering, in the fixed
// total order (kind rank in enum order, then node indices lexicographic).
// A v-structure triple is generated only when neither existing (x, y) nor
// (z, y) edge is directed away from y; a triple that would need to flip
// such an arc is reachable through ReverseDirected instead.
std::vector<EOperator> e_candidates(const CompletedPdag& p);

// Applies op through the standard pipeline: modify the underlying pdag,
// reject if the directed part is cyclic, recover a consistent extension
// (reject if none), and recomplete. nullopt means the operator is illegal
// for this state. Throws std::invalid_argument only if op is not even
// syntactically valid for p.
std::optional<CompletedPdag> apply_e(const CompletedPdag& p, const EOperator& op);

enum class SearchSpace : uint8_t { B, E, Hybrid };

struct SearchStep {
    std::string op;
    double delta = 0.0;
    double score = 0.0;  // after the step
};

struct SearchOptions {
    // Rescore the state from scratch after every accepted move and check
    // the incrementally maintained score against it (1e-9 relative).
    bool validate_deltas = false;
};

struct SearchResult {
    std::variant<Dag, CompletedPdag> state;
    double score = 0.0;
    std::vector<SearchStep> trace;
    int64_t evaluations = 0;  // scored candidates
    int64_t illegal = 0;      // candidates rejected by the legality pipeline

    const Dag* dag() const { return std::get_if<Dag>(&state); }
    const CompletedPdag* cpdag() const { return std::get_if<CompletedPdag>(&state); }
    // The learned equivalence class regardless of space.
    CompletedPdag result_class() const;
    // One line per step: "step <i> <op> <delta> <score>".
    std::string format_trace() const;
};

// Greedy hill-climbing from the empty graph: at every step score all legal
// neighbors and move to the strictly best one; stop when no neighbor
// strictly improves. Ties go to the smallest operator in the fixed total
// order, which makes runs deterministic.
SearchResult greedy_b(const Dataset& d, const ScoringConfig& cfg, ScoreCache* cache,
                      const SearchOptions& opts = {});
SearchResult greedy_e(const Dataset& d, const ScoringConfig& cfg, ScoreCache* cache,
                      const SearchOptions& opts = {});
SearchResult greedy(SearchSpace space, const Dataset& d, const ScoringConfig& cfg,
                    ScoreCache* cache, const SearchOptions& opts = {});

// Alternation: run dag-space greedy to a local maximum, look for one
// strictly improving class-space move from its completed pdag, take it,
// and resume dag-space search from the new witness. Terminates when the
// class-space probe finds nothing; the final score can only meet or beat
// plain dag-space greedy on the same input.
SearchResult hybrid_greedy(const Dataset& d, const ScoringConfig& cfg,
                           ScoreCache* cache, const SearchOptions& opts = {});

}  // namespace bnsl
