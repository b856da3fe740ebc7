#pragma once

#include "bnsl/equivalence.hpp"

namespace bnsl {

// Status of one unordered node pair in a pdag. Forward means low->high for
// the canonical (a < b) pair.
enum class EdgeMark : uint8_t { Absent, Undirected, Forward, Backward };

EdgeMark edge_mark(const Pdag& p, int a, int b);

// Number of unordered pairs whose edge marks differ between the two
// completed pdags. Any mismatch (absent vs present, orientation flip,
// directed vs undirected) counts exactly one, so this is a Hamming
// distance over pair labels. Throws on node-count mismatch.
int structural_difference(const CompletedPdag& a, const CompletedPdag& b);

}  // namespace bnsl
