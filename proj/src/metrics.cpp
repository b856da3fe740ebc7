#include "bnsl/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace bnsl {

EdgeMark edge_mark(const Pdag& p, int a, int b) {
    int lo = std::min(a, b);
    int hi = std::max(a, b);
    if (p.has_undirected(lo, hi)) return EdgeMark::Undirected;
    if (p.has_directed(lo, hi)) return EdgeMark::Forward;
    if (p.has_directed(hi, lo)) return EdgeMark::Backward;
    return EdgeMark::Absent;
}

int structural_difference(const CompletedPdag& a, const CompletedPdag& b) {
    if (a.node_count() != b.node_count()) {
        throw std::invalid_argument("structural_difference: node count mismatch");
    }
    const int n = a.node_count();
    int diff = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (edge_mark(a.graph(), i, j) != edge_mark(b.graph(), i, j)) ++diff;
        }
    }
    return diff;
}

}  // namespace bnsl
