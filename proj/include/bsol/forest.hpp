#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bsol/necklace.hpp"

namespace bsol {

/// A vertex of a quasi-infinite tree: a finite prefix of an infinite
/// difference vector whose suffix matches one of the cycle roots.
struct ForestNode {
    std::vector<int> entries;
    std::vector<uint8_t> brackets;  // same length; true = playable
    int tail_root = 1;              // 1-based root index matched by the suffix
    int depth = 0;
    std::string edge;  // played index, "i" or "i/i+1"; empty for roots

    bool operator==(const ForestNode&) const = default;

    std::string label() const;  // "<1>,<0>,1,0"
};

/// Roots of the quasi-infinite forest: the bracketed recurrent cycle for
/// primitive |P| >= 3, the two special roots for BW, the double zero for W.
/// Rejects everything else (all-white necklaces of any length count as W).
std::vector<ForestNode> forest_roots(const Necklace& p);

/// All children of a node under the expansion rules, i/i+1 duplicates merged,
/// deduplicated by resulting state. A node without brackets is a leaf.
std::vector<ForestNode> expand_node(const ForestNode& node, const Necklace& p,
                                    const std::vector<ForestNode>& roots);

struct ForestLevels {
    std::vector<std::vector<unsigned long long>> per_tree;  // [tree][depth]
    int depth = 0;

    std::vector<unsigned long long> totals() const;
};

/// Exact per-tree level counts for depths 0..D. max_nodes bounds the number
/// of distinct states materialized (-1 = unlimited).
ForestLevels truncated_levels(const Necklace& p, int depth, long long max_nodes = -1);

/// h[d] = g[d] - g[d-1] with h[0] = g[0]: the limiting level sizes.
std::vector<unsigned long long> pruned_series(const Necklace& p, int depth, long long max_nodes = -1);

/// DOT dump of the truncated forest for inspection.
void write_dot(std::ostream& os, const Necklace& p, int depth, long long node_cap = 2000);

}  // namespace bsol
