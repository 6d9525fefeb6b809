#include "bsol/forest.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "bsol/errors.hpp"

namespace bsol {

namespace {

enum class Family { W, BW, General };

struct ForestCtx {
    Family family;
    int period;  // primitive period p (BW: 2, W: 1)
    std::vector<ForestNode> roots;
};

Family classify(const Necklace& p) {
    if (p.all_white()) return Family::W;
    if (p.word() == std::vector<uint8_t>{0, 1}) return Family::BW;
    if (is_primitive(p) && p.length() >= 3) return Family::General;
    throw std::invalid_argument("forest requires W, BW, or a primitive necklace of length >= 3 (got " +
                                p.to_string() + ")");
}

ForestNode make_root(std::vector<int> entries, std::vector<uint8_t> brackets, int tail_root) {
    return {std::move(entries), std::move(brackets), tail_root, 0, ""};
}

ForestCtx make_ctx(const Necklace& p) {
    Family fam = classify(p);
    ForestCtx ctx{fam, 1, {}};
    switch (fam) {
        case Family::W:
            ctx.period = 1;
            ctx.roots.push_back(make_root({0, 0}, {1, 1}, 1));
            break;
        case Family::BW:
            ctx.period = 2;
            ctx.roots.push_back(make_root({0, 1}, {1, 1}, 1));
            ctx.roots.push_back(make_root({1, 0, 1}, {1, 1, 1}, 2));
            break;
        case Family::General: {
            ctx.period = p.length();
            auto rc = recurrent_cycle(p);
            for (size_t t = 0; t < rc.roots.size(); ++t)
                ctx.roots.push_back(make_root(rc.roots[t].entries, rc.roots[t].brackets,
                                              static_cast<int>(t) + 1));
            break;
        }
    }
    return ctx;
}

const ForestNode& root_of(const ForestCtx& ctx, int tail_root) {
    return ctx.roots[static_cast<size_t>(tail_root - 1)];
}

int next_root(const ForestCtx& ctx, int tail_root) {
    return tail_root % static_cast<int>(ctx.roots.size()) + 1;
}

int prev_root(const ForestCtx& ctx, int tail_root) {
    return (tail_root + static_cast<int>(ctx.roots.size()) - 2) % static_cast<int>(ctx.roots.size()) + 1;
}

// Length of the suffix that matches the node's tail root.
int taillen(const ForestCtx& ctx, const ForestNode& node) {
    if (ctx.family == Family::BW)
        return static_cast<int>(root_of(ctx, node.tail_root).entries.size());
    return ctx.period;
}

[[noreturn]] void structure_error(const ForestNode& node, const char* what) {
    throw std::logic_error(std::string("forest invariant violated (") + what + ") at " + node.label());
}

// Structural checks on every emitted node; they mirror the properties the
// construction must maintain, so a rule bug fails loudly instead of skewing counts.
void check_node(const ForestCtx& ctx, const ForestNode& node, int played_index, bool tail_play) {
    const auto& e = node.entries;
    const auto& b = node.brackets;
    const int len = static_cast<int>(e.size());
    if (b.size() != e.size()) structure_error(node, "entry/bracket size mismatch");

    if (ctx.family == Family::W) {
        for (int i = 0; i + 1 < len; ++i)
            if (e[static_cast<size_t>(i)] < e[static_cast<size_t>(i + 1)])
                structure_error(node, "W labels must be weakly decreasing");
        return;
    }

    // Adjacent increases are exactly 1, and no strictly increasing triple
    // at any index combination j1 < j2 < j3.
    for (int i = 0; i + 1 < len; ++i)
        if (e[static_cast<size_t>(i)] < e[static_cast<size_t>(i + 1)] &&
            e[static_cast<size_t>(i + 1)] - e[static_cast<size_t>(i)] != 1)
            structure_error(node, "adjacent increase exceeds 1");
    if (len >= 3) {
        std::vector<int> suffix_max(e.size());
        suffix_max.back() = e.back();
        for (int i = len - 2; i >= 0; --i)
            suffix_max[static_cast<size_t>(i)] = std::max(e[static_cast<size_t>(i)], suffix_max[static_cast<size_t>(i + 1)]);
        int prefix_min = e[0];
        for (int j = 1; j + 1 < len; ++j) {
            if (prefix_min < e[static_cast<size_t>(j)] && e[static_cast<size_t>(j)] < suffix_max[static_cast<size_t>(j + 1)])
                structure_error(node, "strictly increasing triple");
            prefix_min = std::min(prefix_min, e[static_cast<size_t>(j)]);
        }
    }

    // Entries-tail must equal the recorded root's entries.
    const auto& root = root_of(ctx, node.tail_root);
    const int tl = static_cast<int>(root.entries.size());
    if (len < tl) structure_error(node, "node shorter than its tail");
    for (int i = 0; i < tl; ++i)
        if (e[static_cast<size_t>(len - tl + i)] != root.entries[static_cast<size_t>(i)])
            structure_error(node, "tail entries do not match root");

    if (played_index > 0) {
        // Playability bound: brackets sit at or above played index + 2.
        for (int i = played_index + 2; i < len; ++i)
            if (b[static_cast<size_t>(i)]) structure_error(node, "bracket below playability bound");
        // Tail-plays restore the full root bracket pattern.
        if (tail_play)
            for (int i = 0; i < tl; ++i)
                if (b[static_cast<size_t>(len - tl + i)] != root.brackets[static_cast<size_t>(i)])
                    structure_error(node, "tail brackets do not match root after tail play");
    }
}

// Drop trailing unbracketed entries that merely repeat the periodic
// continuation; this is the shortest-prefix display the figures use and it
// maximizes state merging. Level counts do not depend on it.
void normalize(const ForestCtx& ctx, ForestNode& node) {
    if (ctx.family != Family::General) return;
    const int p = ctx.period;
    while (static_cast<int>(node.entries.size()) > p && !node.brackets.back() &&
           node.entries.back() == node.entries[node.entries.size() - 1 - static_cast<size_t>(p)]) {
        node.entries.pop_back();
        node.brackets.pop_back();
        node.tail_root = prev_root(ctx, node.tail_root);
    }
}

// Rule 1: the played part is in the tail. Append so that the suffix from i is
// a full root, replace it by the cyclically next root (bracketed as the root),
// then increase and bracket everything above.
ForestNode expand_tail_play(const ForestCtx& ctx, const ForestNode& node, int i) {
    const auto& e = node.entries;
    const int len = static_cast<int>(e.size());

    int target_len;
    int s;  // root matched by the extended suffix
    if (ctx.family == Family::BW) {
        s = e[static_cast<size_t>(i - 1)] == 0 ? 1 : 2;
        target_len = static_cast<int>(root_of(ctx, s).entries.size());
    } else {
        target_len = ctx.period;
        s = 0;  // resolved below
    }

    std::vector<int> suffix(e.begin() + (i - 1), e.end());
    while (static_cast<int>(suffix.size()) < target_len) {
        // Periodic continuation of the node's suffix.
        size_t idx = (static_cast<size_t>(i - 1) + suffix.size()) - static_cast<size_t>(ctx.period);
        suffix.push_back(idx < e.size() ? e[idx] : suffix[suffix.size() - static_cast<size_t>(ctx.period)]);
    }
    if (ctx.family == Family::BW) {
        if (suffix != root_of(ctx, s).entries) structure_error(node, "BW tail does not extend to a root");
    } else {
        for (size_t t = 0; t < ctx.roots.size(); ++t)
            if (ctx.roots[t].entries == suffix) s = static_cast<int>(t) + 1;
        if (s == 0) structure_error(node, "tail suffix does not extend to a root");
    }

    const auto& replacement = root_of(ctx, next_root(ctx, s));
    ForestNode child;
    child.entries.reserve(static_cast<size_t>(i - 1) + replacement.entries.size());
    for (int q = 0; q < i - 1; ++q) child.entries.push_back(e[static_cast<size_t>(q)] + 1);
    child.brackets.assign(static_cast<size_t>(i - 1), 1);
    child.entries.insert(child.entries.end(), replacement.entries.begin(), replacement.entries.end());
    child.brackets.insert(child.brackets.end(), replacement.brackets.begin(), replacement.brackets.end());
    child.tail_root = next_root(ctx, s);
    child.depth = node.depth + 1;
    (void)len;
    return child;
}

// Rule 2 (+3): the played part is above the tail. Delete it, then increase
// and bracket everything above. Of the surviving lower parts only the three
// at the deletion site can stay playable: position i+t of the child is
// bracketed iff its entry is at least (played value) + t - 1, the staircase
// comparison against the new column height. This covers both of the stated
// bracket clauses (the "differs at most 1" rule and the (s, s+1)
// propagation) and the equal-entries case they leave implicit.
ForestNode expand_above_play(const ForestCtx& ctx, const ForestNode& node, int i) {
    const auto& e = node.entries;
    const int len = static_cast<int>(e.size());
    const int old_value = e[static_cast<size_t>(i - 1)];
    (void)ctx;

    ForestNode child;
    child.entries.reserve(static_cast<size_t>(len - 1));
    for (int q = 0; q < i - 1; ++q) child.entries.push_back(e[static_cast<size_t>(q)] + 1);
    for (int q = i; q < len; ++q) child.entries.push_back(e[static_cast<size_t>(q)]);
    child.brackets.assign(child.entries.size(), 0);
    for (int q = 0; q < i - 1; ++q) child.brackets[static_cast<size_t>(q)] = 1;
    for (int t = 0; t <= 2; ++t) {
        int q = i - 1 + t;  // 0-based child position i+t
        if (q >= static_cast<int>(child.entries.size())) break;
        if (child.entries[static_cast<size_t>(q)] >= old_value + t - 1)
            child.brackets[static_cast<size_t>(q)] = 1;
    }
    child.tail_root = node.tail_root;
    child.depth = node.depth + 1;
    return child;
}

// W-forest rules: delete, increase-and-bracket above, bracket the new i-th
// part when within 1, and replenish the two bracketed trailing zeros whenever
// a zero was played.
ForestNode expand_w_play(const ForestNode& node, int i) {
    const auto& e = node.entries;
    const int len = static_cast<int>(e.size());
    const int old_value = e[static_cast<size_t>(i - 1)];

    ForestNode child;
    for (int q = 0; q < i - 1; ++q) child.entries.push_back(e[static_cast<size_t>(q)] + 1);
    for (int q = i; q < len; ++q) child.entries.push_back(e[static_cast<size_t>(q)]);
    child.brackets.assign(child.entries.size(), 0);
    for (int q = 0; q < i - 1; ++q) child.brackets[static_cast<size_t>(q)] = 1;
    if (i - 1 < static_cast<int>(child.entries.size()) &&
        std::abs(child.entries[static_cast<size_t>(i - 1)] - old_value) <= 1)
        child.brackets[static_cast<size_t>(i - 1)] = 1;
    if (old_value == 0) {
        int zeros = 0;
        for (auto it = child.entries.rbegin(); it != child.entries.rend() && *it == 0; ++it) ++zeros;
        for (; zeros < 2; ++zeros) {
            child.entries.push_back(0);
            child.brackets.push_back(0);
        }
        const size_t n = child.entries.size();
        child.brackets[n - 1] = 1;
        child.brackets[n - 2] = 1;
    }
    child.tail_root = 1;
    child.depth = node.depth + 1;
    return child;
}

std::vector<ForestNode> expand(const ForestCtx& ctx, const ForestNode& node) {
    const auto& e = node.entries;
    const auto& b = node.brackets;
    const int len = static_cast<int>(e.size());
    std::vector<ForestNode> children;

    for (int i = 1; i <= len; ++i) {
        if (!b[static_cast<size_t>(i - 1)]) continue;
        std::string edge = std::to_string(i);
        if (ctx.family != Family::W) {
            // (s, s+1) means equal parts: playing i or i+1 is the same move.
            if (i < len && e[static_cast<size_t>(i)] == e[static_cast<size_t>(i - 1)] + 1) {
                if (!b[static_cast<size_t>(i)]) structure_error(node, "merged partner not bracketed");
                continue;  // expanded at i+1 with a merged label
            }
            if (i > 1 && b[static_cast<size_t>(i - 2)] &&
                e[static_cast<size_t>(i - 1)] == e[static_cast<size_t>(i - 2)] + 1)
                edge = std::to_string(i - 1) + "/" + std::to_string(i);
        }

        ForestNode child;
        bool tail_play = false;
        if (ctx.family == Family::W) {
            child = expand_w_play(node, i);
        } else if (i > len - taillen(ctx, node)) {
            child = expand_tail_play(ctx, node, i);
            tail_play = true;
        } else {
            child = expand_above_play(ctx, node, i);
        }
        normalize(ctx, child);
        child.edge = std::move(edge);
        check_node(ctx, child, i, tail_play);

        bool dup = false;
        for (const auto& other : children)
            if (other.entries == child.entries && other.brackets == child.brackets) dup = true;
        if (!dup) children.push_back(std::move(child));
    }
    return children;
}

// Interned-state engine: expansion is a pure function of (entries, brackets),
// so equal states have equal subtrees and level counts can be accumulated
// with multiplicities.
//
// With `budget` levels left to count, a play can only read entries within a
// bounded horizon of the bracket frontier: brackets creep down at most one
// position per play, reads stay within two positions of a play, and a tail
// play needs a bracket on one of the last p positions. States that agree up
// to that horizon therefore have identical level counts for the remaining
// depth and are merged under a truncated key.
struct Engine {
    ForestCtx ctx;
    long long max_nodes;
    std::unordered_map<std::string, int> ids;
    std::vector<ForestNode> states;
    std::vector<std::vector<int>> kids;  // lazily filled; {-1} = unexpanded

    static std::string key_of(const ForestNode& n, size_t prefix) {
        std::string k;
        k.reserve(prefix * 3);
        for (size_t i = 0; i < prefix; ++i) {
            k += std::to_string(n.entries[i]);
            k += n.brackets[i] ? '!' : '.';
        }
        return k;
    }

    std::string reduced_key(const ForestNode& n, int budget) const {
        if (budget == 0) return "*";  // only counted, never expanded
        if (ctx.family != Family::General) return key_of(n, n.entries.size());
        int frontier = 0;
        for (size_t i = 0; i < n.brackets.size(); ++i)
            if (n.brackets[i]) frontier = static_cast<int>(i) + 1;
        if (frontier == 0) return "#";  // leaves are interchangeable
        const int len = static_cast<int>(n.entries.size());
        const int horizon = frontier + 2 * budget + 1;
        if (horizon >= len - ctx.period) return key_of(n, n.entries.size());
        return key_of(n, static_cast<size_t>(horizon)) + "|T";
    }

    int intern(ForestNode n) {
        auto key = key_of(n, n.entries.size());
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(states.size());
        if (max_nodes >= 0 && id >= max_nodes)
            throw ResourceGuardError("forest state budget exceeded");
        states.push_back(std::move(n));
        kids.emplace_back();
        kids.back().push_back(-1);  // unexpanded marker
        ids.emplace(std::move(key), id);
        return id;
    }

    const std::vector<int>& children(int id) {
        if (!(kids[static_cast<size_t>(id)].size() == 1 && kids[static_cast<size_t>(id)][0] == -1))
            return kids[static_cast<size_t>(id)];
        auto expanded = expand(ctx, states[static_cast<size_t>(id)]);
        std::vector<int> out;
        out.reserve(expanded.size());
        for (auto& child : expanded) out.push_back(intern(std::move(child)));
        kids[static_cast<size_t>(id)] = std::move(out);
        return kids[static_cast<size_t>(id)];
    }
};

unsigned long long checked_addu(unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("forest level count overflow");
    return r;
}

}  // namespace

std::string ForestNode::label() const {
    DiffLabeling d{entries, brackets, static_cast<int>(entries.size())};
    return d.to_string();
}

std::vector<ForestNode> forest_roots(const Necklace& p) { return make_ctx(p).roots; }

std::vector<ForestNode> expand_node(const ForestNode& node, const Necklace& p,
                                    const std::vector<ForestNode>& roots) {
    ForestCtx ctx = make_ctx(p);
    if (roots.size() != ctx.roots.size()) throw std::invalid_argument("expand_node: wrong root set");
    return expand(ctx, node);
}

std::vector<unsigned long long> ForestLevels::totals() const {
    std::vector<unsigned long long> t(static_cast<size_t>(depth) + 1, 0);
    for (const auto& tree : per_tree)
        for (size_t d = 0; d < tree.size(); ++d) t[d] = checked_addu(t[d], tree[d]);
    return t;
}

ForestLevels truncated_levels(const Necklace& p, int depth, long long max_nodes) {
    if (depth < 0) throw std::invalid_argument("truncated_levels: depth must be >= 0");
    Engine eng{make_ctx(p), max_nodes, {}, {}, {}};
    ForestLevels levels;
    levels.depth = depth;

    for (const auto& root : eng.ctx.roots) {
        std::vector<unsigned long long> counts{1};
        // Equivalence class -> (representative full state, multiplicity).
        std::unordered_map<std::string, std::pair<int, unsigned long long>> cur;
        cur.emplace(eng.reduced_key(root, depth), std::make_pair(eng.intern(root), 1ULL));
        for (int d = 1; d <= depth; ++d) {
            const int budget = depth - d;
            std::unordered_map<std::string, std::pair<int, unsigned long long>> next;
            for (const auto& [key, rep] : cur)
                for (int cid : eng.children(rep.first)) {
                    auto ck = eng.reduced_key(eng.states[static_cast<size_t>(cid)], budget);
                    auto [it, fresh] = next.emplace(std::move(ck), std::make_pair(cid, rep.second));
                    if (!fresh) it->second.second = checked_addu(it->second.second, rep.second);
                }
            unsigned long long total = 0;
            for (const auto& [key, rep] : next) total = checked_addu(total, rep.second);
            counts.push_back(total);
            cur = std::move(next);
            if (cur.empty()) {
                counts.resize(static_cast<size_t>(depth) + 1, 0);
                break;
            }
        }
        levels.per_tree.push_back(std::move(counts));
    }
    return levels;
}

std::vector<unsigned long long> pruned_series(const Necklace& p, int depth, long long max_nodes) {
    if (depth < 1) throw std::invalid_argument("pruned_series: depth must be >= 1");
    auto totals = truncated_levels(p, depth, max_nodes).totals();
    std::vector<unsigned long long> h(totals.size());
    h[0] = totals[0];
    for (size_t d = 1; d < totals.size(); ++d) {
        if (totals[d] < totals[d - 1]) throw std::logic_error("forest level counts must be nondecreasing");
        h[d] = totals[d] - totals[d - 1];
    }
    return h;
}

void write_dot(std::ostream& os, const Necklace& p, int depth, long long node_cap) {
    ForestCtx ctx = make_ctx(p);
    os << "digraph forest {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
    long long next_id = 0;
    for (size_t t = 0; t < ctx.roots.size(); ++t) {
        std::vector<std::pair<long long, ForestNode>> frontier;
        long long root_id = next_id++;
        os << "  n" << root_id << " [label=\"" << ctx.roots[t].label() << "\", style=bold];\n";
        frontier.emplace_back(root_id, ctx.roots[t]);
        for (int d = 1; d <= depth && !frontier.empty(); ++d) {
            std::vector<std::pair<long long, ForestNode>> nextf;
            for (auto& [id, node] : frontier) {
                for (auto& child : expand(ctx, node)) {
                    if (next_id >= node_cap) {
                        os << "}\n";
                        return;
                    }
                    long long cid = next_id++;
                    os << "  n" << cid << " [label=\"" << child.label() << "\"];\n";
                    os << "  n" << id << " -> n" << cid << " [label=\"" << child.edge << "\"];\n";
                    nextf.emplace_back(cid, std::move(child));
                }
            }
            frontier = std::move(nextf);
        }
    }
    os << "}\n";
}

}  // namespace bsol
