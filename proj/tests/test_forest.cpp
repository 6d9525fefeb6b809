#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>
#include <random>
#include <sstream>

#include "bsol/forest.hpp"
#include "bsol/orbit.hpp"

using namespace bsol;

namespace {

Necklace N(const char* s) { return Necklace::parse(s); }

ForestNode node_of(std::vector<int> entries, std::vector<uint8_t> brackets, int tail_root) {
    return {std::move(entries), std::move(brackets), tail_root, 0, ""};
}

// Find the child reached by playing index i (matching merged labels "a/b").
const ForestNode* child_by_play(const std::vector<ForestNode>& children, int i) {
    for (const auto& c : children) {
        auto slash = c.edge.find('/');
        if (slash == std::string::npos) {
            if (c.edge == std::to_string(i)) return &c;
        } else {
            if (c.edge.substr(0, slash) == std::to_string(i) ||
                c.edge.substr(slash + 1) == std::to_string(i))
                return &c;
        }
    }
    return nullptr;
}

// Walk a playing sequence through the forest; fails the test on a dead end.
ForestNode walk(const Necklace& p, const ForestNode& start, const std::vector<int>& plays) {
    auto roots = forest_roots(p);
    ForestNode cur = start;
    for (int i : plays) {
        auto kids = expand_node(cur, p, roots);
        const ForestNode* next = child_by_play(kids, i);
        REQUIRE(next != nullptr);
        cur = *next;
    }
    return cur;
}

}  // namespace

TEST_CASE("forest roots") {
    auto w = forest_roots(N("W"));
    REQUIRE(w.size() == 1);
    CHECK(w[0].entries == std::vector<int>{0, 0});
    CHECK(w[0].brackets == std::vector<uint8_t>{1, 1});

    auto w4 = forest_roots(N("WWWW"));  // any all-white necklace means W
    CHECK(w4 == std::vector<ForestNode>{w[0]});

    auto bw = forest_roots(N("BW"));
    REQUIRE(bw.size() == 2);
    CHECK(bw[0].entries == std::vector<int>{0, 1});
    CHECK(bw[0].brackets == std::vector<uint8_t>{1, 1});
    CHECK(bw[1].entries == std::vector<int>{1, 0, 1});
    CHECK(bw[1].brackets == std::vector<uint8_t>{1, 1, 1});

    auto bwww = forest_roots(N("BWWW"));
    REQUIRE(bwww.size() == 4);
    CHECK(bwww[0].entries == std::vector<int>{0, 0, 0, 1});
    CHECK(bwww[0].brackets == std::vector<uint8_t>{1, 0, 0, 0});
    CHECK(bwww[1].entries == std::vector<int>{0, 0, 1, 0});
    CHECK(bwww[1].brackets == std::vector<uint8_t>{1, 1, 1, 0});
    CHECK(bwww[2].entries == std::vector<int>{0, 1, 0, 0});
    CHECK(bwww[2].brackets == std::vector<uint8_t>{1, 1, 0, 0});
    CHECK(bwww[3].entries == std::vector<int>{1, 0, 0, 0});
    CHECK(bwww[3].brackets == std::vector<uint8_t>{1, 1, 0, 0});

    CHECK_THROWS_AS(forest_roots(N("BWBW")), std::invalid_argument);
    CHECK_THROWS_AS(forest_roots(N("B")), std::invalid_argument);
    CHECK_THROWS_AS(forest_roots(N("BBWBBW")), std::invalid_argument);
}

TEST_CASE("expansion worked example in the BWWW forest") {
    auto roots = forest_roots(N("BWWW"));
    // (<2>,<0>,<0>,<1>,0) with tail gamma^(2): children are plays 1, 2, 3/4.
    auto lambda = node_of({2, 0, 0, 1, 0}, {1, 1, 1, 1, 0}, 2);
    auto kids = expand_node(lambda, N("BWWW"), roots);
    REQUIRE(kids.size() == 3);

    const ForestNode* r1 = child_by_play(kids, 1);
    REQUIRE(r1 != nullptr);
    CHECK(r1->entries == std::vector<int>{0, 0, 1, 0});
    CHECK(r1->brackets == std::vector<uint8_t>{0, 0, 0, 0});  // leaf: new first part differs by 2

    const ForestNode* r2 = child_by_play(kids, 2);
    REQUIRE(r2 != nullptr);
    CHECK(r2->entries == std::vector<int>{3, 0, 1, 0, 0});
    CHECK(r2->brackets == std::vector<uint8_t>{1, 1, 1, 0, 0});

    const ForestNode* r3 = child_by_play(kids, 3);
    REQUIRE(r3 != nullptr);
    CHECK(r3->edge == "3/4");
    CHECK(r3->entries == std::vector<int>{3, 1, 1, 0, 0, 0});
    CHECK(r3->brackets == std::vector<uint8_t>{1, 1, 1, 1, 0, 0});
    CHECK(child_by_play(kids, 4) == r3);
}

TEST_CASE("BWWW forest figure: tree roots expand as drawn") {
    auto P = N("BWWW");
    auto roots = forest_roots(P);

    // G_1 root has the single merged-free play 1 back to gamma^(2).
    auto g1 = expand_node(roots[0], P, roots);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].edge == "1");
    CHECK(g1[0].entries == roots[1].entries);
    CHECK(g1[0].brackets == roots[1].brackets);

    // G_2 root: play 1 -> gamma^(3) copy; play 2/3 -> (<1>,<1>,<0>,0,0).
    auto g2 = expand_node(roots[1], P, roots);
    REQUIRE(g2.size() == 2);
    CHECK(g2[0].entries == roots[2].entries);
    CHECK(g2[0].brackets == roots[2].brackets);
    CHECK(g2[1].edge == "2/3");
    CHECK(g2[1].entries == std::vector<int>{1, 1, 0, 0, 0});
    CHECK(g2[1].brackets == std::vector<uint8_t>{1, 1, 1, 0, 0});

    // G_3 root: single merged play 1/2 to gamma^(4) copy.
    auto g3 = expand_node(roots[2], P, roots);
    REQUIRE(g3.size() == 1);
    CHECK(g3[0].edge == "1/2");
    CHECK(g3[0].entries == roots[3].entries);
    CHECK(g3[0].brackets == roots[3].brackets);

    // G_4 root: play 1 -> gamma^(1) copy; play 2 -> (<2>,<0>,<0>,<1>,0).
    auto g4 = expand_node(roots[3], P, roots);
    REQUIRE(g4.size() == 2);
    CHECK(g4[0].entries == roots[0].entries);
    CHECK(g4[0].brackets == roots[0].brackets);
    CHECK(g4[1].edge == "2");
    CHECK(g4[1].entries == std::vector<int>{2, 0, 0, 1, 0});
    CHECK(g4[1].brackets == std::vector<uint8_t>{1, 1, 1, 1, 0});
}

TEST_CASE("BW forest figure edges") {
    auto P = N("BW");
    auto roots = forest_roots(P);

    auto g1 = expand_node(roots[0], P, roots);
    REQUIRE(g1.size() == 1);
    CHECK(g1[0].edge == "1/2");
    CHECK(g1[0].entries == std::vector<int>{1, 0, 1});
    CHECK(g1[0].brackets == std::vector<uint8_t>{1, 1, 1});

    auto g2 = expand_node(roots[1], P, roots);
    REQUIRE(g2.size() == 2);
    CHECK(g2[0].edge == "1");
    CHECK(g2[0].entries == std::vector<int>{0, 1});
    CHECK(g2[0].brackets == std::vector<uint8_t>{1, 1});
    CHECK(g2[1].edge == "2/3");
    CHECK(g2[1].entries == std::vector<int>{2, 1, 0, 1});
    CHECK(g2[1].brackets == std::vector<uint8_t>{1, 1, 1, 1});

    // Teardown chain from (<2>,<1>,<0>,<1>) via play 1 twice reaches gamma^(1).
    auto t1 = walk(P, g2[1], {1});
    CHECK(t1.entries == std::vector<int>{1, 0, 1});
    CHECK(t1.brackets == std::vector<uint8_t>{1, 0, 0});
    auto t2 = walk(P, t1, {1});
    CHECK(t2.entries == std::vector<int>{0, 1});
    CHECK(t2.brackets == std::vector<uint8_t>{1, 1});
}

TEST_CASE("W forest figure") {
    auto P = N("W");
    auto roots = forest_roots(P);

    auto kids = expand_node(roots[0], P, roots);
    REQUIRE(kids.size() == 2);
    CHECK(kids[0].edge == "1");
    CHECK(kids[0].entries == std::vector<int>{0, 0});  // self-copy
    CHECK(kids[0].brackets == std::vector<uint8_t>{1, 1});
    CHECK(kids[1].edge == "2");
    CHECK(kids[1].entries == std::vector<int>{1, 0, 0});
    CHECK(kids[1].brackets == std::vector<uint8_t>{1, 1, 1});

    auto inner = expand_node(kids[1], P, roots);
    REQUIRE(inner.size() == 3);
    CHECK(inner[0].entries == std::vector<int>{0, 0});
    CHECK(inner[0].brackets == std::vector<uint8_t>{1, 0});
    CHECK(inner[1].entries == std::vector<int>{2, 0, 0});
    CHECK(inner[1].brackets == std::vector<uint8_t>{1, 1, 1});
    CHECK(inner[2].entries == std::vector<int>{2, 1, 0, 0});
    CHECK(inner[2].brackets == std::vector<uint8_t>{1, 1, 1, 1});

    // (<0>,0) flows back to the root state.
    auto back = expand_node(inner[0], P, roots);
    REQUIRE(back.size() == 1);
    CHECK(back[0].entries == std::vector<int>{0, 0});
    CHECK(back[0].brackets == std::vector<uint8_t>{1, 1});
}

TEST_CASE("W-forest level counts satisfy the pruning relation") {
    // g must be the cumulative sums of the limiting series 1,1,3,8,21,55,...
    auto levels = truncated_levels(N("W"), 8);
    REQUIRE(levels.per_tree.size() == 1);
    CHECK(levels.totals() == std::vector<unsigned long long>{1, 2, 5, 13, 34, 89, 233, 610, 1597});
    CHECK(pruned_series(N("W"), 8) ==
          std::vector<unsigned long long>{1, 1, 3, 8, 21, 55, 144, 377, 987});
}

TEST_CASE("BW-forest level counts") {
    auto levels = truncated_levels(N("BW"), 8);
    REQUIRE(levels.per_tree.size() == 2);
    // g_1 = 1 + x g_2 coefficientwise.
    const auto& g1 = levels.per_tree[0];
    const auto& g2 = levels.per_tree[1];
    CHECK(g1[0] == 1);
    CHECK(g1[1] == 1);
    for (int d = 1; d <= 8; ++d) CHECK(g1[static_cast<size_t>(d)] == g2[static_cast<size_t>(d - 1)]);
    CHECK(pruned_series(N("BW"), 8) ==
          std::vector<unsigned long long>{2, 1, 3, 7, 15, 33, 71, 155, 335});
}

TEST_CASE("BWW forest: depth zero is the three roots") {
    auto levels = truncated_levels(N("BWW"), 0);
    REQUIRE(levels.per_tree.size() == 3);
    for (const auto& tree : levels.per_tree) {
        REQUIRE(tree.size() == 1);
        CHECK(tree[0] == 1);
    }
}

TEST_CASE("Prop 3.1(i): after R_1 in the BW forest, only R_1 or a root copy") {
    auto P = N("BW");
    auto roots = forest_roots(P);
    std::deque<ForestNode> frontier{roots[0], roots[1]};
    for (int d = 0; d < 12; ++d) {
        std::deque<ForestNode> next;
        for (const auto& node : frontier)
            for (const auto& child : expand_node(node, P, roots)) {
                bool from_root = node.entries == roots[0].entries || node.entries == roots[1].entries;
                if (!from_root && child.edge == "1") {
                    bool is_root_copy =
                        (child.entries == roots[0].entries && child.brackets == roots[0].brackets) ||
                        (child.entries == roots[1].entries && child.brackets == roots[1].brackets);
                    if (!is_root_copy) {
                        for (size_t q = 1; q < child.brackets.size(); ++q) CHECK_FALSE(child.brackets[q]);
                    }
                }
                next.push_back(child);
            }
        frontier = std::move(next);
    }
}

TEST_CASE("Prop 3.1(ii): [2 3 ... r 1^r] returns to gamma^(1)") {
    auto P = N("BW");
    auto roots = forest_roots(P);
    for (int r = 2; r <= 8; ++r) {
        std::vector<int> plays;
        for (int i = 2; i <= r; ++i) plays.push_back(i);
        plays.insert(plays.end(), static_cast<size_t>(r), 1);
        auto end = walk(P, roots[1], plays);
        CHECK(end.entries == roots[0].entries);
        CHECK(end.brackets == roots[0].brackets);
    }
}

TEST_CASE("structural invariants hold during BFS for |P| <= 5 to depth 20") {
    // expand() asserts tail integrity, the bracket playability bound, gap-1
    // and no-3-increasing on every emitted node; a violation throws.
    for (const char* name : {"W", "BW", "BWW", "BBW", "BWWW", "BBWW", "BBBW", "BWWWW", "BBWWW",
                             "BWBWW", "BBBWW", "BBWBW", "BBBBW"}) {
        auto series = pruned_series(N(name), 20);
        CHECK(series[0] >= 1);
    }
}

TEST_CASE("prefix determinacy: forest nodes match the finite system at k = 10") {
    std::mt19937 rng(20240811);
    for (const char* name : {"BWW", "BBW", "BWWW", "BBWW", "BBBW", "BWWWW", "BBWBW"}) {
        auto P = N(name);
        const int p = P.length();
        const int k = 10;
        const int m = p * k;
        auto roots = forest_roots(P);
        auto finite_roots = recurrent_cycle(power(P, k));

        for (int t = 0; t < p; ++t) {
            for (int trial = 0; trial < 6; ++trial) {
                ForestNode node = roots[static_cast<size_t>(t)];
                Partition finite = diff_inverse(finite_roots.roots[static_cast<size_t>(t)]);
                for (int step = 0; step < 8; ++step) {
                    auto kids = expand_node(node, P, roots);
                    if (kids.empty()) break;
                    const auto& child = kids[rng() % kids.size()];
                    // The applied index is the (possibly merged-higher) edge index.
                    int applied = child.edge.find('/') == std::string::npos
                                      ? std::stoi(child.edge)
                                      : std::stoi(child.edge.substr(child.edge.find('/') + 1));
                    auto next = reverse_move(finite, applied);
                    REQUIRE(next.has_value());
                    finite = *next;
                    node = child;

                    // Compare the forest prefix with the finite labeling at base m.
                    int base = std::max(m, finite.length());
                    auto lab = diff_labeling(finite, base);
                    int shift = base - m;
                    REQUIRE(static_cast<int>(lab.entries.size()) >= static_cast<int>(node.entries.size()));
                    for (size_t q = 0; q < node.entries.size(); ++q) {
                        CHECK(node.entries[q] == lab.entries[q] + shift);
                        CHECK(node.brackets[q] == lab.brackets[q]);
                    }
                    // No playable part hides beyond the forest prefix.
                    for (size_t q = node.entries.size(); q < lab.brackets.size(); ++q)
                        CHECK_FALSE(lab.brackets[q]);
                }
            }
        }
    }
}

TEST_CASE("DOT dump") {
    std::ostringstream os;
    write_dot(os, N("BW"), 3);
    auto text = os.str();
    CHECK(text.find("digraph") != std::string::npos);
    CHECK(text.find("<1>,<0>,<1>") != std::string::npos);
    CHECK(text.find("label=\"2/3\"") != std::string::npos);
}
