#include "bsol/orbit.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bsol/errors.hpp"

namespace bsol {

namespace {

long long checked_add(long long a, long long b, const char* what) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(what);
    return r;
}

void enumerate_partitions_rec(int remaining, int max_part, std::vector<int>& stack,
                              std::vector<Partition>& out) {
    if (remaining == 0) {
        out.push_back(Partition::unchecked(stack));
        return;
    }
    for (int v = std::min(remaining, max_part); v >= 1; --v) {
        stack.push_back(v);
        enumerate_partitions_rec(remaining - v, v, stack, out);
        stack.pop_back();
    }
}

std::vector<Partition> enumerate_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> stack;
    enumerate_partitions_rec(n, n, stack, out);
    return out;
}

}  // namespace

Orbit build_orbit(const Necklace& n, const OrbitOptions& opts) {
    Orbit o{n, 0, recurrent_partitions(n), {}, {}, false};
    o.n = o.cycle.front().total();
    std::set<Partition> cycle_set(o.cycle.begin(), o.cycle.end());

    std::deque<Partition> frontier;
    for (const auto& c : o.cycle) {
        o.levels.emplace(c, 0);
        frontier.push_back(c);
    }
    o.histogram.push_back(static_cast<long long>(o.cycle.size()));

    int level = 0;
    long long visited = static_cast<long long>(o.levels.size());
    while (!frontier.empty()) {
        if (opts.max_level && level >= *opts.max_level) {
            o.truncated = true;
            break;
        }
        std::deque<Partition> next;
        for (const auto& cur : frontier) {
            for (int j : legal_moves(cur)) {
                auto child = reverse_move(cur, j);
                if (cycle_set.count(*child)) continue;
                auto [it, fresh] = o.levels.emplace(std::move(*child), level + 1);
                if (!fresh) continue;  // duplicate reverse moves from equal parts
                visited++;
                if (opts.max_nodes >= 0 && visited > opts.max_nodes)
                    throw ResourceGuardError("orbit enumeration exceeded node budget");
                next.push_back(it->first);
            }
        }
        if (next.empty()) break;
        o.histogram.push_back(static_cast<long long>(next.size()));
        frontier = std::move(next);
        ++level;
    }

    long long total = 0;
    for (long long h : o.histogram) total = checked_add(total, h, "orbit size overflow");
    if (total != static_cast<long long>(o.levels.size()))
        throw std::logic_error("orbit histogram does not sum to member count");
    return o;
}

std::vector<long long> level_gf(const Orbit& o) {
    if (o.truncated) throw std::invalid_argument("level_gf: orbit is truncated");
    return o.histogram;
}

std::vector<Orbit> decompose(long long n, long long max_nodes) {
    auto [m, r] = necklace_params_for_n(n);
    std::vector<Orbit> orbits;
    for (const auto& necklace : enumerate_necklaces(m, r))
        orbits.push_back(build_orbit(necklace, {.max_level = {}, .max_nodes = max_nodes}));
    return orbits;
}

std::vector<Orbit> forward_oracle(long long n) {
    if (n < 1 || n > 1000) throw std::invalid_argument("forward_oracle: n out of enumerable range");
    const auto parts = enumerate_partitions(static_cast<int>(n));
    std::map<Partition, int> index;
    for (size_t i = 0; i < parts.size(); ++i) index.emplace(parts[i], static_cast<int>(i));

    const int count = static_cast<int>(parts.size());
    std::vector<int> succ(parts.size());
    for (int i = 0; i < count; ++i) succ[static_cast<size_t>(i)] = index.at(bs_forward(parts[static_cast<size_t>(i)]));

    // Mark recurrent states: walk each unresolved state until a repeat.
    std::vector<int> state(parts.size(), 0);  // 0 unknown, 1 in-progress, 2 done
    std::vector<int> level(parts.size(), -1);
    std::vector<uint8_t> on_cycle(parts.size(), 0);
    for (int start = 0; start < count; ++start) {
        if (state[static_cast<size_t>(start)] == 2) continue;
        std::vector<int> path;
        int cur = start;
        while (state[static_cast<size_t>(cur)] == 0) {
            state[static_cast<size_t>(cur)] = 1;
            path.push_back(cur);
            cur = succ[static_cast<size_t>(cur)];
        }
        if (state[static_cast<size_t>(cur)] == 1) {
            // Found a new cycle: everything from cur onwards in path is recurrent.
            auto it = std::find(path.begin(), path.end(), cur);
            for (auto c = it; c != path.end(); ++c) {
                on_cycle[static_cast<size_t>(*c)] = 1;
                level[static_cast<size_t>(*c)] = 0;
                state[static_cast<size_t>(*c)] = 2;
            }
        }
        // Unwind the non-cycle prefix.
        for (auto rit = path.rbegin(); rit != path.rend(); ++rit) {
            if (state[static_cast<size_t>(*rit)] == 2) continue;
            level[static_cast<size_t>(*rit)] = level[static_cast<size_t>(succ[static_cast<size_t>(*rit)])] + 1;
            state[static_cast<size_t>(*rit)] = 2;
        }
    }

    // Group members by the cycle they reach, keyed by the smallest index on it.
    std::vector<int> cycle_of(parts.size(), -1);
    for (int i = 0; i < count; ++i) {
        if (!on_cycle[static_cast<size_t>(i)]) continue;
        int rep = i, cur = succ[static_cast<size_t>(i)];
        while (cur != i) {
            rep = std::min(rep, cur);
            cur = succ[static_cast<size_t>(cur)];
        }
        cycle_of[static_cast<size_t>(i)] = rep;
    }
    for (int i = 0; i < count; ++i) {
        if (cycle_of[static_cast<size_t>(i)] != -1) continue;
        std::vector<int> chain;
        int cur = i;
        while (cycle_of[static_cast<size_t>(cur)] == -1) {
            chain.push_back(cur);
            cur = succ[static_cast<size_t>(cur)];
        }
        for (int c : chain) cycle_of[static_cast<size_t>(c)] = cycle_of[static_cast<size_t>(cur)];
    }

    const auto params = necklace_params_for_n(n);
    std::map<int, Orbit> by_rep;
    for (int i = 0; i < count; ++i) {
        int rep = cycle_of[static_cast<size_t>(i)];
        auto it = by_rep.find(rep);
        if (it == by_rep.end()) {
            auto lab = diff_labeling(parts[static_cast<size_t>(rep)], params.m);
            for (size_t q = 0; q < lab.entries.size(); ++q)
                if (lab.entries[q] != 0 && lab.entries[q] != 1)
                    throw std::logic_error("forward_oracle: recurrent labeling is not 0/1");
            std::vector<uint8_t> word(lab.entries.begin(), lab.entries.end());
            Orbit o{Necklace::canonicalize(word), n, {}, {}, {}, false};
            it = by_rep.emplace(rep, std::move(o)).first;
        }
        it->second.levels.emplace(parts[static_cast<size_t>(i)], level[static_cast<size_t>(i)]);
    }

    std::vector<Orbit> orbits;
    for (auto& [rep, o] : by_rep) {
        // Cycle in reverse-play order starting from the canonical-word member.
        o.cycle = recurrent_partitions(o.necklace);
        int max_level = 0;
        for (const auto& [part, lv] : o.levels) max_level = std::max(max_level, lv);
        o.histogram.assign(static_cast<size_t>(max_level + 1), 0);
        for (const auto& [part, lv] : o.levels) o.histogram[static_cast<size_t>(lv)]++;
        orbits.push_back(std::move(o));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const Orbit& a, const Orbit& b) { return a.necklace < b.necklace; });
    return orbits;
}

long long partition_count(int n) {
    if (n < 0) return 0;
    std::vector<long long> p(static_cast<size_t>(n) + 1, 0);
    p[0] = 1;
    for (int i = 1; i <= n; ++i) {
        long long total = 0;
        for (int k = 1;; ++k) {
            long long g1 = static_cast<long long>(k) * (3 * k - 1) / 2;
            long long g2 = static_cast<long long>(k) * (3 * k + 1) / 2;
            if (g1 > i && g2 > i) break;
            long long sign = (k % 2 == 1) ? 1 : -1;
            if (g1 <= i) total = checked_add(total, sign * p[static_cast<size_t>(i - g1)], "p(n) overflow");
            if (g2 <= i) total = checked_add(total, sign * p[static_cast<size_t>(i - g2)], "p(n) overflow");
        }
        p[static_cast<size_t>(i)] = total;
    }
    return p[static_cast<size_t>(n)];
}

std::vector<long long> orbit_size_sequence(const Necklace& p, int k_max, long long max_nodes) {
    if (!is_primitive(p)) throw std::invalid_argument("orbit_size_sequence requires a primitive necklace");
    std::vector<long long> sizes;
    for (int k = 1; k <= k_max; ++k)
        sizes.push_back(build_orbit(power(p, k), {.max_level = {}, .max_nodes = max_nodes}).size());
    return sizes;
}

long long chebyshev_T_at_2(int k) {
    if (k < 0) throw std::invalid_argument("chebyshev_T_at_2: k must be nonnegative");
    long long a = 1, b = 2;  // T_0, T_1
    if (k == 0) return a;
    for (int i = 2; i <= k; ++i) {
        long long next;
        if (__builtin_mul_overflow(b, 4LL, &next) || __builtin_sub_overflow(next, a, &next))
            throw OverflowError("Chebyshev value overflow");
        a = b;
        b = next;
    }
    return b;
}

namespace {

std::pair<long long, long long> reduced_ratio(long long num, long long den) {
    long long g = std::gcd(num, den);
    return {num / g, den / g};
}

void fill_ratios(const std::vector<long long>& sizes,
                 std::vector<std::pair<long long, long long>>& ratios, bool& integral, long long& c) {
    integral = true;
    c = 0;
    for (size_t k = 1; k < sizes.size(); ++k) {
        auto r = reduced_ratio(sizes[k], sizes[k - 1]);
        ratios.push_back(r);
        if (r.second != 1 || (c != 0 && r.first != c)) integral = false;
        if (c == 0) c = r.second == 1 ? r.first : 0;
    }
    if (sizes.size() < 2) integral = false;
    if (!integral) c = 0;
}

}  // namespace

ConjectureReport conjecture_ratios(const Necklace& p, int k_max, long long max_nodes) {
    if (!is_primitive(p) || p.length() < 3)
        throw std::invalid_argument("conjecture_ratios requires a primitive necklace of length >= 3");
    ConjectureReport rep{p, color_swap(p), {}, {}, {}, {}, false, 0, false, 0, false};
    rep.sizes = orbit_size_sequence(p, k_max, max_nodes);
    rep.swapped_sizes = orbit_size_sequence(rep.swapped, k_max, max_nodes);
    fill_ratios(rep.sizes, rep.ratios, rep.has_integer_c, rep.c);
    fill_ratios(rep.swapped_sizes, rep.swapped_ratios, rep.swapped_has_integer_c, rep.swapped_c);
    rep.swap_match = rep.has_integer_c && rep.swapped_has_integer_c && rep.c == rep.swapped_c;
    return rep;
}

}  // namespace bsol
