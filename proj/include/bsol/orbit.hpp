#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bsol/necklace.hpp"
#include "bsol/partition.hpp"

namespace bsol {

/// One component of the game graph: the recurrent cycle at level 0 plus the
/// trees that hang off it, with the level statistic for every member.
struct Orbit {
    Necklace necklace;
    long long n = 0;
    std::vector<Partition> cycle;      // level 0, in reverse-play (R_1) order
    std::map<Partition, int> levels;   // every member -> level
    std::vector<long long> histogram;  // histogram[d] = number of level-d members
    bool truncated = false;

    long long size() const { return static_cast<long long>(levels.size()); }
    int cycle_length() const { return static_cast<int>(cycle.size()); }
};

struct OrbitOptions {
    std::optional<int> max_level;  // truncate after this level and mark partial
    long long max_nodes = -1;      // resource guard; -1 = unlimited
};

/// Breadth-first reverse play from the recurrent cycle.
Orbit build_orbit(const Necklace& n, const OrbitOptions& opts = {});

/// Level-count polynomial D_N(x) as a coefficient vector; rejects truncated orbits.
std::vector<long long> level_gf(const Orbit& o);

/// One orbit per necklace of P(n); together they partition P(n).
std::vector<Orbit> decompose(long long n, long long max_nodes = -1);

/// Independent oracle: enumerate all of P(n), follow the forward map to
/// detect cycles, compute levels by forward distance. Same shape as decompose.
std::vector<Orbit> forward_oracle(long long n);

/// p(n) by the pentagonal-number recurrence; overflow-checked.
long long partition_count(int n);

/// Sizes of the orbits of P^k for k = 1..k_max.
std::vector<long long> orbit_size_sequence(const Necklace& p, int k_max, long long max_nodes = -1);

/// T_0 = 1, T_1 = 2, T_k = 4 T_{k-1} - T_{k-2}.
long long chebyshev_T_at_2(int k);

struct ConjectureReport {
    Necklace p;
    Necklace swapped;
    std::vector<long long> sizes;          // |O_{P^k}|, k = 1..k_max
    std::vector<long long> swapped_sizes;
    // Exact reduced ratios |O_{P^k}| / |O_{P^{k-1}}| for k = 2..k_max.
    std::vector<std::pair<long long, long long>> ratios;
    std::vector<std::pair<long long, long long>> swapped_ratios;
    bool has_integer_c = false;
    long long c = 0;  // valid when has_integer_c: the single integer all ratios equal
    bool swapped_has_integer_c = false;
    long long swapped_c = 0;
    bool swap_match = false;  // both integral and equal
};

/// Evidence report for the geometric-growth conjecture; asserts nothing.
ConjectureReport conjecture_ratios(const Necklace& p, int k_max, long long max_nodes = -1);

}  // namespace bsol
