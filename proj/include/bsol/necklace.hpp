#pragma once

#include <string>
#include <vector>

#include "bsol/partition.hpp"

namespace bsol {

/// Binary cyclic word up to rotation (1 = B, 0 = W), stored as the
/// lexicographically smallest rotation with W < B.
class Necklace {
public:
    static Necklace canonicalize(std::vector<uint8_t> word);
    /// Accepts letters ("BWW") or bits ("100").
    static Necklace parse(const std::string& text);

    const std::vector<uint8_t>& word() const { return word_; }
    int length() const { return static_cast<int>(word_.size()); }
    int ones() const;
    bool all_white() const { return ones() == 0; }

    /// Display spelling: letters of the lexicographically maximal rotation,
    /// which reproduces the conventional B-leading names (BWW, BBWW, ...).
    std::string to_string() const;

    bool operator==(const Necklace&) const = default;
    auto operator<=>(const Necklace&) const = default;

private:
    Necklace() = default;
    std::vector<uint8_t> word_;
};

/// Smallest d dividing |N| with word equal to its own d-rotation.
int primitive_period(const Necklace& n);
bool is_primitive(const Necklace& n);

/// Canonical form of P's word repeated k times.
Necklace power(const Necklace& p, int k);

/// Swap black and white beads.
Necklace color_swap(const Necklace& p);

struct NecklaceParams {
    int m;  // necklace length
    int r;  // number of black beads, 0 <= r < m
};

/// The unique (m, r) with C(m,2) <= n < C(m+1,2) and r = n - C(m,2);
/// orbits of P(n) are indexed by length-m necklaces with r blacks.
NecklaceParams necklace_params_for_n(long long n);

/// All canonical necklaces of length m with exactly r ones, sorted.
std::vector<Necklace> enumerate_necklaces(int m, int r);

/// The bracketed recurrent cycle: roots gamma^(t) ordered so that reverse
/// play of part 1 maps root t's partition to root t+1's (cyclically).
struct RecurrentCycle {
    Necklace necklace;
    std::vector<DiffLabeling> roots;
    int order() const { return static_cast<int>(roots.size()); }
};

RecurrentCycle recurrent_cycle(const Necklace& n);

/// diff_inverse of each root at base |N|; bs_forward permutes this list
/// cyclically (one step backwards).
std::vector<Partition> recurrent_partitions(const Necklace& n);

}  // namespace bsol
