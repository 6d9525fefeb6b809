#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bsol {

/// Integer partition: weakly decreasing positive parts. The empty partition
/// (n = 0) is valid and is a fixed point of every operation defined on it.
class Partition {
public:
    Partition() = default;
    /// Validates weak decrease and positivity; throws std::invalid_argument.
    explicit Partition(std::vector<int> parts);
    /// Trusted fast path for callers that construct sorted-positive vectors.
    static Partition unchecked(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    long long total() const;
    bool empty() const { return parts_.empty(); }
    /// 1-based part access, matching the paper's indexing.
    int part(int j) const { return parts_[static_cast<size_t>(j - 1)]; }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition&) const = default;

    std::string to_string() const;  // "(4,2,2)", empty -> "()"
    static Partition parse(const std::string& text);

private:
    std::vector<int> parts_;
};

/// A partition minus a staircase: entries may be negative, brackets mark the
/// positions whose reverse move is legal on the underlying partition.
struct DiffLabeling {
    std::vector<int> entries;
    std::vector<uint8_t> brackets;  // same length as entries
    int base_m = 0;

    bool operator==(const DiffLabeling&) const = default;
    std::string to_string() const;  // "<1>,<0>,1,0"
};

using PlayingSequence = std::vector<int>;  // 1-based part indices

/// One Bulgarian solitaire move: take one from each part, the removed column
/// becomes a new part.
Partition bs_forward(const Partition& p);

/// (m-1, m-2, ..., 1, 0); m = 0 gives the empty vector.
std::vector<int> staircase(int m);

/// True iff R_j is legal: p_j >= l(p) - 1. j must be in [1, l(p)].
bool reverse_legal(const Partition& p, int j);

/// Partial inverse of bs_forward: remove part j and reinsert it as the new
/// leftmost column. Returns nullopt (the invalid move) when p_j < l(p) - 1.
std::optional<Partition> reverse_move(const Partition& p, int j);

/// All j with p_j >= l(p) - 1, ascending. May be empty (e.g. (1,1,1)).
std::vector<int> legal_moves(const Partition& p);

struct ApplyResult {
    std::optional<Partition> result;
    int failed_step = 0;  // 1-based index of the first illegal step; 0 on success
    bool ok() const { return result.has_value(); }
};

/// Left fold of reverse_move; invalid as soon as any step is illegal
/// (out-of-range indices count as illegal steps).
ApplyResult apply_sequence(const Partition& p, const PlayingSequence& seq);

/// Pad p with zeros to length m and subtract the staircase. Requires m >= l(p).
DiffLabeling diff_labeling(const Partition& p, int m);

/// Add the staircase back and drop trailing zeros; rejects vectors whose sum
/// is not a valid partition.
Partition diff_inverse(const std::vector<int>& entries, int m);
Partition diff_inverse(const DiffLabeling& d);

}  // namespace bsol
