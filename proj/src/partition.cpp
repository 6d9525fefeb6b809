#include "bsol/partition.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bsol {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
        if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

Partition Partition::unchecked(std::vector<int> parts) {
    Partition p;
    p.parts_ = std::move(parts);
    return p;
}

long long Partition::total() const {
    long long n = 0;
    for (int v : parts_) n += v;
    return n;
}

std::string Partition::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    s += ')';
    return s;
}

Partition Partition::parse(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 2 || t.front() != '(' || t.back() != ')')
        throw std::invalid_argument("partition text must look like \"(4,2,2)\"");
    t = t.substr(1, t.size() - 2);
    std::vector<int> parts;
    if (!t.empty()) {
        std::stringstream ss(t);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("bad partition part: " + tok);
            parts.push_back(v);
        }
    }
    return Partition(std::move(parts));
}

std::string DiffLabeling::to_string() const {
    std::string s;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (i) s += ',';
        if (brackets[i]) s += '<';
        s += std::to_string(entries[i]);
        if (brackets[i]) s += '>';
    }
    return s;
}

Partition bs_forward(const Partition& p) {
    if (p.empty()) return {};
    std::vector<int> next;
    next.reserve(p.parts().size());
    for (int v : p.parts())
        if (v >= 2) next.push_back(v - 1);
    next.push_back(p.length());
    std::sort(next.begin(), next.end(), std::greater<>());
    return Partition::unchecked(std::move(next));
}

std::vector<int> staircase(int m) {
    if (m < 0) throw std::invalid_argument("staircase order must be nonnegative");
    std::vector<int> s(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) s[static_cast<size_t>(i)] = m - 1 - i;
    return s;
}

bool reverse_legal(const Partition& p, int j) {
    if (j < 1 || j > p.length()) throw std::invalid_argument("reverse move index out of range");
    return p.part(j) >= p.length() - 1;
}

std::optional<Partition> reverse_move(const Partition& p, int j) {
    if (!reverse_legal(p, j)) return std::nullopt;
    const int l = p.length();
    const int v = p.part(j);
    std::vector<int> q;
    q.reserve(static_cast<size_t>(l - 1 + std::max(0, v - (l - 1))));
    for (int i = 1; i <= l; ++i)
        if (i != j) q.push_back(p.part(i) + 1);
    q.insert(q.end(), static_cast<size_t>(v - (l - 1)), 1);
    return Partition::unchecked(std::move(q));
}

std::vector<int> legal_moves(const Partition& p) {
    std::vector<int> js;
    for (int j = 1; j <= p.length(); ++j)
        if (p.part(j) >= p.length() - 1) js.push_back(j);
    return js;
}

ApplyResult apply_sequence(const Partition& p, const PlayingSequence& seq) {
    Partition cur = p;
    for (size_t i = 0; i < seq.size(); ++i) {
        int j = seq[i];
        if (j < 1 || j > cur.length()) return {std::nullopt, static_cast<int>(i + 1)};
        auto next = reverse_move(cur, j);
        if (!next) return {std::nullopt, static_cast<int>(i + 1)};
        cur = std::move(*next);
    }
    return {std::move(cur), 0};
}

DiffLabeling diff_labeling(const Partition& p, int m) {
    if (m < p.length()) throw std::invalid_argument("diff_labeling requires m >= l(p)");
    DiffLabeling d;
    d.base_m = m;
    d.entries.resize(static_cast<size_t>(m), 0);
    d.brackets.assign(static_cast<size_t>(m), 0);
    for (int j = 1; j <= m; ++j) {
        int part = j <= p.length() ? p.part(j) : 0;
        d.entries[static_cast<size_t>(j - 1)] = part - (m - j);
    }
    for (int j : legal_moves(p)) d.brackets[static_cast<size_t>(j - 1)] = 1;
    return d;
}

Partition diff_inverse(const std::vector<int>& entries, int m) {
    if (static_cast<int>(entries.size()) != m)
        throw std::invalid_argument("diff_inverse: entry count must equal base m");
    std::vector<int> sum(entries.size());
    for (int j = 1; j <= m; ++j) sum[static_cast<size_t>(j - 1)] = entries[static_cast<size_t>(j - 1)] + (m - j);
    for (size_t i = 0; i < sum.size(); ++i) {
        if (sum[i] < 0) throw std::invalid_argument("diff_inverse: negative part");
        if (i + 1 < sum.size() && sum[i] < sum[i + 1])
            throw std::invalid_argument("diff_inverse: parts increase");
    }
    while (!sum.empty() && sum.back() == 0) sum.pop_back();
    return Partition::unchecked(std::move(sum));
}

Partition diff_inverse(const DiffLabeling& d) { return diff_inverse(d.entries, d.base_m); }

}  // namespace bsol
