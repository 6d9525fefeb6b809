#include "bsol/necklace.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bsol {

namespace {

std::vector<uint8_t> rotate_left(const std::vector<uint8_t>& w, int k) {
    const int n = static_cast<int>(w.size());
    std::vector<uint8_t> r(w.size());
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = w[static_cast<size_t>((i + k) % n)];
    return r;
}

}  // namespace

Necklace Necklace::canonicalize(std::vector<uint8_t> word) {
    if (word.empty()) throw std::invalid_argument("necklace word must be nonempty");
    for (uint8_t b : word)
        if (b > 1) throw std::invalid_argument("necklace word must be binary");
    std::vector<uint8_t> best = word;
    for (int k = 1; k < static_cast<int>(word.size()); ++k) {
        auto rot = rotate_left(word, k);
        if (rot < best) best = rot;
    }
    Necklace n;
    n.word_ = std::move(best);
    return n;
}

Necklace Necklace::parse(const std::string& text) {
    std::vector<uint8_t> word;
    for (char c : text) {
        switch (c) {
            case 'B': case 'b': case '1': word.push_back(1); break;
            case 'W': case 'w': case '0': word.push_back(0); break;
            case ' ': break;
            default: throw std::invalid_argument(std::string("bad necklace character: ") + c);
        }
    }
    return canonicalize(std::move(word));
}

int Necklace::ones() const {
    int b = 0;
    for (uint8_t v : word_) b += v;
    return b;
}

std::string Necklace::to_string() const {
    std::vector<uint8_t> best = word_;
    for (int k = 1; k < length(); ++k) {
        auto rot = rotate_left(word_, k);
        if (rot > best) best = rot;
    }
    std::string s;
    for (uint8_t v : best) s += v ? 'B' : 'W';
    return s;
}

int primitive_period(const Necklace& n) {
    const int p = n.length();
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        if (rotate_left(n.word(), d) == n.word()) return d;
    }
    return p;
}

bool is_primitive(const Necklace& n) { return primitive_period(n) == n.length(); }

Necklace power(const Necklace& p, int k) {
    if (k < 1) throw std::invalid_argument("necklace power exponent must be >= 1");
    std::vector<uint8_t> word;
    word.reserve(p.word().size() * static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) word.insert(word.end(), p.word().begin(), p.word().end());
    return Necklace::canonicalize(std::move(word));
}

Necklace color_swap(const Necklace& p) {
    std::vector<uint8_t> word = p.word();
    for (auto& b : word) b = static_cast<uint8_t>(1 - b);
    return Necklace::canonicalize(std::move(word));
}

NecklaceParams necklace_params_for_n(long long n) {
    if (n < 1) throw std::invalid_argument("necklace parameters need n >= 1");
    long long m = 1;
    while ((m + 1) * m / 2 <= n) ++m;  // now C(m,2) <= n < C(m+1,2)
    long long r = n - m * (m - 1) / 2;
    return {static_cast<int>(m), static_cast<int>(r)};
}

std::vector<Necklace> enumerate_necklaces(int m, int r) {
    if (m < 1 || r < 0 || r > m) throw std::invalid_argument("bad necklace enumeration parameters");
    std::vector<uint8_t> bits(static_cast<size_t>(m), 0);
    std::fill(bits.end() - r, bits.end(), 1);
    std::sort(bits.begin(), bits.end());
    std::set<Necklace> seen;
    do {
        seen.insert(Necklace::canonicalize(bits));
    } while (std::next_permutation(bits.begin(), bits.end()));
    return {seen.begin(), seen.end()};
}

RecurrentCycle recurrent_cycle(const Necklace& n) {
    const int m = n.length();
    const int p = primitive_period(n);
    RecurrentCycle rc{n, {}};
    rc.roots.reserve(static_cast<size_t>(p));
    std::vector<int> entries(n.word().begin(), n.word().end());
    Partition cur = diff_inverse(entries, m);
    for (int t = 0; t < p; ++t) {
        rc.roots.push_back(diff_labeling(cur, m));
        if (cur.empty()) continue;  // n = 0: the empty partition is its own cycle
        auto next = reverse_move(cur, 1);
        if (!next) throw std::logic_error("recurrent cycle: R_1 must be legal on cycle members");
        cur = std::move(*next);
    }
    if (diff_labeling(cur, m).entries != rc.roots.front().entries)
        throw std::logic_error("recurrent cycle did not close after p steps");
    return rc;
}

std::vector<Partition> recurrent_partitions(const Necklace& n) {
    auto rc = recurrent_cycle(n);
    std::vector<Partition> out;
    out.reserve(rc.roots.size());
    for (const auto& root : rc.roots) out.push_back(diff_inverse(root));
    return out;
}

}  // namespace bsol
