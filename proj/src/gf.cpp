#include "bsol/gf.hpp"

#include <algorithm>
#include <stdexcept>

#include "bsol/errors.hpp"
#include "bsol/forest.hpp"

namespace bsol {

namespace {

void strip(std::vector<BigInt>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { strip(coeffs_); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
    for (long long c : coeffs) coeffs_.emplace_back(c);
    strip(coeffs_);
}

BigInt IntPolynomial::at(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<size_t>(k)];
}

BigInt IntPolynomial::operator()(const BigInt& x) const {
    BigInt v = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
}

std::string IntPolynomial::to_string(bool ascending) const {
    if (coeffs_.empty()) return "0";
    std::string s;
    auto term = [&](const BigInt& c, int d, bool first) {
        if (c == 0) return;
        BigInt a = c < 0 ? BigInt(-c) : c;
        std::string piece;
        if (d == 0) {
            piece = a.str();
        } else {
            if (a != 1) piece = a.str();
            piece += "x";
            if (d != 1) piece += "^" + std::to_string(d);
        }
        if (first)
            s += (c < 0 ? "-" : "") + piece;
        else
            s += (c < 0 ? " - " : " + ") + piece;
    };
    bool first = true;
    if (ascending) {
        for (int d = 0; d <= degree(); ++d) {
            if (at(d) == 0) continue;
            term(at(d), d, first);
            first = false;
        }
    } else {
        for (int d = degree(); d >= 0; --d) {
            if (at(d) == 0) continue;
            term(at(d), d, first);
            first = false;
        }
    }
    return s;
}

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(static_cast<size_t>(std::max(a.degree(), b.degree()) + 1), 0);
    for (int d = 0; d < static_cast<int>(c.size()); ++d) c[static_cast<size_t>(d)] = a.at(d) + b.at(d);
    return IntPolynomial(std::move(c));
}

IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<BigInt> c(static_cast<size_t>(std::max(a.degree(), b.degree()) + 1), 0);
    for (int d = 0; d < static_cast<int>(c.size()); ++d) c[static_cast<size_t>(d)] = a.at(d) - b.at(d);
    return IntPolynomial(std::move(c));
}

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> c(static_cast<size_t>(a.degree() + b.degree() + 1), 0);
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) c[static_cast<size_t>(i + j)] += a.at(i) * b.at(j);
    return IntPolynomial(std::move(c));
}

namespace {

using RatPoly = std::vector<BigRat>;  // index = degree, trailing zeros stripped

void strip(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPolynomial& p) {
    RatPoly r;
    for (const auto& c : p.coeffs()) r.emplace_back(c);
    return r;
}

// Remainder of a by b, both nonzero, over the rationals.
RatPoly rat_mod(RatPoly a, const RatPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        BigRat q = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
        a.pop_back();
        strip(a);
    }
    return a;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
    strip(a);
    strip(b);
    while (!b.empty()) {
        RatPoly r = rat_mod(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        BigRat lead = a.back();
        for (auto& c : a) c /= lead;  // monic
    }
    return a;
}

// Exact division (remainder must vanish).
RatPoly rat_div(RatPoly a, const RatPoly& b) {
    RatPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigRat(0));
    while (a.size() >= b.size() && !a.empty()) {
        BigRat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        strip(a);
    }
    if (!a.empty()) throw std::logic_error("rat_div: division is not exact");
    return q;
}

}  // namespace

RationalGF make_rational_gf(IntPolynomial num, IntPolynomial den) {
    if (den.is_zero()) throw std::invalid_argument("rational gf: zero denominator");
    if (num.is_zero()) return {IntPolynomial{}, IntPolynomial{1}};

    RatPoly n = to_rat(num), d = to_rat(den);
    RatPoly g = rat_gcd(n, d);
    if (static_cast<int>(g.size()) - 1 > 0) {
        n = rat_div(std::move(n), g);
        d = rat_div(std::move(d), g);
    }

    // Joint scaling to integer coefficients with content 1.
    BigInt lcm_den = 1;
    for (const auto& c : n) lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c));
    for (const auto& c : d) lcm_den = boost::multiprecision::lcm(lcm_den, boost::multiprecision::denominator(c));
    std::vector<BigInt> ni, di;
    BigInt content = 0;
    for (const auto& c : n) {
        BigInt v = boost::multiprecision::numerator(c) * (lcm_den / boost::multiprecision::denominator(c));
        ni.push_back(v);
        content = boost::multiprecision::gcd(content, v);
    }
    for (const auto& c : d) {
        BigInt v = boost::multiprecision::numerator(c) * (lcm_den / boost::multiprecision::denominator(c));
        di.push_back(v);
        content = boost::multiprecision::gcd(content, v);
    }
    if (content == 0) content = 1;
    for (auto& v : ni) v /= content;
    for (auto& v : di) v /= content;

    IntPolynomial dn(std::move(di));
    if (dn.at(0) == 0) throw std::invalid_argument("rational gf: denominator vanishes at 0");
    bool flip = dn.at(0) < 0;
    if (flip) {
        for (auto& v : ni) v = -v;
        std::vector<BigInt> d2 = dn.coeffs();
        for (auto& v : d2) v = -v;
        dn = IntPolynomial(std::move(d2));
    }
    return {IntPolynomial(std::move(ni)), std::move(dn)};
}

std::vector<BigInt> series_expand(const RationalGF& r, int depth) {
    if (depth < 0) throw std::invalid_argument("series_expand: negative depth");
    if (r.den.at(0) == 0) throw std::invalid_argument("series_expand: denominator vanishes at 0");
    std::vector<BigRat> c(static_cast<size_t>(depth) + 1, BigRat(0));
    BigRat d0(r.den.at(0));
    for (int k = 0; k <= depth; ++k) {
        BigRat acc(r.num.at(k));
        for (int j = 1; j <= std::min(k, r.den.degree()); ++j)
            acc -= BigRat(r.den.at(j)) * c[static_cast<size_t>(k - j)];
        c[static_cast<size_t>(k)] = acc / d0;
    }
    std::vector<BigInt> out;
    out.reserve(c.size());
    for (const auto& v : c) {
        if (boost::multiprecision::denominator(v) != 1)
            throw std::domain_error("series_expand: non-integer coefficient");
        out.push_back(boost::multiprecision::numerator(v));
    }
    return out;
}

namespace {

// Fraction-free (Bareiss) echelon form with column pivoting over the
// integers, then rational back-substitution with free variables at 0.
// Returns nullopt when the system is inconsistent.
std::optional<std::vector<BigRat>> solve_exact(std::vector<std::vector<BigInt>> aug, int cols) {
    const int rows = static_cast<int>(aug.size());
    std::vector<int> pivot_col_of_row;
    BigInt prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (aug[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
                pr = i;
                break;
            }
        if (pr == -1) continue;
        std::swap(aug[static_cast<size_t>(r)], aug[static_cast<size_t>(pr)]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j <= cols; ++j) {
                BigInt v = aug[static_cast<size_t>(r)][static_cast<size_t>(c)] * aug[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                           aug[static_cast<size_t>(i)][static_cast<size_t>(c)] * aug[static_cast<size_t>(r)][static_cast<size_t>(j)];
                aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = v / prev;  // exact by Bareiss identity
            }
            aug[static_cast<size_t>(i)][static_cast<size_t>(c)] = 0;
        }
        prev = aug[static_cast<size_t>(r)][static_cast<size_t>(c)];
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i) {
        bool all_zero = true;
        for (int j = 0; j < cols; ++j)
            if (aug[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) all_zero = false;
        if (all_zero && aug[static_cast<size_t>(i)][static_cast<size_t>(cols)] != 0) return std::nullopt;
    }
    std::vector<BigRat> x(static_cast<size_t>(cols), BigRat(0));
    for (int i = r - 1; i >= 0; --i) {
        int pc = pivot_col_of_row[static_cast<size_t>(i)];
        BigRat acc(aug[static_cast<size_t>(i)][static_cast<size_t>(cols)]);
        for (int j = pc + 1; j < cols; ++j)
            acc -= BigRat(aug[static_cast<size_t>(i)][static_cast<size_t>(j)]) * x[static_cast<size_t>(j)];
        x[static_cast<size_t>(pc)] = acc / BigRat(aug[static_cast<size_t>(i)][static_cast<size_t>(pc)]);
    }
    return x;
}

}  // namespace

std::optional<RationalGF> rational_fit(const std::vector<BigInt>& series, int max_num_deg,
                                       int max_den_deg) {
    const int len = static_cast<int>(series.size());
    if (len < max_num_deg + max_den_deg + 2)
        throw std::invalid_argument("rational_fit: series too short for the requested degree bounds");

    auto coeff = [&](int k) -> BigInt { return (k < 0 || k >= len) ? BigInt(0) : series[static_cast<size_t>(k)]; };

    for (int dd = 0; dd <= max_den_deg; ++dd) {
        // Unknowns u_1..u_dd (den = 1 + u_1 x + ...). For k > max_num_deg the
        // convolution (den * series)_k must vanish.
        std::vector<std::vector<BigInt>> aug;
        for (int k = max_num_deg + 1; k < len; ++k) {
            std::vector<BigInt> row;
            row.reserve(static_cast<size_t>(dd) + 1);
            for (int j = 1; j <= dd; ++j) row.push_back(coeff(k - j));
            row.push_back(-coeff(k));
            aug.push_back(std::move(row));
        }
        auto sol = solve_exact(std::move(aug), dd);
        if (!sol) continue;

        std::vector<BigRat> den_rat(static_cast<size_t>(dd) + 1, BigRat(0));
        den_rat[0] = 1;
        for (int j = 1; j <= dd; ++j) den_rat[static_cast<size_t>(j)] = (*sol)[static_cast<size_t>(j - 1)];
        std::vector<BigRat> num_rat(static_cast<size_t>(max_num_deg) + 1, BigRat(0));
        for (int k = 0; k <= max_num_deg; ++k) {
            BigRat acc(0);
            for (int j = 0; j <= std::min(k, dd); ++j) acc += den_rat[static_cast<size_t>(j)] * BigRat(coeff(k - j));
            num_rat[static_cast<size_t>(k)] = acc;
        }
        // Clear denominators jointly so normalization sees integer input.
        BigInt scale = 1;
        for (const auto& v : den_rat) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
        for (const auto& v : num_rat) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(v));
        std::vector<BigInt> ni, di;
        for (const auto& v : num_rat)
            ni.push_back(boost::multiprecision::numerator(v) * (scale / boost::multiprecision::denominator(v)));
        for (const auto& v : den_rat)
            di.push_back(boost::multiprecision::numerator(v) * (scale / boost::multiprecision::denominator(v)));
        RationalGF fit = make_rational_gf(IntPolynomial(std::move(ni)), IntPolynomial(std::move(di)));

        // The fit must reproduce every supplied coefficient, guards included.
        if (series_expand(fit, len - 1) == series) return fit;
    }
    return std::nullopt;
}

RationalGF limit_gf(const Necklace& p, std::optional<int> depth, long long max_nodes) {
    int num_bound, den_bound;
    if (p.all_white()) {
        num_bound = 3;
        den_bound = 2;
    } else if (p.word() == std::vector<uint8_t>{0, 1}) {
        num_bound = 3;
        den_bound = 3;
    } else if (is_primitive(p) && p.length() >= 3) {
        num_bound = 2 * p.length();
        den_bound = p.length();
    } else {
        throw std::invalid_argument("limit_gf requires W, BW, or a primitive necklace of length >= 3");
    }
    // Default depth: the fit consumes num_bound + den_bound + 2 coefficients,
    // everything beyond is a guard; 4|P| + 4 leaves |P| + 3 guards while
    // keeping the |P| = 5 forests tractable. Small lengths get a floor of 16.
    const int d = depth.value_or(std::max(4 * p.length() + 4, 16));
    auto counts = pruned_series(p, d, max_nodes);
    std::vector<BigInt> series;
    series.reserve(counts.size());
    for (unsigned long long v : counts) series.emplace_back(v);
    auto fit = rational_fit(series, num_bound, den_bound);
    if (!fit)
        throw NoFitError("limit_gf: no rational function within bounds reproduces the series at depth " +
                             std::to_string(d),
                         d);
    return *fit;
}

bool gf_equal(const RationalGF& a, const RationalGF& b) {
    return poly_mul(a.num, b.den) == poly_mul(b.num, a.den);
}

const std::vector<std::pair<Necklace, RationalGF>>& closed_form_catalog() {
    static const std::vector<std::pair<Necklace, RationalGF>> catalog = [] {
        std::vector<std::pair<Necklace, RationalGF>> entries;
        auto add = [&](const char* name, IntPolynomial num, IntPolynomial den) {
            entries.emplace_back(Necklace::parse(name), make_rational_gf(std::move(num), std::move(den)));
        };
        const IntPolynomial one_minus_x{1, -1};

        // (1-x)^2 / (1 - 3x + x^2)
        add("W", poly_mul(one_minus_x, one_minus_x), IntPolynomial{1, -3, 1});
        // (x-1)^2 (3x+2) / (x^3 - 3x^2 - x + 1)
        add("BW", poly_mul(poly_mul(IntPolynomial{-1, 1}, IntPolynomial{-1, 1}), IntPolynomial{2, 3}),
            IntPolynomial{1, -1, -3, 1});
        // (1-x)(x^3 - 3x^2 - 4x - 3) / (2x^3 + x^2 - 1), shared by BWW and BBW
        add("BWW", poly_mul(one_minus_x, IntPolynomial{-3, -4, -3, 1}), IntPolynomial{-1, 0, 1, 2});
        add("BBW", poly_mul(one_minus_x, IntPolynomial{-3, -4, -3, 1}), IntPolynomial{-1, 0, 1, 2});
        // (1-x)(x^5 + 8x^4 - 3x^3 - 8x^2 - 6x - 4) / (6x^4 + 4x^3 + x^2 - 1)
        add("BWWW", poly_mul(one_minus_x, IntPolynomial{-4, -6, -8, -3, 8, 1}),
            IntPolynomial{-1, 0, 1, 4, 6});
        // (1-x)(2x^5 + 8x^4 - 5x^3 - 10x^2 - 7x - 4) / (6x^4 + 4x^3 + x^2 - 1)
        add("BBBW", poly_mul(one_minus_x, IntPolynomial{-4, -7, -10, -5, 8, 2}),
            IntPolynomial{-1, 0, 1, 4, 6});
        // (1-x)(x^3 + x^2 + x + 1) / (3x^4 + 2x^3 + x^2 - 1)
        add("BBWW", poly_mul(one_minus_x, IntPolynomial{1, 1, 1, 1}), IntPolynomial{-1, 0, 1, 2, 3});
        // (1-x)(2x^6 + 16x^5 - 12x^4 - 23x^3 - 16x^2 - 8x - 5) / (12x^5 + 8x^4 + 2x^3 - 1)
        add("BWWWW", poly_mul(one_minus_x, IntPolynomial{-5, -8, -16, -23, -12, 16, 2}),
            IntPolynomial{-1, 0, 0, 2, 8, 12});
        return entries;
    }();
    return catalog;
}

std::optional<RationalGF> catalog_lookup(const Necklace& p) {
    for (const auto& [key, gf] : closed_form_catalog())
        if (key == p) return gf;
    return std::nullopt;
}

}  // namespace bsol
