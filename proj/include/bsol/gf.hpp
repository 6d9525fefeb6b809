#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bsol/necklace.hpp"

namespace bsol {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Dense integer polynomial, index = degree, no trailing zero coefficients.
/// The zero polynomial has an empty coefficient vector (degree -1).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs);
    IntPolynomial(std::initializer_list<long long> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    BigInt at(int k) const;
    BigInt operator()(const BigInt& x) const;

    bool operator==(const IntPolynomial&) const = default;

    /// "3x^3 - 4x^2 - x + 2" (descending) or "2 + x + 2x^2 + 2x^3" (ascending).
    std::string to_string(bool ascending = false) const;

private:
    std::vector<BigInt> coeffs_;
};

IntPolynomial poly_add(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_sub(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b);

/// num/den with den(0) != 0, reduced by the rational polynomial GCD, scaled
/// to integer coefficients of joint content 1, den(0) > 0.
struct RationalGF {
    IntPolynomial num;
    IntPolynomial den;
};

/// Normalizes and validates; throws std::invalid_argument when den is zero or
/// den(0) = 0 after reduction.
RationalGF make_rational_gf(IntPolynomial num, IntPolynomial den);

/// First depth+1 power-series coefficients by exact long division; throws if
/// a coefficient is not an integer.
std::vector<BigInt> series_expand(const RationalGF& r, int depth);

/// Exact Pade-style fit: den(0) = 1 before normalization, deg num <= max_num_deg,
/// deg den <= max_den_deg, and the result reproduces every provided
/// coefficient. Minimal denominator degree preferred. nullopt when no
/// rational function within the bounds matches.
std::optional<RationalGF> rational_fit(const std::vector<BigInt>& series, int max_num_deg,
                                       int max_den_deg);

/// Fit the truncated forest series of P; default depth is 4|P| + 8 with
/// bounds (2|P|, |P|) for |P| >= 3, (3,2) for W, and (3,3) for BW.
/// Throws NoFitError (with the depth used) when the fit fails.
RationalGF limit_gf(const Necklace& p, std::optional<int> depth = {}, long long max_nodes = -1);

/// Cross-multiplied equality: sign- and scale-insensitive.
bool gf_equal(const RationalGF& a, const RationalGF& b);

/// The seven closed forms stated for W, BW, BWW = BBW, BWWW, BBBW, BBWW,
/// BWWWW, keyed by canonical necklace (eight keys).
const std::vector<std::pair<Necklace, RationalGF>>& closed_form_catalog();
std::optional<RationalGF> catalog_lookup(const Necklace& p);

}  // namespace bsol
