/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a Field.
 *
 * A Poly is a coefficient vector, lowest degree first, with no trailing
 * zeros; the zero polynomial is the empty vector.  All operations are free
 * functions taking the field explicitly.
 */
#ifndef BBX_POLY_HPP
#define BBX_POLY_HPP

#include <utility>
#include <vector>

#include "bbx/field.hpp"

namespace bbx {

using Poly = std::vector<Scalar>;

struct AllZero : std::invalid_argument {
    AllZero() : std::invalid_argument("all input polynomials are zero") {}
};
struct ZeroInput : std::invalid_argument {
    ZeroInput() : std::invalid_argument("zero polynomial not allowed here") {}
};

void poly_trim(Poly& f);
inline bool poly_is_zero(const Poly& f) { return f.empty(); }
/// Degree, or -1 for the zero polynomial.
inline int poly_deg(const Poly& f) { return (int)f.size() - 1; }

Poly poly_add(const Field& F, const Poly& a, const Poly& b);
Poly poly_sub(const Field& F, const Poly& a, const Poly& b);
Poly poly_mul(const Field& F, const Poly& a, const Poly& b);
Poly poly_scale(const Field& F, const Poly& a, Scalar c);
Poly poly_monic(const Field& F, const Poly& a);
/// Quotient and remainder; divisor must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b);
bool poly_divides(const Field& F, const Poly& a, const Poly& b);
Poly poly_derivative(const Field& F, const Poly& a);
Scalar poly_eval(const Field& F, const Poly& a, Scalar x);
bool poly_equal(const Poly& a, const Poly& b);

/// Monic gcd of two polynomials (gcd(0,0) = 0 by convention).
Poly poly_gcd(const Field& F, const Poly& a, const Poly& b);
/// Monic gcd of a list; throws AllZero if every input is zero.
Poly poly_gcd(const Field& F, const std::vector<Poly>& fs);
Poly poly_lcm(const Field& F, const Poly& a, const Poly& b);

/// Extended gcd over a list: returns (d, gs) with d the monic gcd and
/// sum_i gs[i]*fs[i] = d, each deg(gs[i]) bounded by the max input degree.
std::pair<Poly, std::vector<Poly>> poly_xgcd_list(const Field& F, const std::vector<Poly>& fs);

/// Radical: the product of the distinct monic irreducible factors of f.
/// Input must be nonzero; the characteristic-p collapse (f' = 0) is handled
/// by recursing on the p-th root.
Poly poly_squarefree_part(const Field& F, const Poly& f);

/// x^n as a polynomial.
Poly poly_xpow(std::size_t n);

}  // namespace bbx

#endif
