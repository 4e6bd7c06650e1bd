/**
 * @file krylov.hpp
 * @brief Linearly recurrent sequence machinery: Berlekamp-Massey, minimal
 *        polynomials of sequences / matrix-vector pairs / matrices, Horner
 *        evaluation of a polynomial at a black box, and consistent-system
 *        solving.
 *
 * A sequence s_0, s_1, ... is annihilated by the monic polynomial
 * g = z^d + g_{d-1} z^{d-1} + ... + g_0 when
 * s_{i+d} + g_{d-1} s_{i+d-1} + ... + g_0 s_i = 0 for all i; the minimal
 * such g for s_i = u^T B^i v divides the minimal polynomial of B.
 */
#ifndef BBX_KRYLOV_HPP
#define BBX_KRYLOV_HPP

#include "bbx/blackbox.hpp"
#include "bbx/poly.hpp"
#include "bbx/ratio.hpp"

#include <optional>

namespace bbx {

struct MinPolyEstimate {
    Poly poly;
    unsigned trials = 0;
    bool used_extension = false;
};

/// Monic minimal generating polynomial of the sequence.  Guaranteed correct
/// when the true generator has degree <= len(seq)/2.
Poly berlekamp_massey(const Field& F, const std::vector<Scalar>& seq);

/// Minimal generator of s_i = u^T B^i v, i < 2*bound (bound defaults to n
/// when 0 is passed).  Uses 2*bound - 1 applications.
Poly minpoly_sequence(const BlackBox& bb, const Vec& u, const Vec& v, std::size_t bound = 0);

/// lcm of sequence minimal polynomials over `trials` uniform u; divides the
/// minimal polynomial of (B, v) and equals it with probability growing in
/// the number of trials.
MinPolyEstimate minpoly_matrix_vector(const BlackBox& bb, const Vec& v, unsigned trials, Rng& rng);

/// Minimal polynomial of B itself, as an lcm over random (u, v) pairs.  When
/// use_extension is set and q < 2n the projection vectors are drawn over
/// GF(q^e), e = ceil(log_q(2n)), simulated as e parallel base-field
/// applications; each trial then captures the full minimal polynomial with
/// probability >= 1/2, and the trial count brings failure below eps.
MinPolyEstimate minpoly_matrix(const BlackBox& bb, const Ratio& eps, Rng& rng,
                               bool use_extension = true);

/// f(B) * v via Horner; deg(f) applications.
Vec apply_poly(const BlackBox& bb, const Poly& f, const Vec& v);

/// A solution x of B x = b, or nullopt when provably inconsistent.  Fast
/// path: with g the minimal polynomial of (B, b) and g(0) != 0,
/// x = -g(0)^{-1} * ((g - g(0))/z)(B) b.  Singular fast path failing, a
/// dense fallback materializes B and eliminates.  Any returned x is checked
/// against B x = b before returning.
std::optional<Vec> solve_consistent(const BlackBox& bb, const Vec& b, const Ratio& eps, Rng& rng);

}  // namespace bbx

#endif
