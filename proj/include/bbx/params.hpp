/**
 * @file params.hpp
 * @brief Repetition schedules and probability bounds for the certification
 *        protocols, evaluated in exact rational arithmetic.
 *
 * The success probabilities rho1(q) and rho2(q, d) of the random low-rank
 * preconditioners, and the failure budget F(q, c) for the invariant-factor
 * gcd, are small rationals; all trial counts (tau, lambda, gamma, ...) are
 * ceilings of logarithms derived from them and the caller's tolerance eps.
 */
#ifndef BBX_PARAMS_HPP
#define BBX_PARAMS_HPP

#include <gmpxx.h>

#include "bbx/ratio.hpp"

namespace bbx {

/// (q^2-2)(q^2-q-1)(q-1) / (q^4 (q+1)): probability that a random rank-k
/// update strips a nontrivial nilpotent block.  rho1(2) = 1/24.
mpq_class rho1(std::uint64_t q);

/// (q^{4d}-2)(q^{2d}-q^d-1) / (q^{3d}(q^{3d}+q^{2d}+q^d+1)): the analogue
/// for a degree-d irreducible factor.  rho2(2,1) = 7/60.
mpq_class rho2(std::uint64_t q, unsigned d);

/// F(q, c) = g1 + g2 + g3 + g4: probability bound that gcd(f_1..f_c) keeps
/// a spurious irreducible factor (degree 1, 2, 3, >= 4 terms).
mpq_class bigF(std::uint64_t q, unsigned c);

/// Smallest integer t >= minimum with base^t >= target (base > 1).
unsigned ceil_log(const mpq_class& base, const mpq_class& target, unsigned minimum = 1);

struct ProtocolParams {
    std::uint64_t q = 0;
    std::size_t k = 0;
    Ratio eps;

    unsigned sigma1 = 0;  // per-q table; (1-rho1)^sigma1 <= 1/2 (or 1/q, q >= 8)
    unsigned tau = 0;     // nilpotent preconditioner trials
    unsigned lambda = 0;  // sequences per candidate
    unsigned gamma = 0;   // few-nilpotent challenge count
    unsigned c = 0;       // invariant gcd width (pairs are f_0..f_c)

    // q = 2 casework for the invariant-factor detection stages.
    unsigned sigma2_1 = 0, tau2_1 = 0, lambda2_1 = 0;
    unsigned tau2_2 = 0, lambda2_2 = 0;
    unsigned tau_deg3 = 0;

    unsigned tau3 = 0;       // few-invariant verification pairs
    unsigned tau_tilde = 0;  // many-invariant challenges
    unsigned freivalds_reps = 0;
};

ProtocolParams schedule_params(std::uint64_t q, std::size_t k, const Ratio& eps);

}  // namespace bbx

#endif
