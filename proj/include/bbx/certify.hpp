/**
 * @file certify.hpp
 * @brief Randomized detection and interactive certification of few/many
 *        nontrivial nilpotent blocks and few/many nontrivial invariant
 *        factors.
 *
 * Detection relies on random additive rank-k preconditioners A + V*U: the
 * (k+1)-st invariant factor of A always divides the minimal polynomial of
 * A + V*U, and with probability bounded below (rho1/rho2 in params) the
 * preconditioner strips everything else.  The protocols exchange commit /
 * challenge / response messages through a Transcript; prover and verifier
 * run in-process but only communicate values that are recorded (and
 * metered) on the transcript.
 */
#ifndef BBX_CERTIFY_HPP
#define BBX_CERTIFY_HPP

#include "bbx/krylov.hpp"
#include "bbx/params.hpp"
#include "bbx/transcript.hpp"

namespace bbx {

struct NilpotentWitness {
    Dense U;  // k x n
    Dense V;  // n x k
    Poly f;   // minimal polynomial estimate of A + V*U; z^2 does not divide
};

struct NilpotentDecision {
    bool at_most_k = false;
    std::optional<NilpotentWitness> witness;  // present on at_most_k
};

struct InvariantWitness {
    std::vector<Dense> U, V;  // c+1 pairs
    std::vector<Poly> f;      // minimal polynomials of A + V_i U_i
    std::vector<Poly> g;      // Bezout cofactors, sum g_i f_i = phi
    Poly phi;                 // in {1, z}
};

struct InvariantDecision {
    bool at_most_k = false;
    std::optional<InvariantWitness> witness;  // on at_most_k
    Poly chi;                                 // on more-than-k: monic factor of phi_{k+1}, != 1, z
};

/// Decides whether A has at most k nontrivial nilpotent blocks (invariant
/// factors divisible by z^2); wrong verdict probability <= eps.
NilpotentDecision detect_nilpotent(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng);

/// Decides whether A has at most k nontrivial invariant factors (factors
/// different from z); wrong verdict probability <= eps.
InvariantDecision detect_invariant(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng);

enum class CheatMode {
    None,             // honest prover
    RandomResponses,  // scripted cheater: sends uniform garbage when stuck
};

/// Commit (U, V); verifier challenges with gamma vectors b_i = (A + VU) c_i;
/// prover responds with x_i solving (A + VU)^2 x_i = b_i.  Perfectly
/// complete for an honest witness; a witness with z^2 | minpoly accepted
/// with probability <= q^-gamma <= eps.
Transcript run_few_nilpotent(BBPtr bbA, std::size_t k, const Dense& U, const Dense& V,
                             const Ratio& eps, std::uint64_t seed);

/// Commit the claim; verifier challenges with tau preconditioner pairs;
/// prover responds with x_i such that (A + V_i U_i) x_i != 0 = (A + V_i U_i)^2 x_i.
Transcript run_many_nilpotent(BBPtr bbA, std::size_t k, const Ratio& eps, std::uint64_t seed,
                              CheatMode cheat = CheatMode::None);

/// Commit c+1 pairs with minimal polynomials and Bezout cofactors; verifier
/// draws tau3 vector pairs and checks every certified sequence minimal
/// polynomial divides the committed f_j, plus sum g_i f_i in {1, z}.
Transcript run_few_invariant(BBPtr bbA, std::size_t k, const InvariantWitness& witness,
                             const Ratio& eps, std::uint64_t seed);

/// Commit chi; the z^2 | chi path delegates to the many-nilpotent protocol,
/// otherwise the verifier draws tau-tilde preconditioner pairs and the
/// prover exhibits (u_i, v_i) whose sequence minimal polynomial is exactly
/// chi, each certified at soundness eps / (2 tau-tilde).
Transcript run_many_invariant(BBPtr bbA, std::size_t k, const Poly& chi, const Ratio& eps,
                              std::uint64_t seed, CheatMode cheat = CheatMode::None);

/// Verifier-side check that `claimed` is the minimal generating polynomial
/// of the sequence u^T B^i v.  Realized deterministically: the verifier
/// regenerates a 2n-term prefix and compares its Berlekamp-Massey output
/// against the claim exactly, which is perfectly complete and sound (a
/// strictly stronger guarantee than the eps bound the callers need).
bool certify_sequence_minpoly(const BlackBox& bb, const Vec& u, const Vec& v, const Poly& claimed,
                              const Ratio& eps, Rng& rng);

}  // namespace bbx

#endif
