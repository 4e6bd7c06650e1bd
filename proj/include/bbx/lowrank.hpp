/**
 * @file lowrank.hpp
 * @brief Rank <= k decision with an explicit decomposition certificate.
 *
 * The detector grows a nonsingular submatrix C of A one row/column at a
 * time: a random probe x gives v = A x; if v falls outside the span of the
 * current basis columns, binary splitting over the support of x isolates a
 * single independent column in about log2(n) applications.  The certificate
 * packages A = P * [I; L] * C * [I R] * Q, which a verifier recombines as a
 * Theta(nk)-cost black box and compares against A with Freivalds probes.
 * Rank is never overestimated; underestimation is the only failure mode.
 */
#ifndef BBX_LOWRANK_HPP
#define BBX_LOWRANK_HPP

#include <optional>

#include "bbx/band.hpp"  // MalformedCertificate
#include "bbx/blackbox.hpp"
#include "bbx/ratio.hpp"

namespace bbx {

struct SingularExtension : std::domain_error {
    SingularExtension() : std::domain_error("extended submatrix is singular (beta = 0)") {}
};

struct RankCertificate {
    std::size_t n = 0, r = 0;
    std::vector<std::size_t> row_perm;  // position m -> original row index (0-based)
    std::vector<std::size_t> col_perm;  // position m -> original column index
    std::vector<std::size_t> row_idx;   // i_1..i_r = first r of row_perm
    std::vector<std::size_t> col_idx;   // j_1..j_r = first r of col_perm
    Dense C;     // r x r, nonsingular
    Dense Cinv;  // its inverse
    Dense L;     // (n-r) x r
    Dense R;     // r x (n-r)
};

/// Incremental basis: an l x l nonsingular submatrix of A on (row_idx,
/// col_idx) with its inverse, plus the basis columns themselves.
struct BasisState {
    std::size_t n = 0;
    std::vector<std::size_t> row_idx, col_idx;
    Dense Cinv;     // l x l
    Dense columns;  // n x l, the columns A e_{j_1..j_l}
    std::size_t size() const { return col_idx.size(); }
};

struct IndependentColumn {
    std::size_t j;     // new column index (0-based)
    Vec column;        // A e_j
    Vec residual;      // column minus its projection onto the basis
};

/// One probe: either locates a column outside the current span (returning
/// its index, the column, and the nonzero residual) or reports that the
/// probe image lay in the span (nullopt; per-probe error <= 1/q).
std::optional<IndependentColumn> locate_independent_column(const BlackBox& bb,
                                                           const BasisState& state, Rng& rng);

/// Inverse of [[C, s], [t, alpha]] from Cinv, in Theta(l^2) operations;
/// throws SingularExtension when beta = alpha - t * Cinv * s is zero.
Dense extend_inverse(const Field& F, const Dense& Cinv, const Vec& s, const Vec& t, Scalar alpha);

struct RankResult {
    std::optional<RankCertificate> cert;
    bool exceeds_k = false;
    bool ok() const { return cert.has_value(); }
};

RankResult detect_low_rank(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng);

/// Deterministic structural checks (permutations valid, C * Cinv = I), then
/// Freivalds against the recomposition.  Throws MalformedCertificate.
bool verify_low_rank(const BlackBox& bb, const RankCertificate& cert, const Ratio& eps, Rng& rng);

/// The recomposition P [I;L] C [I R] Q as a black box (Theta(nr) per apply).
BBPtr recomposition_box(Field F, const RankCertificate& cert);

}  // namespace bbx

#endif
