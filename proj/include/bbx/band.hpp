/**
 * @file band.hpp
 * @brief Band-structure detection, certification and verification.
 *
 * A width-k band matrix satisfies a_{ij} = 0 whenever |i - j| > k.  With
 * K = 2k+1 probe vectors (the 0/1 indicators of the residue classes mod K),
 * the product A * alpha_{K,i} superimposes columns spaced K apart; for a
 * true band matrix their windows of allowed rows are disjoint, so the K
 * products reveal every band entry.  A nonzero value outside the window
 * union rejects immediately; in-window aliasing is caught by a Freivalds
 * comparison of A against the extracted band matrix.
 */
#ifndef BBX_BAND_HPP
#define BBX_BAND_HPP

#include <optional>

#include "bbx/blackbox.hpp"
#include "bbx/ratio.hpp"

namespace bbx {

struct InvalidK : std::invalid_argument {
    InvalidK() : std::invalid_argument("band width must be >= 1") {}
};
struct MalformedCertificate : std::invalid_argument {
    explicit MalformedCertificate(const char* what) : std::invalid_argument(what) {}
};

struct BandCertificate {
    std::size_t n = 0, k = 0;
    Dense entries;  // n x (2k+1); row i holds a_{i,i-k..i+k}
};

enum class BandFailure { BoundaryCheck, FreivaldsCheck };

struct BandResult {
    std::optional<BandCertificate> cert;  // present on success
    std::optional<BandFailure> failure;   // present on NotBand
    bool ok() const { return cert.has_value(); }
};

/// The 2k+1 probe vectors alpha_{K,i}: entry j is 1 iff j = i (mod K),
/// indices 1-based as in the band argument.
std::vector<Vec> probe_vectors(std::size_t n, std::size_t k);

/// Detects band structure of width k at soundness eps.  A true band matrix
/// always yields a certificate with the exact band entries; a non-band
/// matrix is mistakenly accepted with probability <= eps.  Uses exactly
/// 2k+1 + reps applications when 2k+1 <= n.
BandResult detect_band(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng);

/// Independent Freivalds comparison of bb against the certificate.
bool verify_band(const BlackBox& bb, const BandCertificate& cert, const Ratio& eps, Rng& rng);

}  // namespace bbx

#endif
