#include "bbx/band.hpp"

namespace bbx {

std::vector<Vec> probe_vectors(std::size_t n, std::size_t k) {
    if (k < 1) throw InvalidK();
    const std::size_t K = 2 * k + 1;
    std::vector<Vec> probes(K, Vec(n, 0));
    for (std::size_t j = 1; j <= n; ++j) probes[(j - 1) % K][j - 1] = 1;
    return probes;
}

BandResult detect_band(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng) {
    if (k < 1) throw InvalidK();
    const std::size_t n = bb.dim();
    const std::size_t K = 2 * k + 1;
    const Field& F = bb.field();

    BandCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.entries = Dense(n, K);

    if (K > n) {
        // Fewer probes than columns would collide; read all columns exactly.
        for (std::size_t j = 0; j < n; ++j) {
            Vec e(n, 0);
            e[j] = 1;
            Vec col = bb.apply(e);
            for (std::size_t i = 0; i < n; ++i) {
                if (col[i] == 0) continue;
                if (i > j + k || j > i + k) return {std::nullopt, BandFailure::BoundaryCheck};
                cert.entries.at(i, j + k - i) = col[i];
            }
        }
        return {std::move(cert), std::nullopt};
    }

    // K probes; columns j = i, i+K, i+2K, ... of class i have pairwise
    // disjoint row windows [j-k, j+k], so the product is read off window by
    // window.  Anything nonzero outside the window union is off-band mass
    // that cannot be explained by any width-k matrix.
    for (std::size_t i = 1; i <= K; ++i) {
        Vec alpha(n, 0);
        for (std::size_t j = i; j <= n; j += K) alpha[j - 1] = 1;
        Vec w = bb.apply(alpha);

        std::vector<bool> covered(n, false);
        for (std::size_t j = i; j <= n; j += K) {
            std::size_t lo = j > k ? j - k : 1;
            std::size_t hi = std::min(n, j + k);
            for (std::size_t r = lo; r <= hi; ++r) {
                covered[r - 1] = true;
                if (w[r - 1] != 0) cert.entries.at(r - 1, j + k - r) = w[r - 1];
            }
        }
        for (std::size_t r = 0; r < n; ++r)
            if (!covered[r] && w[r] != 0)
                return {std::nullopt, BandFailure::BoundaryCheck};
    }

    BandBox hat(F, n, k, cert.entries);
    unsigned reps = reps_for(F.q(), eps);
    if (!freivalds_check(bb, hat, reps, rng)) return {std::nullopt, BandFailure::FreivaldsCheck};
    return {std::move(cert), std::nullopt};
}

bool verify_band(const BlackBox& bb, const BandCertificate& cert, const Ratio& eps, Rng& rng) {
    if (cert.n != bb.dim()) throw MalformedCertificate("certificate dimension mismatch");
    if (cert.entries.rows != cert.n || cert.entries.cols != 2 * cert.k + 1)
        throw MalformedCertificate("certificate band array has wrong shape");
    const Field& F = bb.field();
    for (Scalar v : cert.entries.a)
        if (!F.is_valid(v)) throw MalformedCertificate("certificate entry outside the field");
    // Out-of-range band positions must be stored as zero.
    for (std::size_t i = 1; i <= cert.n; ++i)
        for (std::size_t d = 0; d < 2 * cert.k + 1; ++d) {
            std::size_t j_plus_k = i + d;  // j + k, where j = i - k + d
            if (j_plus_k < cert.k + 1 || j_plus_k > cert.n + cert.k)
                if (cert.entries.at(i - 1, d) != 0)
                    throw MalformedCertificate("nonzero entry at out-of-range band position");
        }
    BandBox hat(F, cert.n, cert.k, cert.entries);
    return freivalds_check(bb, hat, reps_for(F.q(), eps), rng);
}

}  // namespace bbx
