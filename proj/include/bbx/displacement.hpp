/**
 * @file displacement.hpp
 * @brief Toeplitz-like / Hankel-like / Toeplitz+Hankel-like structure via
 *        low rank of the displacement operator image.  A black box for
 *        phi(A) costs two applications of A per probe, so everything else
 *        delegates to the rank machinery.
 */
#ifndef BBX_DISPLACEMENT_HPP
#define BBX_DISPLACEMENT_HPP

#include "bbx/lowrank.hpp"

namespace bbx {

struct DisplacementCertificate {
    OpKind kind = OpKind::T;
    RankCertificate inner;  // rank decomposition of phi_kind(A)
};

struct DisplacementResult {
    std::optional<DisplacementCertificate> cert;
    bool not_structured = false;
    bool ok() const { return cert.has_value(); }
};

DisplacementResult detect_displacement(BBPtr bb, OpKind kind, std::size_t k, const Ratio& eps,
                                       Rng& rng);

bool verify_displacement(BBPtr bb, const DisplacementCertificate& cert, const Ratio& eps,
                         Rng& rng);

}  // namespace bbx

#endif
