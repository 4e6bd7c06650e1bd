#include "bbx/displacement.hpp"

namespace bbx {

DisplacementResult detect_displacement(BBPtr bb, OpKind kind, std::size_t k, const Ratio& eps,
                                       Rng& rng) {
    BBPtr op = operator_matrix(std::move(bb), kind);
    RankResult rr = detect_low_rank(*op, k, eps, rng);
    if (!rr.ok()) return {std::nullopt, true};
    return {DisplacementCertificate{kind, std::move(*rr.cert)}, false};
}

bool verify_displacement(BBPtr bb, const DisplacementCertificate& cert, const Ratio& eps,
                         Rng& rng) {
    BBPtr op = operator_matrix(std::move(bb), cert.kind);
    return verify_low_rank(*op, cert.inner, eps, rng);
}

}  // namespace bbx
