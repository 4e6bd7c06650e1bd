/**
 * @file oracle.hpp
 * @brief Dense ground-truth algorithms: exact rank, minimal polynomial,
 *        invariant factors (Smith form of zI - M over F[z]), band width and
 *        displacement rank.  Cubic-or-worse costs, intended for validation
 *        at small n only.
 */
#ifndef BBX_ORACLE_HPP
#define BBX_ORACLE_HPP

#include <optional>

#include "bbx/blackbox.hpp"
#include "bbx/poly.hpp"

namespace bbx {

struct SizeLimit : std::invalid_argument {
    SizeLimit() : std::invalid_argument("matrix too large for the dense ground-truth path") {}
};

struct InvariantReport {
    /// phi_1, phi_2, ... with phi_{i+1} | phi_i, padded with trivial factors
    /// (1) so the list always has n entries and the degrees sum to n.
    std::vector<Poly> factors;
    std::size_t nontrivial_count = 0;      // deg >= 1 and != z
    std::size_t nilpotent_block_count = 0; // z^2 divides
    std::size_t rank = 0;
    Poly minpoly;   // = factors[0]
    Poly charpoly;  // = product of all factors
};

std::size_t dense_rank(const Field& F, const Dense& m);
Poly dense_minpoly(const Field& F, const Dense& m);
InvariantReport invariant_report(const Field& F, const Dense& m, std::size_t size_limit = 64);
std::size_t dense_band_width(const Dense& m);
std::size_t dense_displacement_rank(const Field& F, const Dense& m, OpKind kind);

/// One solution of M x = b, or nullopt when the system is inconsistent.
std::optional<Vec> dense_solve(const Field& F, const Dense& m, const Vec& b);

}  // namespace bbx

#endif
