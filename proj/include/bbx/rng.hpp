/**
 * @file rng.hpp
 * @brief Deterministic, seed-derivable random number generation.
 *
 * Protocol transcripts must be byte-for-byte reproducible from a single
 * master seed, and prover/verifier draw from independent streams.  We use a
 * splitmix64 core (fixed algorithm, platform-independent) with a derive()
 * operation hashing a role tag and round index into a child seed.
 */
#ifndef BBX_RNG_HPP
#define BBX_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

#include "bbx/field.hpp"

namespace bbx {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Next raw 64-bit value (splitmix64).
    std::uint64_t next();

    /// Uniform value in [0, n); n must be nonzero.  Uses rejection sampling,
    /// so the distribution is exact.
    std::uint64_t below(std::uint64_t n);

    /// Uniform field element.
    Scalar element(const Field& F) { return below(F.q()); }

    /// Uniform nonzero field element.
    Scalar nonzero(const Field& F) { return 1 + below(F.q() - 1); }

    std::vector<Scalar> vector(const Field& F, std::size_t n);

    /// Child generator with a seed derived from (current seed, tag, index).
    /// Does not advance this generator's stream.
    Rng derive(std::string_view tag, std::uint64_t index) const;

    std::uint64_t seed() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace bbx

#endif
