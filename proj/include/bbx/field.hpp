/**
 * @file field.hpp
 * @brief Arithmetic in prime fields GF(p) and extensions GF(p^e).
 *
 * Elements are packed into a single 64-bit word: an element with coordinate
 * vector (c_0, ..., c_{e-1}) over GF(p) is encoded as c_0 + c_1*p + ... +
 * c_{e-1}*p^{e-1}.  For prime fields this is just the canonical residue.
 * Extension arithmetic unpacks to digits, works modulo the (monic,
 * irreducible) modulus polynomial, and repacks.  No discrete-log tables are
 * used, so q = p^e is limited only by the 64-bit encoding.
 */
#ifndef BBX_FIELD_HPP
#define BBX_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbx {

/// Canonical packed representation of a field element, always in [0, q).
using Scalar = std::uint64_t;

class Field {
public:
    /// Prime field GF(p).  Throws std::invalid_argument if p is not prime.
    explicit Field(std::uint64_t p);

    /// Extension field GF(p)[t]/(modulus).  `modulus` lists e+1 coefficients,
    /// lowest degree first, and must be monic and irreducible over GF(p).
    Field(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus);

    /// GF(p^e) with a deterministically chosen modulus: the lexicographically
    /// least (by coefficient tuple c_0, c_1, ...) monic irreducible polynomial
    /// of degree e, found by exhaustive scan.
    static Field extension(std::uint64_t p, unsigned e);

    std::uint64_t p() const { return p_; }
    unsigned degree() const { return e_; }
    std::uint64_t q() const { return q_; }
    /// Modulus coefficients (e+1 of them, monic); empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    bool operator==(const Field& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }
    bool operator!=(const Field& other) const { return !(*this == other); }

    Scalar zero() const { return 0; }
    Scalar one() const { return 1; }
    /// Embeds an integer via reduction mod p (degree-zero element).
    Scalar from_int(std::uint64_t x) const { return x % p_; }
    bool is_valid(Scalar a) const { return a < q_; }

    Scalar add(Scalar a, Scalar b) const;
    Scalar sub(Scalar a, Scalar b) const;
    Scalar neg(Scalar a) const;
    Scalar mul(Scalar a, Scalar b) const;
    Scalar pow(Scalar a, std::uint64_t n) const;
    /// Multiplicative inverse.  Throws ZeroInverse for a = 0.
    Scalar inv(Scalar a) const;

    /// Coordinates of a over GF(p), length degree(), lowest power first.
    std::vector<std::uint64_t> digits(Scalar a) const;
    Scalar from_digits(const std::vector<std::uint64_t>& d) const;

    std::string to_string(Scalar a) const;

    /// Running count of field operations (add/sub/neg/mul/inv), used by the
    /// protocol cost meters.  The counter is shared across copies of this
    /// Field, so black boxes holding a copy contribute to the same total.
    std::uint64_t ops() const { return *ops_; }
    void reset_ops() const { *ops_ = 0; }

private:
    std::uint64_t p_;
    unsigned e_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;  // empty when e_ == 1
    std::shared_ptr<std::uint64_t> ops_ = std::make_shared<std::uint64_t>(0);

    void count_op() const { ++*ops_; }
};

struct ZeroInverse : std::domain_error {
    ZeroInverse() : std::domain_error("inverse of zero field element") {}
};

struct FieldMismatch : std::invalid_argument {
    FieldMismatch() : std::invalid_argument("operands belong to different fields") {}
};

bool is_prime_u64(std::uint64_t n);

}  // namespace bbx

#endif
