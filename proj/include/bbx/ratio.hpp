#ifndef BBX_RATIO_HPP
#define BBX_RATIO_HPP

#include <cstdint>
#include <stdexcept>

namespace bbx {

/// Exact error tolerance num/den (both positive, num < den for a true
/// probability bound).  Kept as integers so repetition counts and transcript
/// headers are exactly reproducible.
struct Ratio {
    std::uint64_t num = 1;
    std::uint64_t den = 2;
};

struct InvalidEpsilon : std::invalid_argument {
    InvalidEpsilon() : std::invalid_argument("tolerance must satisfy 0 < num/den < 1") {}
};

inline void check_epsilon(const Ratio& eps) {
    if (eps.num == 0 || eps.den == 0 || eps.num >= eps.den) throw InvalidEpsilon();
}

/// Smallest r >= 1 with q^(-r) <= num/den, i.e. ceil(log_q(den/num)).
inline unsigned reps_for(std::uint64_t q, const Ratio& eps) {
    check_epsilon(eps);
    unsigned r = 0;
    unsigned __int128 lhs = eps.num;
    while (lhs < eps.den) {
        lhs *= q;
        ++r;
    }
    return r == 0 ? 1 : r;
}

}  // namespace bbx

#endif
