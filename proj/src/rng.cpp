#include "bbx/rng.hpp"

namespace bbx {
namespace {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t Rng::next() {
    std::uint64_t out = mix(state_);
    state_ += 0x9e3779b97f4a7c15ULL;
    return out;
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection sampling on the top of the range to avoid modulo bias.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        std::uint64_t x = next();
        if (x < limit) return x % n;
    }
}

std::vector<Scalar> Rng::vector(const Field& F, std::size_t n) {
    std::vector<Scalar> v(n);
    for (auto& x : v) x = element(F);
    return v;
}

Rng Rng::derive(std::string_view tag, std::uint64_t index) const {
    std::uint64_t h = state_;
    for (char c : tag) h = mix(h ^ (std::uint64_t)(unsigned char)c);
    return Rng(mix(h ^ index));
}

}  // namespace bbx
