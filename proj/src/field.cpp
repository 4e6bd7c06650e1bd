#include "bbx/field.hpp"

#include <algorithm>

namespace bbx {
namespace {

// Polynomial helpers over GF(p) used only for modulus validation and the
// exhaustive irreducible-modulus scan.  Coefficients lowest degree first,
// no trailing zeros.

using PPoly = std::vector<std::uint64_t>;

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t pinv_mod(std::uint64_t a, std::uint64_t p) {
    // Fermat; p prime, a != 0.
    std::uint64_t r = 1, b = a % p, n = p - 2;
    while (n) {
        if (n & 1) r = (unsigned __int128)r * b % p;
        b = (unsigned __int128)b * b % p;
        n >>= 1;
    }
    return r;
}

// Remainder of f modulo monic-after-normalization divisor g.
PPoly pmod(PPoly f, const PPoly& g, std::uint64_t p) {
    ptrim(f);
    const std::size_t dg = g.size() - 1;
    const std::uint64_t lcinv = pinv_mod(g.back(), p);
    while (f.size() > dg) {
        std::uint64_t c = (unsigned __int128)f.back() * lcinv % p;
        std::size_t off = f.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            std::uint64_t t = (unsigned __int128)c * g[i] % p;
            f[off + i] = (f[off + i] + p - t) % p;
        }
        ptrim(f);
        if (f.empty()) break;
    }
    return f;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + (unsigned __int128)a[i] * b[j]) % p;
    return pmod(std::move(r), m, p);
}

PPoly ppowmod(PPoly base, std::uint64_t n, const PPoly& m, std::uint64_t p) {
    PPoly r{1};
    base = pmod(std::move(base), m, p);
    while (n) {
        if (n & 1) r = pmulmod(r, base, m, p);
        base = pmulmod(base, base, m, p);
        n >>= 1;
    }
    return r;
}

PPoly pgcd(PPoly a, PPoly b, std::uint64_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PPoly r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Rabin irreducibility test for a monic polynomial of degree e over GF(p):
// x^{p^e} == x mod f, and gcd(x^{p^{e/r}} - x, f) = 1 for each prime r | e.
bool is_irreducible(const PPoly& f, std::uint64_t p) {
    const std::size_t e = f.size() - 1;
    if (e == 0) return false;
    if (e == 1) return true;

    auto xpow = [&](unsigned deg_exp) {
        // x^(p^deg_exp) mod f by repeated p-th powering.
        PPoly r{0, 1};
        for (unsigned i = 0; i < deg_exp; ++i) r = ppowmod(std::move(r), p, f, p);
        return r;
    };

    auto minus_x = [&](PPoly g) {
        if (g.size() < 2) g.resize(2, 0);
        g[1] = (g[1] + p - 1) % p;
        ptrim(g);
        return g;
    };

    // x^{p^e} - x must be 0 mod f.
    if (!minus_x(xpow((unsigned)e)).empty()) return false;

    // gcd(x^{p^{e/r}} - x, f) = 1 for every prime r dividing e.
    std::size_t rem = e;
    for (std::size_t r = 2; r <= rem; ++r) {
        if (rem % r) continue;
        PPoly g = minus_x(xpow((unsigned)(e / r)));
        if (pgcd(g, f, p).size() != 1) return false;
        while (rem % r == 0) rem /= r;
    }
    return true;
}

std::uint64_t ipow_checked(std::uint64_t p, unsigned e) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (q > UINT64_MAX / p) throw std::invalid_argument("field size overflows 64 bits");
        q *= p;
    }
    return q;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(std::uint64_t p) : p_(p), e_(1), q_(p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
}

Field::Field(std::uint64_t p, unsigned e, std::vector<std::uint64_t> modulus)
    : p_(p), e_(e), q_(ipow_checked(p, e)), modulus_(std::move(modulus)) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field characteristic must be prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (e == 1) {
        modulus_.clear();
        return;
    }
    if (modulus_.size() != e + 1) throw std::invalid_argument("modulus must have degree e");
    for (auto& c : modulus_) c %= p;
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!is_irreducible(modulus_, p)) throw std::invalid_argument("modulus is reducible");
}

Field Field::extension(std::uint64_t p, unsigned e) {
    if (e <= 1) return Field(p);
    // Lexicographic scan over (c_0, c_1, ..., c_{e-1}), c_0 most significant.
    std::vector<std::uint64_t> c(e, 0);
    for (;;) {
        std::vector<std::uint64_t> cand(c.begin(), c.end());
        cand.push_back(1);
        if (is_irreducible(cand, p)) return Field(p, e, std::move(cand));
        // increment tuple, last coordinate fastest
        int i = (int)e - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) throw std::logic_error("no irreducible polynomial found");  // unreachable
        ++c[i];
    }
}

Scalar Field::add(Scalar a, Scalar b) const {
    count_op();
    if (e_ == 1) {
        Scalar s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint64_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * mult;
        mult *= p_;
    }
    return r;
}

Scalar Field::sub(Scalar a, Scalar b) const { return add(a, neg(b)); }

Scalar Field::neg(Scalar a) const {
    count_op();
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    Scalar r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        std::uint64_t d = a % p_;
        a /= p_;
        r += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
    }
    return r;
}

Scalar Field::mul(Scalar a, Scalar b) const {
    count_op();
    if (e_ == 1) return (unsigned __int128)a * b % p_;
    // unpack, schoolbook multiply, reduce by the monic modulus, repack
    std::uint64_t da[64], db[64], prod[127];
    for (unsigned i = 0; i < e_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    unsigned plen = 2 * e_ - 1;
    for (unsigned i = 0; i < plen; ++i) prod[i] = 0;
    for (unsigned i = 0; i < e_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + (unsigned __int128)da[i] * db[j]) % p_;
    }
    for (unsigned d = plen; d-- > e_;) {
        std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (unsigned i = 0; i < e_; ++i) {
            std::uint64_t t = (unsigned __int128)c * modulus_[i] % p_;
            unsigned pos = d - e_ + i;
            prod[pos] = (prod[pos] + p_ - t) % p_;
        }
    }
    Scalar r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        r += prod[i] * mult;
        mult *= p_;
    }
    return r;
}

Scalar Field::pow(Scalar a, std::uint64_t n) const {
    Scalar r = 1;
    while (n) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw ZeroInverse();
    count_op();
    return pow(a, q_ - 2);
}

std::vector<std::uint64_t> Field::digits(Scalar a) const {
    std::vector<std::uint64_t> d(e_);
    for (unsigned i = 0; i < e_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Scalar Field::from_digits(const std::vector<std::uint64_t>& d) const {
    Scalar r = 0, mult = 1;
    for (unsigned i = 0; i < e_; ++i) {
        r += (i < d.size() ? d[i] % p_ : 0) * mult;
        mult *= p_;
    }
    return r;
}

std::string Field::to_string(Scalar a) const { return std::to_string(a); }

}  // namespace bbx
