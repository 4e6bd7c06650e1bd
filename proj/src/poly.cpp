#include "bbx/poly.hpp"

#include <algorithm>

namespace bbx {

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Scalar x = i < a.size() ? a[i] : 0;
        Scalar y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    poly_trim(r);
    return r;
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        Scalar x = i < a.size() ? a[i] : 0;
        Scalar y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    poly_trim(r);
    return r;
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const Field& F, const Poly& a, Scalar c) {
    if (c == 0) return {};
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    poly_trim(r);
    return r;
}

Poly poly_monic(const Field& F, const Poly& a) {
    if (a.empty()) return {};
    return poly_scale(F, a, F.inv(a.back()));
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Poly rem = a;
    Poly quot(a.size() - b.size() + 1, 0);
    Scalar lcinv = F.inv(b.back());
    for (std::size_t i = a.size(); i-- >= b.size() && i + 1 >= b.size();) {
        if (i >= rem.size() || rem[i] == 0) {
            if (i + 1 == b.size()) break;
            continue;
        }
        Scalar c = F.mul(rem[i], lcinv);
        quot[i - (b.size() - 1)] = c;
        for (std::size_t j = 0; j < b.size(); ++j)
            rem[i - (b.size() - 1) + j] = F.sub(rem[i - (b.size() - 1) + j], F.mul(c, b[j]));
        if (i + 1 == b.size()) break;
    }
    poly_trim(rem);
    poly_trim(quot);
    return {quot, rem};
}

bool poly_divides(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty()) return b.empty();
    return poly_divmod(F, b, a).second.empty();
}

Poly poly_derivative(const Field& F, const Poly& a) {
    if (a.size() <= 1) return {};
    Poly r(a.size() - 1, 0);
    for (std::size_t i = 1; i < a.size(); ++i) {
        Scalar m = F.from_int(i % F.p());
        r[i - 1] = F.mul(a[i], m);
    }
    poly_trim(r);
    return r;
}

Scalar poly_eval(const Field& F, const Poly& a, Scalar x) {
    Scalar r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

bool poly_equal(const Poly& a, const Poly& b) { return a == b; }

Poly poly_gcd(const Field& F, const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    poly_trim(x);
    poly_trim(y);
    while (!y.empty()) {
        Poly r = poly_divmod(F, x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return poly_monic(F, x);
}

Poly poly_gcd(const Field& F, const std::vector<Poly>& fs) {
    Poly d;
    bool any = false;
    for (const Poly& f : fs) {
        if (!poly_is_zero(f)) any = true;
        d = poly_gcd(F, d, f);
    }
    if (!any) throw AllZero();
    return d;
}

Poly poly_lcm(const Field& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly g = poly_gcd(F, a, b);
    return poly_monic(F, poly_mul(F, poly_divmod(F, a, g).first, b));
}

namespace {

// xgcd of two polynomials: returns (d, s, t) with s*a + t*b = d, d monic.
struct XgcdResult {
    Poly d, s, t;
};

XgcdResult poly_xgcd(const Field& F, const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly s0{1}, s1{}, t0{}, t1{1};
    poly_trim(r0);
    poly_trim(r1);
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(F, r0, r1);
        Poly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
        Poly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty()) return {{}, {}, {}};
    Scalar c = F.inv(r0.back());
    return {poly_scale(F, r0, c), poly_scale(F, s0, c), poly_scale(F, t0, c)};
}

}  // namespace

std::pair<Poly, std::vector<Poly>> poly_xgcd_list(const Field& F, const std::vector<Poly>& fs) {
    if (fs.empty()) throw AllZero();
    bool any = false;
    for (const Poly& f : fs)
        if (!poly_is_zero(f)) any = true;
    if (!any) throw AllZero();

    std::vector<Poly> gs(fs.size());
    // Fold: maintain d = gcd(fs[0..i]) and cofactors for the prefix.
    Poly d = fs[0];
    poly_trim(d);
    if (!d.empty()) {
        Scalar c = F.inv(d.back());
        gs[0] = Poly{c};
        d = poly_scale(F, d, c);
    }
    for (std::size_t i = 1; i < fs.size(); ++i) {
        if (poly_is_zero(fs[i])) {
            gs[i] = {};
            continue;
        }
        XgcdResult x = poly_xgcd(F, d, fs[i]);
        for (std::size_t j = 0; j < i; ++j) gs[j] = poly_mul(F, gs[j], x.s);
        gs[i] = x.t;
        d = x.d;
    }

    // Degree reduction: pick a pivot index with nonzero f, reduce every other
    // cofactor modulo fs[pivot]/d and fold the compensation into the pivot.
    std::size_t pivot = 0;
    while (poly_is_zero(fs[pivot])) ++pivot;
    Poly fp_over_d = poly_divmod(F, fs[pivot], d).first;
    if (poly_deg(fp_over_d) > 0) {
        for (std::size_t i = 0; i < fs.size(); ++i) {
            if (i == pivot || poly_is_zero(gs[i])) continue;
            auto [q, r] = poly_divmod(F, gs[i], fp_over_d);
            if (poly_is_zero(q)) continue;
            gs[i] = r;
            // q*(fs[pivot]/d)*fs[i] == q*(fs[i]/d)*fs[pivot]
            Poly fi_over_d = poly_divmod(F, fs[i], d).first;
            gs[pivot] = poly_add(F, gs[pivot], poly_mul(F, q, fi_over_d));
        }
    }
    return {d, gs};
}

Poly poly_squarefree_part(const Field& F, const Poly& f) {
    if (poly_is_zero(f)) throw ZeroInput();
    Poly g = poly_monic(F, f);
    if (poly_deg(g) == 0) return {1};

    Poly gp = poly_derivative(F, g);
    if (poly_is_zero(gp)) {
        // g is a p-th power: g(z) = h(z^p) with coefficients mapped through
        // the inverse Frobenius a -> a^(q/p).
        std::uint64_t p = F.p();
        std::uint64_t root_exp = F.q() / p;  // a^(p^(e-1)) is the p-th root
        Poly h((g.size() - 1) / p + 1, 0);
        for (std::size_t i = 0; i < h.size(); ++i) h[i] = F.pow(g[i * p], root_exp);
        return poly_squarefree_part(F, h);
    }

    Poly d = poly_gcd(F, g, gp);
    Poly w = poly_divmod(F, g, d).first;  // distinct factors with mult % p != 0
    // Strip all w-factors out of d; what is left is a p-th power.
    Poly h = d;
    for (;;) {
        Poly c = poly_gcd(F, h, w);
        if (poly_deg(c) == 0) break;
        h = poly_divmod(F, h, c).first;
    }
    w = poly_monic(F, w);
    if (poly_deg(h) == 0) return w;
    Poly rest = poly_squarefree_part(F, h);
    // Factor sets of w and rest are disjoint by construction.
    return poly_monic(F, poly_mul(F, w, rest));
}

Poly poly_xpow(std::size_t n) {
    Poly r(n + 1, 0);
    r[n] = 1;
    return r;
}

}  // namespace bbx
