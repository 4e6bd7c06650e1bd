#include "bbx/krylov.hpp"

#include "bbx/oracle.hpp"

namespace bbx {

Poly berlekamp_massey(const Field& F, const std::vector<Scalar>& seq) {
    // Connection polynomial C with C[0] = 1; at the end the generator is the
    // degree-L reversal of C.
    Poly C{1}, B{1};
    std::size_t L = 0, m = 1;
    Scalar b = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        Scalar delta = seq[i];
        for (std::size_t j = 1; j <= L && j < C.size(); ++j)
            delta = F.add(delta, F.mul(C[j], seq[i - j]));
        if (delta == 0) {
            ++m;
        } else if (2 * L <= i) {
            Poly T = C;
            Scalar coef = F.mul(delta, F.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t j = 0; j < B.size(); ++j)
                C[j + m] = F.sub(C[j + m], F.mul(coef, B[j]));
            L = i + 1 - L;
            B = std::move(T);
            b = delta;
            m = 1;
        } else {
            Scalar coef = F.mul(delta, F.inv(b));
            if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
            for (std::size_t j = 0; j < B.size(); ++j)
                C[j + m] = F.sub(C[j + m], F.mul(coef, B[j]));
            ++m;
        }
    }
    // g(z) = z^L * C(1/z): g[L - j] = C[j], low positions zero-padded.
    Poly g(L + 1, 0);
    for (std::size_t j = 0; j < C.size() && j <= L; ++j) g[L - j] = C[j];
    return g;  // monic since C[0] = 1
}

Poly minpoly_sequence(const BlackBox& bb, const Vec& u, const Vec& v, std::size_t bound) {
    if (u.size() != bb.dim() || v.size() != bb.dim()) throw DimensionMismatch();
    if (bound == 0) bound = bb.dim();
    const Field& F = bb.field();
    std::vector<Scalar> seq(2 * bound);
    Vec w = v;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        seq[i] = vec_dot(F, u, w);
        if (i + 1 < seq.size()) w = bb.apply(w);
    }
    return berlekamp_massey(F, seq);
}

MinPolyEstimate minpoly_matrix_vector(const BlackBox& bb, const Vec& v, unsigned trials, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();
    MinPolyEstimate est{Poly{1}, trials, false};
    if (vec_is_zero(v)) return est;

    // All trials share the Krylov iterates of v; compute them once.
    std::vector<Vec> iter;
    iter.reserve(2 * n);
    iter.push_back(v);
    for (std::size_t i = 1; i < 2 * n; ++i) iter.push_back(bb.apply(iter.back()));
    for (unsigned t = 0; t < trials; ++t) {
        Vec u = rng.vector(F, n);
        std::vector<Scalar> seq(iter.size());
        for (std::size_t i = 0; i < iter.size(); ++i) seq[i] = vec_dot(F, u, iter[i]);
        est.poly = poly_lcm(F, est.poly, berlekamp_massey(F, seq));
        if ((std::size_t)poly_deg(est.poly) == n) break;
    }
    return est;
}

namespace {

// One extension-field trial: u, v drawn over E = GF(q^e), the black box kept
// over the base field.  An E-vector is carried as e base-field digit planes;
// advancing the Krylov iterate costs e applications per power.  The minimal
// F[z]-generator of the E-valued sequence is the lcm of the generators of
// its e coordinate sequences.
Poly extension_trial(const BlackBox& bb, const Field& E, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();
    const unsigned e = E.degree();

    Vec u(n), v(n);
    for (auto& x : u) x = rng.below(E.q());
    for (auto& x : v) x = rng.below(E.q());

    std::vector<Vec> planes(e, Vec(n));
    for (std::size_t c = 0; c < n; ++c) {
        auto d = E.digits(v[c]);
        for (unsigned j = 0; j < e; ++j) planes[j][c] = d[j];
    }

    std::vector<Scalar> eseq(2 * n);
    for (std::size_t i = 0; i < eseq.size(); ++i) {
        Scalar s = 0;
        for (std::size_t c = 0; c < n; ++c) {
            // Packed E-element of coordinate c, reassembled from the planes.
            Scalar wc = 0, mult = 1;
            for (unsigned j = 0; j < e; ++j) {
                wc += planes[j][c] * mult;
                mult *= E.p();
            }
            s = E.add(s, E.mul(u[c], wc));
        }
        eseq[i] = s;
        if (i + 1 < eseq.size())
            for (unsigned j = 0; j < e; ++j) planes[j] = bb.apply(planes[j]);
    }

    Poly g{1};
    for (unsigned j = 0; j < e; ++j) {
        std::vector<Scalar> comp(eseq.size());
        for (std::size_t i = 0; i < eseq.size(); ++i) comp[i] = E.digits(eseq[i])[j];
        g = poly_lcm(F, g, berlekamp_massey(F, comp));
    }
    return g;
}

}  // namespace

MinPolyEstimate minpoly_matrix(const BlackBox& bb, const Ratio& eps, Rng& rng, bool use_extension) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();
    unsigned trials = reps_for(2, eps);  // per-trial failure <= 1/2 once q^e >= 2n

    MinPolyEstimate est{Poly{1}, 0, false};
    bool lift = use_extension && F.q() < 2 * n && F.degree() == 1;
    if (use_extension && F.q() < 2 * n && F.degree() > 1) {
        // No embedding machinery for towers over non-prime base fields:
        // compensate with extra base-field lcm rounds instead.
        trials *= 2 * (unsigned)((2 * n) / F.q() + 1);
    }

    if (lift) {
        unsigned e = 1;
        std::uint64_t qe = F.q();
        while (qe < 2 * n) qe *= F.q(), ++e;
        Field E = Field::extension(F.p(), e);
        for (unsigned t = 0; t < trials; ++t) {
            est.poly = poly_lcm(F, est.poly, extension_trial(bb, E, rng));
            ++est.trials;
            if ((std::size_t)poly_deg(est.poly) == n) break;
        }
        est.used_extension = true;
        return est;
    }

    for (unsigned t = 0; t < trials; ++t) {
        Vec v = rng.vector(F, n);
        MinPolyEstimate one = minpoly_matrix_vector(bb, v, 1, rng);
        est.poly = poly_lcm(F, est.poly, one.poly);
        ++est.trials;
        if ((std::size_t)poly_deg(est.poly) == n) break;
    }
    return est;
}

Vec apply_poly(const BlackBox& bb, const Poly& f, const Vec& v) {
    const Field& F = bb.field();
    if (f.empty()) return Vec(bb.dim(), 0);
    Vec r = vec_scale(F, v, f.back());
    for (std::size_t i = f.size() - 1; i-- > 0;) {
        r = bb.apply(r);
        if (f[i] != 0) r = vec_add(F, r, vec_scale(F, v, f[i]));
    }
    return r;
}

std::optional<Vec> solve_consistent(const BlackBox& bb, const Vec& b, const Ratio& eps, Rng& rng) {
    const Field& F = bb.field();
    if (vec_is_zero(b)) return Vec(bb.dim(), 0);

    unsigned trials = std::max<unsigned>(2, reps_for(2, eps));
    Poly g = minpoly_matrix_vector(bb, b, trials, rng).poly;
    if (!g.empty() && g[0] != 0) {
        // g(B) b = 0 and g(0) != 0  =>  B * (-g(0)^{-1} h(B) b) = b
        // with h = (g - g(0)) / z.
        Poly h(g.begin() + 1, g.end());
        Vec x = apply_poly(bb, h, b);
        x = vec_scale(F, x, F.neg(F.inv(g[0])));
        if (bb.apply(x) == b) return x;
    }
    // Dense fallback; the unconditional post-check keeps callers honest.
    Dense m = materialize(bb);
    auto x = dense_solve(F, m, b);
    if (!x) return std::nullopt;
    if (bb.apply(*x) != b) return std::nullopt;  // unreachable if solve is right
    return x;
}

}  // namespace bbx
