#include "bbx/lowrank.hpp"

#include <algorithm>

namespace bbx {
namespace {

// v minus its projection onto the basis columns; zero iff v lies in their
// span (exactly, since C is exactly nonsingular).
Vec span_residual(const Field& F, const BasisState& st, const Vec& v) {
    if (st.size() == 0) return v;
    Vec vr(st.size());
    for (std::size_t m = 0; m < st.size(); ++m) vr[m] = v[st.row_idx[m]];
    Vec coeff = dense_apply(F, st.Cinv, vr);
    Vec proj = dense_apply(F, st.columns, coeff);
    return vec_sub(F, v, proj);
}

}  // namespace

std::optional<IndependentColumn> locate_independent_column(const BlackBox& bb,
                                                           const BasisState& st, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();
    Vec x = rng.vector(F, n);
    Vec u = span_residual(F, st, bb.apply(x));
    if (vec_is_zero(u)) return std::nullopt;

    // Binary splitting on the support of x: the residual map is linear, so
    // whenever resid(A x) != 0, one of the two support halves keeps a
    // nonzero residual.  The lower-index half is tried first.
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n; ++j)
        if (x[j] != 0) support.push_back(j);
    while (support.size() > 1) {
        std::size_t h = (support.size() + 1) / 2;
        std::vector<std::size_t> lower(support.begin(), support.begin() + h);
        Vec x1(n, 0);
        for (std::size_t j : lower) x1[j] = x[j];
        Vec u1 = span_residual(F, st, bb.apply(x1));
        if (!vec_is_zero(u1)) {
            support = std::move(lower);
        } else {
            support.erase(support.begin(), support.begin() + h);
        }
    }
    std::size_t j = support.front();
    Vec e(n, 0);
    e[j] = 1;
    Vec col = bb.apply(e);
    Vec res = span_residual(F, st, col);
    // res != 0: the surviving singleton's residual is exactly x[j]^{-1}
    // times the residual kept by the splitting.
    return IndependentColumn{j, std::move(col), std::move(res)};
}

Dense extend_inverse(const Field& F, const Dense& Cinv, const Vec& s, const Vec& t, Scalar alpha) {
    const std::size_t l = Cinv.rows;
    if (s.size() != l || t.size() != l) throw DimensionMismatch();
    Vec cs = dense_apply(F, Cinv, s);             // Cinv * s
    Vec tc = dense_apply_transpose(F, Cinv, t);   // (t * Cinv)^T
    Scalar beta = F.sub(alpha, vec_dot(F, t, cs));
    if (beta == 0) throw SingularExtension();
    Scalar bi = F.inv(beta);

    Dense out(l + 1, l + 1);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            out.at(i, j) = F.add(Cinv.at(i, j), F.mul(F.mul(cs[i], bi), tc[j]));
    for (std::size_t i = 0; i < l; ++i) {
        out.at(i, l) = F.neg(F.mul(cs[i], bi));
        out.at(l, i) = F.neg(F.mul(bi, tc[i]));
    }
    out.at(l, l) = bi;
    return out;
}

RankResult detect_low_rank(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();

    BasisState st;
    st.n = n;
    st.Cinv = Dense(0, 0);
    st.columns = Dense(n, 0);
    Dense C(0, 0);

    for (;;) {
        std::size_t l = st.size();
        // Amplify the per-probe 1/q in-span error to eps/(min(l,k)+1): an
        // InSpan verdict stands only after `amp` consecutive clean probes.
        std::uint64_t slack = std::min(l, k) + 1;
        Ratio per{eps.num, eps.den};
        if (per.den > UINT64_MAX / slack) per.num = 1, per.den = UINT64_MAX;  // saturate
        else per.den *= slack;
        unsigned amp = reps_for(F.q(), per);

        std::optional<IndependentColumn> found;
        for (unsigned t = 0; t < amp && !found; ++t)
            found = locate_independent_column(bb, st, rng);
        if (!found) break;  // rank estimate settles at l

        if (l == k) return {std::nullopt, true};  // reached l = k+1 columns

        // Row index: smallest with nonzero residual entry.
        std::size_t i_new = 0;
        while (found->residual[i_new] == 0) ++i_new;
        // Row of A at i_new restricted to the basis columns, via A^T e_i.
        Vec ei(n, 0);
        ei[i_new] = 1;
        Vec rowv = bb.apply_transpose(ei);
        Vec t_row(l), s_col(l);
        for (std::size_t m = 0; m < l; ++m) {
            t_row[m] = rowv[st.col_idx[m]];
            s_col[m] = found->column[st.row_idx[m]];
        }
        Scalar alpha = found->column[i_new];
        st.Cinv = extend_inverse(F, st.Cinv, s_col, t_row, alpha);

        Dense newC(l + 1, l + 1);
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < l; ++j) newC.at(i, j) = C.at(i, j);
        for (std::size_t m = 0; m < l; ++m) {
            newC.at(m, l) = s_col[m];
            newC.at(l, m) = t_row[m];
        }
        newC.at(l, l) = alpha;
        C = std::move(newC);

        Dense cols(n, l + 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t m = 0; m < l; ++m) cols.at(i, m) = st.columns.at(i, m);
            cols.at(i, l) = found->column[i];
        }
        st.columns = std::move(cols);
        st.row_idx.push_back(i_new);
        st.col_idx.push_back(found->j);
    }

    // Assemble the certificate for r = st.size().
    const std::size_t r = st.size();
    RankCertificate cert;
    cert.n = n;
    cert.r = r;
    cert.row_idx = st.row_idx;
    cert.col_idx = st.col_idx;
    cert.C = C;
    cert.Cinv = st.Cinv;

    std::vector<bool> in_row(n, false), in_col(n, false);
    for (std::size_t i : st.row_idx) in_row[i] = true;
    for (std::size_t j : st.col_idx) in_col[j] = true;
    cert.row_perm = st.row_idx;
    cert.col_perm = st.col_idx;
    for (std::size_t i = 0; i < n; ++i)
        if (!in_row[i]) cert.row_perm.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
        if (!in_col[j]) cert.col_perm.push_back(j);

    // [I; L] = P^T A_L C^{-1}: rows beyond the first r of A_L * Cinv, in
    // row_perm order.  A_L is the stored basis columns (r applications were
    // already spent fetching them).
    Dense X = dense_mul(F, st.columns, st.Cinv);  // n x r
    cert.L = Dense(n - r, r);
    for (std::size_t m = r; m < n; ++m)
        for (std::size_t j = 0; j < r; ++j) cert.L.at(m - r, j) = X.at(cert.row_perm[m], j);

    // [I R] = C^{-1} A_R Q^T: A_R = A[row_idx, :] fetched with r transpose
    // applications.
    Dense AR(r, n);
    for (std::size_t m = 0; m < r; ++m) {
        Vec ei(n, 0);
        ei[st.row_idx[m]] = 1;
        Vec row = bb.apply_transpose(ei);
        for (std::size_t j = 0; j < n; ++j) AR.at(m, j) = row[j];
    }
    Dense Y = dense_mul(F, st.Cinv, AR);  // r x n
    cert.R = Dense(r, n - r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t m = r; m < n; ++m) cert.R.at(i, m - r) = Y.at(i, cert.col_perm[m]);

    return {std::move(cert), false};
}

namespace {

class RecompositionBox final : public BlackBox {
public:
    RecompositionBox(Field F, RankCertificate cert)
        : BlackBox(std::move(F), cert.n), c_(std::move(cert)) {}

protected:
    Vec do_apply(const Vec& v) const override {
        const std::size_t n = c_.n, r = c_.r;
        // Q: gather into block order.
        Vec g(n);
        for (std::size_t m = 0; m < n; ++m) g[m] = v[c_.col_perm[m]];
        // [I R]
        Vec y1(g.begin(), g.begin() + r);
        if (n > r) {
            Vec tail(g.begin() + r, g.end());
            y1 = vec_add(F_, y1, dense_apply(F_, c_.R, tail));
        }
        Vec y2 = dense_apply(F_, c_.C, y1);
        // [I; L]
        Vec y3(n, 0);
        for (std::size_t m = 0; m < r; ++m) y3[m] = y2[m];
        if (n > r) {
            Vec low = dense_apply(F_, c_.L, y2);
            for (std::size_t m = r; m < n; ++m) y3[m] = low[m - r];
        }
        // P: scatter back.
        Vec out(n, 0);
        for (std::size_t m = 0; m < n; ++m) out[c_.row_perm[m]] = y3[m];
        return out;
    }

    Vec do_apply_transpose(const Vec& v) const override {
        const std::size_t n = c_.n, r = c_.r;
        Vec g(n);
        for (std::size_t m = 0; m < n; ++m) g[m] = v[c_.row_perm[m]];
        Vec z1(g.begin(), g.begin() + r);
        if (n > r) {
            Vec tail(g.begin() + r, g.end());
            z1 = vec_add(F_, z1, dense_apply_transpose(F_, c_.L, tail));
        }
        Vec z2 = dense_apply_transpose(F_, c_.C, z1);
        Vec z3(n, 0);
        for (std::size_t m = 0; m < r; ++m) z3[m] = z2[m];
        if (n > r) {
            Vec high = dense_apply_transpose(F_, c_.R, z2);
            for (std::size_t m = r; m < n; ++m) z3[m] = high[m - r];
        }
        Vec out(n, 0);
        for (std::size_t m = 0; m < n; ++m) out[c_.col_perm[m]] = z3[m];
        return out;
    }

private:
    RankCertificate c_;
};

void check_permutation(const std::vector<std::size_t>& p, std::size_t n) {
    if (p.size() != n) throw MalformedCertificate("permutation has wrong length");
    std::vector<bool> seen(n, false);
    for (std::size_t v : p) {
        if (v >= n || seen[v]) throw MalformedCertificate("invalid permutation");
        seen[v] = true;
    }
}

}  // namespace

BBPtr recomposition_box(Field F, const RankCertificate& cert) {
    return std::make_shared<RecompositionBox>(std::move(F), cert);
}

bool verify_low_rank(const BlackBox& bb, const RankCertificate& cert, const Ratio& eps, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim(), r = cert.r;
    if (cert.n != n || r > n) throw MalformedCertificate("certificate dimension mismatch");
    check_permutation(cert.row_perm, n);
    check_permutation(cert.col_perm, n);
    if (cert.C.rows != r || cert.C.cols != r || cert.Cinv.rows != r || cert.Cinv.cols != r ||
        cert.L.rows != n - r || cert.L.cols != r || cert.R.rows != r || cert.R.cols != n - r)
        throw MalformedCertificate("certificate block has wrong shape");
    if (dense_mul(F, cert.C, cert.Cinv) != Dense::identity(r))
        throw MalformedCertificate("C * Cinv is not the identity");

    RecompositionBox hat(F, cert);
    return freivalds_check(bb, hat, reps_for(F.q(), eps), rng);
}

}  // namespace bbx
