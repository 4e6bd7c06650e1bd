#include "bbx/oracle.hpp"

namespace bbx {
namespace {

// Row-echelon elimination on a working copy; returns the rank and leaves the
// matrix in echelon form (used by dense_rank and dense_solve).
std::size_t echelonize(const Field& F, Dense& m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t piv = rank;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        Scalar inv = F.inv(m.at(rank, col));
        for (std::size_t j = col; j < m.cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == 0) continue;
            Scalar c = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// Minimal polynomial of (M, v): iterate the Krylov sequence, reducing each
// new power against an echelon basis while tracking the combination as a
// polynomial; the first linear dependence gives the (monic) local minpoly.
Poly local_minpoly(const Field& F, const Dense& m, const Vec& v) {
    struct Row {
        Vec vec;
        Poly combo;
        std::size_t pivot;
    };
    std::vector<Row> rows;
    Vec raw = v;
    for (std::size_t d = 0;; ++d) {
        Vec cur = raw;
        Poly combo = poly_xpow(d);
        for (const Row& r : rows) {
            Scalar c = cur[r.pivot];
            if (c == 0) continue;
            for (std::size_t j = 0; j < cur.size(); ++j)
                cur[j] = F.sub(cur[j], F.mul(c, r.vec[j]));
            combo = poly_sub(F, combo, poly_scale(F, r.combo, c));
        }
        if (vec_is_zero(cur)) return combo;
        std::size_t piv = 0;
        while (cur[piv] == 0) ++piv;
        Scalar inv = F.inv(cur[piv]);
        rows.push_back({vec_scale(F, cur, inv), poly_scale(F, combo, inv), piv});
        raw = dense_apply(F, m, raw);
    }
}

}  // namespace

std::size_t dense_rank(const Field& F, const Dense& m) {
    Dense w = m;
    return echelonize(F, w);
}

std::optional<Vec> dense_solve(const Field& F, const Dense& m, const Vec& b) {
    if (b.size() != m.rows) throw DimensionMismatch();
    Dense aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    echelonize(F, aug);
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        std::size_t piv = 0;
        while (piv < m.cols && aug.at(i, piv) == 0) ++piv;
        if (piv == m.cols) {
            if (aug.at(i, m.cols) != 0) return std::nullopt;  // 0 = nonzero
            continue;
        }
        x[piv] = aug.at(i, m.cols);
    }
    return x;
}

Poly dense_minpoly(const Field& F, const Dense& m) {
    if (m.rows != m.cols) throw DimensionMismatch();
    Poly mp{1};
    for (std::size_t j = 0; j < m.rows; ++j) {
        Vec e(m.rows, 0);
        e[j] = 1;
        mp = poly_lcm(F, mp, local_minpoly(F, m, e));
        if ((std::size_t)poly_deg(mp) == m.rows) break;
    }
    return mp;
}

namespace {

// Smith normal form over F[z] of a matrix with polynomial entries; returns
// the diagonal d_1 | d_2 | ... | d_n, each monic (or zero).
std::vector<Poly> smith_diagonal(const Field& F, std::vector<std::vector<Poly>> a) {
    const std::size_t n = a.size();
    std::vector<Poly> diag(n);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // Find a nonzero entry of minimal degree in the trailing block.
            std::size_t bi = n, bj = n;
            int bd = -1;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    int d = poly_deg(a[i][j]);
                    if (d >= 0 && (bd < 0 || d < bd)) bd = d, bi = i, bj = j;
                }
            if (bd < 0) break;  // all-zero trailing block
            std::swap(a[t], a[bi]);
            for (std::size_t i = t; i < n; ++i) std::swap(a[i][t], a[i][bj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (poly_is_zero(a[i][t])) continue;
                auto [q, r] = poly_divmod(F, a[i][t], a[t][t]);
                for (std::size_t j = t; j < n; ++j)
                    a[i][j] = poly_sub(F, a[i][j], poly_mul(F, q, a[t][j]));
                if (!poly_is_zero(r)) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (poly_is_zero(a[t][j])) continue;
                auto [q, r] = poly_divmod(F, a[t][j], a[t][t]);
                for (std::size_t i = t; i < n; ++i)
                    a[i][j] = poly_sub(F, a[i][j], poly_mul(F, q, a[i][t]));
                if (!poly_is_zero(r)) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide everything that remains; otherwise fold the
            // offending row into row t and redo.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < n && divides_all; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!poly_divides(F, a[t][t], a[i][j])) {
                        for (std::size_t jj = t; jj < n; ++jj)
                            a[t][jj] = poly_add(F, a[t][jj], a[i][jj]);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        diag[t] = poly_monic(F, a[t][t]);
    }
    return diag;
}

}  // namespace

InvariantReport invariant_report(const Field& F, const Dense& m, std::size_t size_limit) {
    if (m.rows != m.cols) throw DimensionMismatch();
    const std::size_t n = m.rows;
    if (n > size_limit) throw SizeLimit();

    // zI - M as a polynomial matrix.
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Poly p;
            if (m.at(i, j) != 0) p.push_back(F.neg(m.at(i, j)));
            if (i == j) {
                p.resize(2, 0);
                p[1] = 1;
                poly_trim(p);
            }
            a[i][j] = std::move(p);
        }
    std::vector<Poly> diag = smith_diagonal(F, a);

    InvariantReport rep;
    rep.factors.resize(n);
    for (std::size_t i = 0; i < n; ++i) rep.factors[i] = diag[n - 1 - i];  // descending chain
    rep.minpoly = rep.factors[0];
    rep.charpoly = Poly{1};
    std::size_t z_divisors = 0;
    Poly z{0, 1};
    for (const Poly& f : rep.factors) {
        rep.charpoly = poly_mul(F, rep.charpoly, f);
        if (poly_deg(f) >= 1 && !poly_equal(f, z)) ++rep.nontrivial_count;
        if (poly_deg(f) >= 2 && f[0] == 0 && f[1] == 0) ++rep.nilpotent_block_count;
        if (!poly_is_zero(f) && f[0] == 0) ++z_divisors;
    }
    rep.rank = n - z_divisors;
    return rep;
}

std::size_t dense_band_width(const Dense& m) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(i, j) != 0) {
                std::size_t d = i > j ? i - j : j - i;
                k = std::max(k, d);
            }
    return k;
}

std::size_t dense_displacement_rank(const Field& F, const Dense& m, OpKind kind) {
    const std::size_t n = m.rows;
    Dense z0(n, n), z1(n, n);
    for (std::size_t i = 1; i < n; ++i) z0.at(i, i - 1) = 1;
    z1 = z0;
    z1.at(0, n - 1) = 1;
    Dense img;
    switch (kind) {
        case OpKind::T:
            img = dense_sub(F, dense_mul(F, z1, m), dense_mul(F, m, z0));
            break;
        case OpKind::H:
            img = dense_sub(F, dense_mul(F, z1, m), dense_mul(F, m, dense_transpose(z0)));
            break;
        case OpKind::TH: {
            Dense y = dense_add(F, z0, dense_transpose(z0));
            img = dense_sub(F, dense_mul(F, y, m), dense_mul(F, m, y));
            break;
        }
    }
    return dense_rank(F, img);
}

}  // namespace bbx
