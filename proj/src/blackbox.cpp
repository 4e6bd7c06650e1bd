#include "bbx/blackbox.hpp"

namespace bbx {

Vec dense_apply(const Field& F, const Dense& m, const Vec& v) {
    if (v.size() != m.cols) throw DimensionMismatch();
    Vec r(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        Scalar s = 0;
        for (std::size_t j = 0; j < m.cols; ++j) s = F.add(s, F.mul(m.at(i, j), v[j]));
        r[i] = s;
    }
    return r;
}

Vec dense_apply_transpose(const Field& F, const Dense& m, const Vec& v) {
    if (v.size() != m.rows) throw DimensionMismatch();
    Vec r(m.cols, 0);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r[j] = F.add(r[j], F.mul(m.at(i, j), v[i]));
    return r;
}

Dense dense_mul(const Field& F, const Dense& x, const Dense& y) {
    if (x.cols != y.rows) throw DimensionMismatch();
    Dense r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            Scalar xv = x.at(i, k);
            if (xv == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = F.add(r.at(i, j), F.mul(xv, y.at(k, j)));
        }
    return r;
}

Dense dense_add(const Field& F, const Dense& x, const Dense& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch();
    Dense r(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = F.add(x.a[i], y.a[i]);
    return r;
}

Dense dense_sub(const Field& F, const Dense& x, const Dense& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch();
    Dense r(x.rows, x.cols);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = F.sub(x.a[i], y.a[i]);
    return r;
}

Dense dense_transpose(const Dense& m) {
    Dense r(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

Vec vec_add(const Field& F, const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch();
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.add(x[i], y[i]);
    return r;
}

Vec vec_sub(const Field& F, const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch();
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.sub(x[i], y[i]);
    return r;
}

Vec vec_scale(const Field& F, const Vec& x, Scalar c) {
    Vec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = F.mul(x[i], c);
    return r;
}

Scalar vec_dot(const Field& F, const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch();
    Scalar s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(x[i], y[i]));
    return s;
}

bool vec_is_zero(const Vec& x) {
    for (Scalar v : x)
        if (v != 0) return false;
    return true;
}

DenseBox::DenseBox(Field F, Dense m) : BlackBox(std::move(F), m.rows), m_(std::move(m)) {
    if (m_.rows != m_.cols) throw DimensionMismatch();
}

Vec DenseBox::do_apply(const Vec& v) const { return dense_apply(F_, m_, v); }
Vec DenseBox::do_apply_transpose(const Vec& v) const { return dense_apply_transpose(F_, m_, v); }

SparseBox::SparseBox(Field F, std::size_t n, std::vector<Triple> entries)
    : BlackBox(std::move(F), n), entries_(std::move(entries)) {
    for (const Triple& t : entries_)
        if (t.i >= n || t.j >= n) throw DimensionMismatch();
}

Vec SparseBox::do_apply(const Vec& v) const {
    Vec r(n_, 0);
    for (const Triple& t : entries_) r[t.i] = F_.add(r[t.i], F_.mul(t.val, v[t.j]));
    return r;
}

Vec SparseBox::do_apply_transpose(const Vec& v) const {
    Vec r(n_, 0);
    for (const Triple& t : entries_) r[t.j] = F_.add(r[t.j], F_.mul(t.val, v[t.i]));
    return r;
}

BandBox::BandBox(Field F, std::size_t n, std::size_t k, Dense bands)
    : BlackBox(std::move(F), n), k_(k), bands_(std::move(bands)) {
    if (bands_.rows != n || bands_.cols != 2 * k + 1) throw DimensionMismatch();
}

Vec BandBox::do_apply(const Vec& v) const {
    Vec r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        Scalar s = 0;
        for (std::size_t d = 0; d < 2 * k_ + 1; ++d) {
            // column j = i - k + d
            if (i + d < k_ || i + d >= n_ + k_) continue;
            std::size_t j = i + d - k_;
            s = F_.add(s, F_.mul(bands_.at(i, d), v[j]));
        }
        r[i] = s;
    }
    return r;
}

Vec BandBox::do_apply_transpose(const Vec& v) const {
    Vec r(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t d = 0; d < 2 * k_ + 1; ++d) {
            if (i + d < k_ || i + d >= n_ + k_) continue;
            std::size_t j = i + d - k_;
            r[j] = F_.add(r[j], F_.mul(bands_.at(i, d), v[i]));
        }
    return r;
}

PlusLowRankBox::PlusLowRankBox(BBPtr base, Dense V, Dense U)
    : BlackBox(base->field(), base->dim()), base_(std::move(base)), V_(std::move(V)), U_(std::move(U)) {
    if (V_.rows != n_ || U_.cols != n_ || V_.cols != U_.rows) throw DimensionMismatch();
}

Vec PlusLowRankBox::do_apply(const Vec& v) const {
    Vec r = base_->apply(v);
    Vec uv = dense_apply(F_, U_, v);
    Vec vu = dense_apply(F_, V_, uv);
    return vec_add(F_, r, vu);
}

Vec PlusLowRankBox::do_apply_transpose(const Vec& v) const {
    // (A + V U)^T = A^T + U^T V^T
    Vec r = base_->apply_transpose(v);
    Vec vt = dense_apply_transpose(F_, V_, v);
    Vec ut = dense_apply_transpose(F_, U_, vt);
    return vec_add(F_, r, ut);
}

Vec ShiftBox::do_apply(const Vec& v) const {
    Vec r(n_, 0);
    r[0] = F_.mul(alpha_, v[n_ - 1]);
    for (std::size_t i = 1; i < n_; ++i) r[i] = v[i - 1];
    return r;
}

Vec ShiftBox::do_apply_transpose(const Vec& v) const {
    Vec r(n_, 0);
    for (std::size_t i = 0; i + 1 < n_; ++i) r[i] = v[i + 1];
    r[n_ - 1] = F_.mul(alpha_, v[0]);
    return r;
}

namespace {

// Down-shift Z_0 and its transpose, applied directly (no counter cost).
Vec shift_down(const Vec& v) {
    Vec r(v.size(), 0);
    for (std::size_t i = 1; i < v.size(); ++i) r[i] = v[i - 1];
    return r;
}

Vec shift_up(const Vec& v) {
    Vec r(v.size(), 0);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) r[i] = v[i + 1];
    return r;
}

// Z_1 (cyclic down-shift) and its transpose.
Vec cyc_down(const Vec& v) {
    Vec r(v.size());
    r[0] = v.back();
    for (std::size_t i = 1; i < v.size(); ++i) r[i] = v[i - 1];
    return r;
}

Vec cyc_up(const Vec& v) {
    Vec r(v.size());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) r[i] = v[i + 1];
    r.back() = v[0];
    return r;
}

Vec sym_shift(const Field& F, const Vec& v) {  // (Z0 + Z0^T) v
    return vec_add(F, shift_down(v), shift_up(v));
}

}  // namespace

OperatorBox::OperatorBox(BBPtr base, OpKind kind)
    : BlackBox(base->field(), base->dim()), base_(std::move(base)), kind_(kind) {}

Vec OperatorBox::do_apply(const Vec& v) const {
    switch (kind_) {
        case OpKind::T:  // Z1 (A v) - A (Z0 v)
            return vec_sub(F_, cyc_down(base_->apply(v)), base_->apply(shift_down(v)));
        case OpKind::H:  // Z1 (A v) - A (Z0^T v)
            return vec_sub(F_, cyc_down(base_->apply(v)), base_->apply(shift_up(v)));
        case OpKind::TH:  // Y (A v) - A (Y v), Y = Z0 + Z0^T
            return vec_sub(F_, sym_shift(F_, base_->apply(v)), base_->apply(sym_shift(F_, v)));
    }
    throw std::logic_error("bad operator kind");
}

Vec OperatorBox::do_apply_transpose(const Vec& v) const {
    switch (kind_) {
        case OpKind::T:  // (Z1 A - A Z0)^T v = A^T (Z1^T v) - Z0^T (A^T v)
            return vec_sub(F_, base_->apply_transpose(cyc_up(v)), shift_up(base_->apply_transpose(v)));
        case OpKind::H:  // (Z1 A - A Z0^T)^T v = A^T (Z1^T v) - Z0 (A^T v)
            return vec_sub(F_, base_->apply_transpose(cyc_up(v)), shift_down(base_->apply_transpose(v)));
        case OpKind::TH:  // A^T (Y v) - Y (A^T v)
            return vec_sub(F_, base_->apply_transpose(sym_shift(F_, v)), sym_shift(F_, base_->apply_transpose(v)));
    }
    throw std::logic_error("bad operator kind");
}

BBPtr add_low_rank(BBPtr base, Dense V, Dense U) {
    return std::make_shared<PlusLowRankBox>(std::move(base), std::move(V), std::move(U));
}

BBPtr operator_matrix(BBPtr base, OpKind kind) {
    return std::make_shared<OperatorBox>(std::move(base), kind);
}

bool freivalds_check(const BlackBox& a, const BlackBox& b, unsigned reps, Rng& rng) {
    if (a.dim() != b.dim()) throw DimensionMismatch();
    const Field& F = a.field();
    for (unsigned t = 0; t < reps; ++t) {
        Vec x = rng.vector(F, a.dim());
        if (a.apply(x) != b.apply(x)) return false;
    }
    return true;
}

Dense materialize(const BlackBox& bb) {
    std::size_t n = bb.dim();
    Dense m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        Vec col = bb.apply(e);
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

}  // namespace bbx
