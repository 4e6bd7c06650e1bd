/**
 * @file dense.hpp
 * @brief Small dense matrices and vectors used by certificates and the
 *        ground-truth routines.  Row-major, Scalar entries.
 */
#ifndef BBX_DENSE_HPP
#define BBX_DENSE_HPP

#include <cstddef>
#include <vector>

#include "bbx/field.hpp"

namespace bbx {

using Vec = std::vector<Scalar>;

struct Dense {
    std::size_t rows = 0, cols = 0;
    std::vector<Scalar> a;  // row-major

    Dense() = default;
    Dense(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Scalar at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static Dense identity(std::size_t n) {
        Dense m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool operator==(const Dense& o) const = default;
};

Vec dense_apply(const Field& F, const Dense& m, const Vec& v);
Vec dense_apply_transpose(const Field& F, const Dense& m, const Vec& v);
Dense dense_mul(const Field& F, const Dense& x, const Dense& y);
Dense dense_add(const Field& F, const Dense& x, const Dense& y);
Dense dense_sub(const Field& F, const Dense& x, const Dense& y);
Dense dense_transpose(const Dense& m);

Vec vec_add(const Field& F, const Vec& x, const Vec& y);
Vec vec_sub(const Field& F, const Vec& x, const Vec& y);
Vec vec_scale(const Field& F, const Vec& x, Scalar c);
Scalar vec_dot(const Field& F, const Vec& x, const Vec& y);
bool vec_is_zero(const Vec& x);

}  // namespace bbx

#endif
