/**
 * @file blackbox.hpp
 * @brief The opaque matrix abstraction: an n x n matrix exposing only
 *        v -> Av and v -> A^T v, with application counting.
 *
 * Concrete backends: dense, sparse triples, band storage, base-plus-low-rank,
 * and the implicit alpha-circulant shift Z_alpha.  Wrappers (PlusLowRank,
 * OperatorMatrix) hold their base by shared_ptr, so base counters keep
 * accumulating through compositions.
 */
#ifndef BBX_BLACKBOX_HPP
#define BBX_BLACKBOX_HPP

#include <memory>
#include <tuple>

#include "bbx/dense.hpp"
#include "bbx/rng.hpp"

namespace bbx {

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch() : std::invalid_argument("vector or matrix dimension mismatch") {}
};

class BlackBox {
public:
    BlackBox(Field F, std::size_t n) : F_(std::move(F)), n_(n) {}
    virtual ~BlackBox() = default;

    const Field& field() const { return F_; }
    std::size_t dim() const { return n_; }

    Vec apply(const Vec& v) const {
        if (v.size() != n_) throw DimensionMismatch();
        ++applies_;
        return do_apply(v);
    }
    Vec apply_transpose(const Vec& v) const {
        if (v.size() != n_) throw DimensionMismatch();
        ++transpose_applies_;
        return do_apply_transpose(v);
    }

    std::uint64_t applies() const { return applies_; }
    std::uint64_t transpose_applies() const { return transpose_applies_; }
    std::uint64_t total_applies() const { return applies_ + transpose_applies_; }
    void reset_counters() const { applies_ = transpose_applies_ = 0; }

protected:
    virtual Vec do_apply(const Vec& v) const = 0;
    virtual Vec do_apply_transpose(const Vec& v) const = 0;

    Field F_;
    std::size_t n_;

private:
    mutable std::uint64_t applies_ = 0;
    mutable std::uint64_t transpose_applies_ = 0;
};

using BBPtr = std::shared_ptr<const BlackBox>;

class DenseBox final : public BlackBox {
public:
    DenseBox(Field F, Dense m);
    const Dense& matrix() const { return m_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    Dense m_;
};

struct Triple {
    std::size_t i, j;  // 0-based
    Scalar val;
};

class SparseBox final : public BlackBox {
public:
    SparseBox(Field F, std::size_t n, std::vector<Triple> entries);
    const std::vector<Triple>& entries() const { return entries_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    std::vector<Triple> entries_;
};

/// Band matrix held as an n x (2k+1) array; row i stores a_{i,i-k..i+k},
/// out-of-range positions zero.
class BandBox final : public BlackBox {
public:
    BandBox(Field F, std::size_t n, std::size_t k, Dense bands);
    std::size_t bandwidth() const { return k_; }
    const Dense& bands() const { return bands_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    std::size_t k_;
    Dense bands_;  // n x (2k+1)
};

/// A + V*U with V: n x k, U: k x n.  One apply costs one base application
/// plus the rank-k correction.
class PlusLowRankBox final : public BlackBox {
public:
    PlusLowRankBox(BBPtr base, Dense V, Dense U);
    const BBPtr& base() const { return base_; }
    const Dense& V() const { return V_; }
    const Dense& U() const { return U_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    BBPtr base_;
    Dense V_, U_;
};

/// The alpha-circulant Z_alpha: unit subdiagonal, alpha in the top-right
/// corner.  No storage.
class ShiftBox final : public BlackBox {
public:
    ShiftBox(Field F, std::size_t n, Scalar alpha) : BlackBox(std::move(F), n), alpha_(alpha) {}
    Scalar alpha() const { return alpha_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    Scalar alpha_;
};

enum class OpKind { T, H, TH };

/// Displacement operator image as a black box:
///   T:  Z1*A - A*Z0      H:  Z1*A - A*Z0^T     TH: (Z0+Z0^T)*A - A*(Z0+Z0^T)
/// Each apply (and each transpose apply) costs exactly 2 base applications.
class OperatorBox final : public BlackBox {
public:
    OperatorBox(BBPtr base, OpKind kind);
    OpKind kind() const { return kind_; }
    const BBPtr& base() const { return base_; }

protected:
    Vec do_apply(const Vec& v) const override;
    Vec do_apply_transpose(const Vec& v) const override;

private:
    BBPtr base_;
    OpKind kind_;
};

BBPtr add_low_rank(BBPtr base, Dense V, Dense U);
BBPtr operator_matrix(BBPtr base, OpKind kind);

/// Probabilistic equality check: compares A*x and B*x for `reps` independent
/// uniform x.  If A != B, accepts with probability <= q^(-reps).
bool freivalds_check(const BlackBox& a, const BlackBox& b, unsigned reps, Rng& rng);

/// Materializes a black box by applying it to the n basis vectors.
Dense materialize(const BlackBox& bb);

}  // namespace bbx

#endif
