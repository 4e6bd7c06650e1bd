#include <doctest.h>

#include "bbx/krylov.hpp"
#include "bbx/oracle.hpp"

using namespace bbx;

namespace {

Dense random_matrix(const Field& F, std::size_t n, Rng& rng) {
    Dense m(n, n);
    for (auto& x : m.a) x = rng.element(F);
    return m;
}

}  // namespace

TEST_CASE("dense backend applies") {
    Field F(5);
    Dense m(2, 2);
    m.at(0, 0) = 1; m.at(0, 1) = 2;
    m.at(1, 0) = 3; m.at(1, 1) = 4;
    DenseBox bb(F, m);
    CHECK(bb.apply({1, 0}) == Vec{1, 3});
    CHECK(bb.apply_transpose({1, 0}) == Vec{1, 2});
    CHECK(bb.total_applies() == 2);
    bb.reset_counters();
    CHECK(bb.total_applies() == 0);
    CHECK_THROWS_AS(bb.apply({1, 0, 0}), DimensionMismatch);
}

TEST_CASE("sparse backend matches its dense materialization") {
    Field F(7);
    SparseBox bb(F, 3, {{0, 1, 3}, {2, 0, 5}, {2, 1, 1}});
    CHECK(bb.apply({0, 1, 0}) == Vec{3, 0, 1});
    Dense m = materialize(bb);
    CHECK(m.at(0, 1) == 3);
    CHECK(m.at(2, 0) == 5);
    DenseBox dd(F, m);
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        Vec v = rng.vector(F, 3);
        CHECK(bb.apply(v) == dd.apply(v));
        CHECK(bb.apply_transpose(v) == dd.apply_transpose(v));
    }
}

TEST_CASE("band backend equals the equivalent dense matrix") {
    Field F(5);
    std::size_t n = 6, k = 1;
    Rng rng(9);
    Dense bands(n, 2 * k + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < 2 * k + 1; ++d)
            if (i + d >= k && i + d < n + k) bands.at(i, d) = rng.element(F);
    BandBox bb(F, n, k, bands);
    Dense m = materialize(bb);
    CHECK(dense_band_width(m) <= k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j + k >= i && j <= i + k) CHECK(m.at(i, j) == bands.at(i, j + k - i));
    DenseBox dd(F, m);
    for (int t = 0; t < 5; ++t) {
        Vec v = rng.vector(F, n);
        CHECK(bb.apply(v) == dd.apply(v));
        CHECK(bb.apply_transpose(v) == dd.apply_transpose(v));
    }
}

TEST_CASE("alpha-circulant shift") {
    Field F(5);
    ShiftBox z0(F, 4, 0);
    CHECK(z0.apply({1, 0, 0, 0}) == Vec{0, 1, 0, 0});
    CHECK(z0.apply({0, 0, 0, 1}) == Vec{0, 0, 0, 0});
    CHECK(z0.apply_transpose({0, 1, 0, 0}) == Vec{1, 0, 0, 0});
    ShiftBox z1(F, 4, 1);
    CHECK(z1.apply({0, 0, 0, 1}) == Vec{1, 0, 0, 0});
    ShiftBox za(F, 4, 3);
    CHECK(za.apply({0, 0, 0, 2}) == Vec{1, 0, 0, 0});  // 3 * 2 = 1 mod 5
}

TEST_CASE("low-rank wrapper adds V*U and shares the base counter") {
    Field F(5);
    Rng rng(17);
    std::size_t n = 5, k = 2;
    auto base = std::make_shared<DenseBox>(F, random_matrix(F, n, rng));
    Dense V(n, k), U(k, n);
    for (auto& x : V.a) x = rng.element(F);
    for (auto& x : U.a) x = rng.element(F);
    BBPtr wrapped = add_low_rank(base, V, U);
    Dense expected = dense_add(F, materialize(*base), dense_mul(F, V, U));
    base->reset_counters();
    Dense got = materialize(*wrapped);
    CHECK(got == expected);
    CHECK(base->total_applies() == n);  // one base apply per wrapper apply
    DenseBox dd(F, expected);
    Vec v = rng.vector(F, n);
    CHECK(wrapped->apply_transpose(v) == dd.apply_transpose(v));
}

TEST_CASE("displacement operator boxes match their dense definitions") {
    Field F(7);
    Rng rng(23);
    std::size_t n = 6;
    Dense A = random_matrix(F, n, rng);
    auto base = std::make_shared<DenseBox>(F, A);
    Dense Z0 = materialize(ShiftBox(F, n, 0));
    Dense Z1 = materialize(ShiftBox(F, n, 1));
    Dense Y = dense_add(F, Z0, dense_transpose(Z0));  // Z0 + Z0^T

    for (OpKind kind : {OpKind::T, OpKind::H, OpKind::TH}) {
        BBPtr op = operator_matrix(base, kind);
        Dense want;
        if (kind == OpKind::T)
            want = dense_sub(F, dense_mul(F, Z1, A), dense_mul(F, A, Z0));
        else if (kind == OpKind::H)
            want = dense_sub(F, dense_mul(F, Z1, A), dense_mul(F, A, dense_transpose(Z0)));
        else
            want = dense_sub(F, dense_mul(F, Y, A), dense_mul(F, A, Y));
        CHECK(materialize(*op) == want);
        DenseBox dd(F, want);
        Vec v = rng.vector(F, n);
        base->reset_counters();
        Vec w = op->apply(v);
        CHECK(base->total_applies() == 2);  // exactly two base applications
        CHECK(w == dd.apply(v));
        CHECK(op->apply_transpose(v) == dd.apply_transpose(v));
    }
}

TEST_CASE("Freivalds comparison") {
    Field F(5);
    Rng rng(31);
    Dense A = random_matrix(F, 6, rng);
    DenseBox a(F, A), same(F, A);
    CHECK(freivalds_check(a, same, 3, rng));
    Dense B = A;
    B.at(2, 3) = F.add(B.at(2, 3), 1);
    DenseBox diff(F, B);
    int accepted = 0;
    for (int t = 0; t < 50; ++t)
        if (freivalds_check(a, diff, 1, rng)) ++accepted;
    CHECK(accepted < 30);  // per-trial error <= 1/5
}

TEST_CASE("dense ground truth: rank") {
    Field F(5);
    CHECK(dense_rank(F, Dense::identity(4)) == 4);
    CHECK(dense_rank(F, Dense(3, 3)) == 0);
    Dense outer(3, 3);
    Vec v{1, 2, 3}, u{4, 0, 1};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) outer.at(i, j) = F.mul(v[i], u[j]);
    CHECK(dense_rank(F, outer) == 1);
}

TEST_CASE("dense ground truth: minimal polynomial") {
    Field F(5);
    CHECK(dense_minpoly(F, Dense::identity(3)) == Poly{4, 1});  // z - 1
    Dense J3(3, 3);
    J3.at(0, 1) = 1;
    J3.at(1, 2) = 1;
    CHECK(dense_minpoly(F, J3) == Poly{0, 0, 0, 1});  // z^3

    // companion(f) has minimal polynomial f
    Rng rng(41);
    for (std::uint64_t q : {2ull, 5ull, 101ull}) {
        Field Fq(q);
        for (int t = 0; t < 20; ++t) {
            std::size_t d = 1 + rng.below(8);
            Poly f(d);
            for (auto& c : f) c = rng.element(Fq);
            f.push_back(1);
            Dense C(d, d);
            for (std::size_t i = 1; i < d; ++i) C.at(i, i - 1) = 1;
            for (std::size_t i = 0; i < d; ++i) C.at(i, d - 1) = Fq.neg(f[i]);
            CHECK(dense_minpoly(Fq, C) == f);
        }
    }
}

TEST_CASE("dense ground truth: invariant factors") {
    Field F2(2);
    InvariantReport zero = invariant_report(F2, Dense(3, 3));
    CHECK(zero.factors[0] == Poly{0, 1});
    CHECK(zero.factors[1] == Poly{0, 1});
    CHECK(zero.factors[2] == Poly{0, 1});
    CHECK(zero.nontrivial_count == 0);  // z is trivial by definition
    CHECK(zero.nilpotent_block_count == 0);
    CHECK(zero.rank == 0);

    InvariantReport eye = invariant_report(F2, Dense::identity(3));
    CHECK(eye.factors[0] == Poly{1, 1});
    CHECK(eye.factors[2] == Poly{1, 1});
    CHECK(eye.nontrivial_count == 3);
    CHECK(eye.rank == 3);
    CHECK(eye.minpoly == Poly{1, 1});

    Dense jj(4, 4);  // diag(J2, J2)
    jj.at(0, 1) = 1;
    jj.at(2, 3) = 1;
    InvariantReport rep = invariant_report(F2, jj);
    CHECK(rep.factors[0] == Poly{0, 0, 1});
    CHECK(rep.factors[1] == Poly{0, 0, 1});
    CHECK(rep.nilpotent_block_count == 2);
    CHECK(rep.rank == 2);

    // cross-validation on random matrices
    Rng rng(51);
    for (std::uint64_t q : {2ull, 5ull}) {
        Field F(q);
        for (int t = 0; t < 15; ++t) {
            std::size_t n = 2 + rng.below(6);
            Dense m = random_matrix(F, n, rng);
            InvariantReport r = invariant_report(F, m);
            CHECK(r.minpoly == dense_minpoly(F, m));
            CHECK(r.rank == dense_rank(F, m));
            std::size_t degsum = 0;
            for (std::size_t i = 0; i < r.factors.size(); ++i) {
                degsum += std::max(0, poly_deg(r.factors[i]));
                if (i + 1 < r.factors.size())
                    CHECK(poly_divides(F, r.factors[i + 1], r.factors[i]));
            }
            CHECK(degsum == n);
        }
    }
}

TEST_CASE("dense ground truth: band width and displacement rank") {
    CHECK(dense_band_width(Dense::identity(5)) == 0);
    Field F(5);
    Dense tri(4, 4);
    for (int i = 0; i < 4; ++i) {
        tri.at(i, i) = 2;
        if (i) tri.at(i, i - 1) = 1, tri.at(i - 1, i) = 3;
    }
    CHECK(dense_band_width(tri) == 1);
    Rng rng(61);
    Dense full(4, 4);
    for (auto& x : full.a) x = 1 + rng.below(4);
    CHECK(dense_band_width(full) == 3);

    CHECK(dense_displacement_rank(F, Dense::identity(6), OpKind::T) == 1);
    std::vector<Scalar> diag(11);
    for (auto& x : diag) x = rng.element(F);
    Dense toe(6, 6), han(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            toe.at(i, j) = diag[5 + i - j];
            han.at(i, j) = diag[i + j];
        }
    CHECK(dense_displacement_rank(F, toe, OpKind::T) <= 2);
    CHECK(dense_displacement_rank(F, han, OpKind::H) <= 2);
}

TEST_CASE("dense solver") {
    Field F(7);
    Rng rng(71);
    for (int t = 0; t < 20; ++t) {
        std::size_t n = 2 + rng.below(5);
        Dense m = random_matrix(F, n, rng);
        Vec x0 = rng.vector(F, n);
        Vec b = dense_apply(F, m, x0);
        auto x = dense_solve(F, m, b);
        REQUIRE(x.has_value());
        CHECK(dense_apply(F, m, *x) == b);
    }
    CHECK_FALSE(dense_solve(F, Dense(3, 3), Vec{1, 0, 0}).has_value());
}

TEST_CASE("Berlekamp-Massey") {
    Field F(7);
    std::vector<Scalar> fib{1, 1, 2, 3, 5, 1, 6, 0, 6, 6};
    CHECK(berlekamp_massey(F, fib) == Poly{6, 6, 1});  // z^2 - z - 1
    CHECK(berlekamp_massey(F, {3, 3, 3, 3}) == Poly{6, 1});  // z - 1
    CHECK(berlekamp_massey(F, {0, 0, 0, 0}) == Poly{1});
}

TEST_CASE("sequence and matrix-vector minimal polynomials") {
    Field F(5);
    DenseBox I(F, Dense::identity(4));
    Vec e1{1, 0, 0, 0};
    CHECK(minpoly_sequence(I, e1, e1) == Poly{4, 1});
    Rng rng(81);
    Dense J(4, 4);
    J.at(0, 1) = 1;
    J.at(1, 2) = 1;  // J3 + zero row
    DenseBox bb(F, J);
    Vec v{0, 0, 1, 0};
    MinPolyEstimate est = minpoly_matrix_vector(bb, v, 4, rng);
    CHECK(est.poly == Poly{0, 0, 0, 1});  // z^3
    CHECK(minpoly_matrix_vector(bb, Vec(4, 0), 4, rng).poly == Poly{1});
}

TEST_CASE("matrix minimal polynomial with extension lifting") {
    Rng rng(91);
    for (std::uint64_t q : {2ull, 3ull}) {
        Field F(q);
        for (int t = 0; t < 10; ++t) {
            std::size_t n = 2 + rng.below(7);
            Dense m(n, n);
            for (auto& x : m.a) x = rng.element(F);
            DenseBox bb(F, m);
            MinPolyEstimate est = minpoly_matrix(bb, {1, 1024}, rng);
            CHECK(est.poly == dense_minpoly(F, m));
        }
    }
}

TEST_CASE("Horner application and consistent solving") {
    Field F(5);
    Rng rng(101);
    Dense m(4, 4);
    for (auto& x : m.a) x = rng.element(F);
    DenseBox bb(F, m);
    Vec v = rng.vector(F, 4);
    // f(B)v for f = z^2 + 2z + 3
    Poly f{3, 2, 1};
    Vec want = bb.apply(bb.apply(v));
    want = vec_add(F, want, vec_scale(F, bb.apply(v), 2));
    want = vec_add(F, want, vec_scale(F, v, 3));
    CHECK(apply_poly(bb, f, v) == want);

    for (int t = 0; t < 10; ++t) {
        Vec x0 = rng.vector(F, 4);
        Vec b = bb.apply(x0);
        auto x = solve_consistent(bb, b, {1, 64}, rng);
        REQUIRE(x.has_value());
        CHECK(bb.apply(*x) == b);
    }
    DenseBox zero(F, Dense(4, 4));
    CHECK_FALSE(solve_consistent(zero, Vec{1, 0, 0, 0}, {1, 64}, rng).has_value());
}
