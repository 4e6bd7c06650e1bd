#include <doctest.h>

#include "bbx/poly.hpp"
#include "bbx/ratio.hpp"
#include "bbx/rng.hpp"

using namespace bbx;

TEST_CASE("prime field arithmetic") {
    Field F(5);
    CHECK(F.q() == 5);
    CHECK(F.add(3, 4) == 2);
    CHECK(F.sub(1, 3) == 3);
    CHECK(F.mul(3, 4) == 2);
    CHECK(F.inv(3) == 2);
    CHECK(F.pow(2, 4) == 1);
    CHECK(F.neg(2) == 3);
    Field F7(7);
    CHECK(F7.inv(4) == 2);
    CHECK_THROWS_AS(F.inv(0), ZeroInverse);
    CHECK_THROWS_AS(Field(4), std::invalid_argument);
    CHECK_THROWS_AS(Field(1), std::invalid_argument);
}

TEST_CASE("primality helper") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(101));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(91));  // 7 * 13
}

TEST_CASE("GF(4) arithmetic and canonical modulus") {
    Field F = Field::extension(2, 2);
    // lexicographically least monic irreducible of degree 2 over GF(2):
    // 1 + z + z^2
    CHECK(F.modulus() == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(F.q() == 4);
    // t * t = t + 1 (packed: t = 2, t + 1 = 3)
    CHECK(F.mul(2, 2) == 3);
    CHECK(F.inv(2) == 3);
    CHECK(F.mul(2, 3) == 1);
    CHECK(F.add(2, 3) == 1);
    for (Scalar a = 1; a < 4; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("GF(9) and GF(8) multiplicative groups") {
    for (auto [p, e] : {std::pair<std::uint64_t, unsigned>{3, 2}, {2, 3}}) {
        Field F = Field::extension(p, e);
        // every nonzero element has order dividing q-1
        for (Scalar a = 1; a < F.q(); ++a) {
            CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.pow(a, F.q() - 1) == 1);
        }
    }
}

TEST_CASE("digit packing round trip") {
    Field F = Field::extension(5, 3);
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        Scalar a = rng.below(F.q());
        CHECK(F.from_digits(F.digits(a)) == a);
    }
}

TEST_CASE("operation counter is shared across field copies") {
    Field F(5);
    Field G = F;  // copy held by a black box, say
    F.reset_ops();
    (void)G.mul(2, 3);
    (void)F.add(1, 1);
    CHECK(F.ops() == 2);
    CHECK(G.ops() == 2);
}

TEST_CASE("polynomial ring basics over GF(5)") {
    Field F(5);
    Poly a{1, 1};  // z + 1
    Poly b{2, 1};  // z + 2
    Poly prod = poly_mul(F, a, b);
    CHECK(prod == Poly{2, 3, 1});
    auto [q, r] = poly_divmod(F, prod, a);
    CHECK(q == b);
    CHECK(poly_is_zero(r));
    CHECK(poly_divides(F, a, prod));
    CHECK_FALSE(poly_divides(F, Poly{3, 1}, prod));
    CHECK(poly_eval(F, prod, 3) == 0);  // z = -2
    CHECK(poly_deg(Poly{}) == -1);
}

TEST_CASE("gcd, lcm and extended gcd") {
    Field F(5);
    Poly f{4, 0, 1};  // z^2 - 1
    Poly g{1, 3, 1};  // (z - 1)^2 = z^2 + 3z + 1 over GF(5)
    CHECK(poly_gcd(F, f, g) == Poly{4, 1});  // z - 1
    Poly l = poly_lcm(F, f, g);
    CHECK(poly_divides(F, f, l));
    CHECK(poly_divides(F, g, l));
    CHECK(poly_deg(l) == 3);

    Rng rng(11);
    for (int t = 0; t < 25; ++t) {
        std::vector<Poly> fs;
        for (int i = 0; i < 3; ++i) {
            Poly p(1 + rng.below(5));
            for (auto& c : p) c = rng.element(F);
            p.push_back(1);  // monic
            fs.push_back(p);
        }
        auto [d, gs] = poly_xgcd_list(F, fs);
        Poly sum;
        for (size_t i = 0; i < fs.size(); ++i) sum = poly_add(F, sum, poly_mul(F, gs[i], fs[i]));
        CHECK(poly_equal(sum, d));
        for (const Poly& p : fs) CHECK(poly_divides(F, d, p));
    }
}

TEST_CASE("squarefree part, including characteristic-p collapse") {
    Field F2(2);
    CHECK(poly_squarefree_part(F2, Poly{1, 0, 1}) == Poly{1, 1});  // z^2+1 = (z+1)^2
    Field F5(5);
    CHECK(poly_squarefree_part(F5, Poly{0, 0, 0, 1}) == Poly{0, 1});  // z^3 -> z
    Field F3(3);
    // z^2 (z + 1) = z^3 + z^2 -> z (z + 1) = z^2 + z
    CHECK(poly_squarefree_part(F3, Poly{0, 0, 1, 1}) == Poly{0, 1, 1});
    // (z^3 + z)^3 over GF(3): derivative vanishes, p-th root recursion
    Poly cube{0, 1, 0, 1};  // z^3 + z... build (z^3+z)^3
    Poly f = poly_mul(F3, poly_mul(F3, cube, cube), cube);
    Poly s = poly_squarefree_part(F3, f);
    CHECK(poly_divides(F3, s, f));
    CHECK(poly_divides(F3, Poly{0, 1}, s));
    CHECK(poly_deg(s) == 3);  // z(z+1)(z-1) = z^3 - z distinct roots
}

TEST_CASE("deterministic rng and derived streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
    Rng c(42);
    Rng d1 = c.derive("prover", 0), d2 = c.derive("verifier", 0), d3 = c.derive("prover", 1);
    CHECK(d1.next() != d2.next());
    CHECK(c.derive("prover", 0).next() != d3.next());
    // derive does not advance the parent
    Rng e(42);
    (void)e.derive("x", 0);
    Rng f(42);
    CHECK(e.next() == f.next());
    Field F(7);
    Rng g(5);
    for (int i = 0; i < 100; ++i) {
        CHECK(g.below(13) < 13);
        CHECK(g.element(F) < 7);
        CHECK(g.nonzero(F) != 0);
    }
}

TEST_CASE("repetition counts from exact tolerances") {
    CHECK(reps_for(2, {1, 4}) == 2);
    CHECK(reps_for(5, {1, 1024}) == 5);  // 5^4 = 625 < 1024 <= 3125
    CHECK(reps_for(2, {1, 2}) == 1);
    CHECK(reps_for(101, {1, 2}) == 1);
    CHECK_THROWS_AS(reps_for(2, {0, 4}), InvalidEpsilon);
    CHECK_THROWS_AS(reps_for(2, {4, 4}), InvalidEpsilon);
}
