#include "bbx/params.hpp"

namespace bbx {
namespace {

mpz_class zpow(std::uint64_t q, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), q, e);
    return r;
}

mpq_class qpow(const mpq_class& b, unsigned e) {
    mpq_class r = 1;
    for (unsigned i = 0; i < e; ++i) r *= b;
    return r;
}

mpq_class as_mpq(const Ratio& r) { return mpq_class((unsigned long)r.num, (unsigned long)r.den); }

}  // namespace

mpq_class rho1(std::uint64_t q) {
    mpz_class Q((unsigned long)q);
    mpq_class r((Q * Q - 2) * (Q * Q - Q - 1) * (Q - 1), Q * Q * Q * Q * (Q + 1));
    r.canonicalize();
    return r;
}

mpq_class rho2(std::uint64_t q, unsigned d) {
    mpz_class qd = zpow(q, d);
    mpz_class q2d = qd * qd, q3d = q2d * qd, q4d = q2d * q2d;
    mpq_class r((q4d - 2) * (q2d - qd - 1), q3d * (q3d + q2d + qd + 1));
    r.canonicalize();
    return r;
}

mpq_class bigF(std::uint64_t q, unsigned c) {
    mpq_class g1 = mpq_class((unsigned long)(q - 1)) * qpow(1 - rho2(q, 1), c);
    mpq_class g2 = mpq_class(zpow(q, 2), 2) * qpow(1 - rho2(q, 2), c);
    mpq_class g3 = mpq_class(zpow(q, 3), 3) * qpow(1 - rho2(q, 3), c);
    // 2^{c-2} q^{3(1-c)} / (q^{c-1} - 1)
    mpq_class g4 = mpq_class(zpow(2, c - 2), zpow(q, 3 * (c - 1)) * (zpow(q, c - 1) - 1));
    g2.canonicalize();
    g3.canonicalize();
    g4.canonicalize();
    return g1 + g2 + g3 + g4;
}

unsigned ceil_log(const mpq_class& base, const mpq_class& target, unsigned minimum) {
    if (base <= 1) throw std::invalid_argument("logarithm base must exceed 1");
    unsigned t = 0;
    mpq_class acc = 1;
    while (acc < target) {
        acc *= base;
        ++t;
    }
    return std::max(t, minimum);
}

ProtocolParams schedule_params(std::uint64_t q, std::size_t k, const Ratio& eps) {
    check_epsilon(eps);
    if (q < 2) throw std::invalid_argument("field size must be at least 2");
    ProtocolParams p;
    p.q = q;
    p.k = k;
    p.eps = eps;

    switch (q) {
        case 2: p.sigma1 = 17; break;
        case 3: p.sigma1 = 3; break;
        case 4:
        case 5: p.sigma1 = 2; break;
        case 7: p.sigma1 = 1; break;
        default: p.sigma1 = 2; break;  // q >= 8
    }

    mpq_class e = as_mpq(eps);
    mpq_class inv_e = 1 / e;
    mpq_class Q((unsigned long)q);

    if (q <= 7)
        p.tau = ceil_log(2, 2 * inv_e) * p.sigma1;
    else
        p.tau = ceil_log(Q, 2 * inv_e) * p.sigma1;

    mpq_class lbase = q == 2 ? mpq_class(4, 3) : Q / 2;
    p.lambda = ceil_log(lbase, 2 * (long)p.tau * inv_e);

    p.gamma = ceil_log(Q, inv_e);
    p.c = q <= 3 ? 4 : (q <= 7 ? 3 : 2);

    if (q == 2) {
        p.sigma2_1 = 6;
        p.tau2_1 = ceil_log(2, 12 * inv_e) * p.sigma2_1;
        p.lambda2_1 = ceil_log(mpq_class(4, 3), 12 * (long)p.tau2_1 * inv_e);
        p.tau2_2 = ceil_log(2, 12 * inv_e);
        p.lambda2_2 = ceil_log(mpq_class(16, 7), 12 * (long)p.tau2_2 * inv_e);
        p.tau_deg3 = 2 * ceil_log(4, 12 * inv_e);
    }

    // tau3 is self-referential: take the least t with base^t >= 2(c+1) t / e,
    // base = (2/q - 1/q^2)^{-1} = q^2 / (2q - 1).
    {
        mpq_class base = Q * Q / (2 * Q - 1);
        unsigned t = 1;
        while (qpow(base, t) < 2 * (long)(p.c + 1) * (long)t * inv_e) ++t;
        p.tau3 = t;
    }

    p.tau_tilde = ceil_log(1 / (1 - rho2(q, 1)), 2 * inv_e);
    p.freivalds_reps = reps_for(q, eps);
    return p;
}

}  // namespace bbx
