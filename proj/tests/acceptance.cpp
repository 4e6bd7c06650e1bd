// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "bbx/displacement.hpp"
#include "bbx/io.hpp"
#include "bbx/oracle.hpp"

using namespace bbx;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Dense random_band_storage(const Field& F, std::size_t n, std::size_t k, Rng& rng) {
    Dense bands(n, 2 * k + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < 2 * k + 1; ++d)
            if (i + d >= k && i + d < n + k) bands.at(i, d) = rng.element(F);
    return bands;
}

Dense rank_one_update(const Field& F, const Dense& A, const Vec& v, const Vec& u) {
    Dense M = A;
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j)
            M.at(i, j) = F.add(M.at(i, j), F.mul(v[i], u[j]));
    return M;
}

// -------------------------------------------------------------------------
// 1. Band detection agrees with the dense band-width oracle.
bool criterion1() {
    auto t0 = Clock::now();
    Ratio eps{1, 1024};
    int mismatches = 0, total = 0;
    for (std::uint64_t q : {2ull, 5ull, 101ull}) {
        Field F(q);
        Rng rng(1000 + q);
        for (int t = 0; t < 200; ++t) {
            std::size_t k = 1 + rng.below(4);
            std::size_t n = k + 2 + rng.below(64 - k - 1);  // k+2 <= n <= 64
            Dense m = materialize(BandBox(F, n, k, random_band_storage(F, n, k, rng)));
            if (t % 2 == 1) {
                // plant one entry strictly outside the width-k band
                std::size_t i, j;
                do {
                    i = rng.below(n);
                    j = rng.below(n);
                } while ((i > j ? i - j : j - i) <= k);
                m.at(i, j) = rng.nonzero(F);
            }
            bool truth = dense_band_width(m) <= k;
            DenseBox bb(F, m);
            bool detected = detect_band(bb, k, eps, rng).ok();
            if (detected != truth) ++mismatches;
            ++total;
        }
    }
    double el = seconds_since(t0);
    bool ok = mismatches <= 2 && el < 30.0;
    std::printf("%s criterion-1 band-oracle-equivalence mismatches=%d/%d time=%.1fs\n",
                ok ? "PASS" : "FAIL", mismatches, total, el);
    return ok;
}

// -------------------------------------------------------------------------
// 2. Rank / displacement rank vs the dense oracle: never overestimates,
//    misses rare at amplified settings, <= eps at single-pass settings.
bool criterion2() {
    auto t0 = Clock::now();
    Field F(5);
    Rng rng(2024);
    int over = 0, miss_amplified = 0, miss_single = 0, total = 0;
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 4 + rng.below(13);  // 4..16
        std::size_t truth, got_a, got_s;
        if (t % 2 == 0) {
            std::size_t r = rng.below(5);
            Dense U(r, n), V(n, r);
            for (auto& x : U.a) x = rng.element(F);
            for (auto& x : V.a) x = rng.element(F);
            BBPtr bb = add_low_rank(std::make_shared<SparseBox>(F, n, std::vector<Triple>{}),
                                    V, U);
            truth = dense_rank(F, materialize(*bb));
            got_a = detect_low_rank(*bb, n, {1, 1024}, rng).cert->r;
            got_s = detect_low_rank(*bb, n, {1, 4}, rng).cert->r;
        } else {
            std::vector<Scalar> d(2 * n - 1);
            for (auto& x : d) x = rng.element(F);
            Dense m(n, n);
            bool hank = t % 4 == 1;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m.at(i, j) = hank ? d[i + j] : d[n - 1 + i - j];
            OpKind kind = hank ? OpKind::H : OpKind::T;
            auto bb = std::make_shared<DenseBox>(F, m);
            truth = dense_displacement_rank(F, m, kind);
            got_a = detect_displacement(bb, kind, n, {1, 1024}, rng).cert->inner.r;
            got_s = detect_displacement(bb, kind, n, {1, 4}, rng).cert->inner.r;
        }
        if (got_a > truth || got_s > truth) ++over;
        if (got_a != truth) ++miss_amplified;
        if (got_s != truth) ++miss_single;
        ++total;
    }
    double el = seconds_since(t0);
    // single-pass: eps = 1/4, allow mean + 3 sigma; amplified: eps = 2^-10
    bool ok = over == 0 && miss_amplified <= 2 && miss_single <= 50 + 27;
    std::printf("%s criterion-2 rank-oracle-equivalence overestimates=%d misses(amplified)=%d "
                "misses(single-pass)=%d/%d time=%.1fs\n",
                ok ? "PASS" : "FAIL", over, miss_amplified, miss_single, total, el);
    return ok;
}

// -------------------------------------------------------------------------
// 3. Exhaustive rank-of-update count: A = e1 e1^T over GF(2), n = 3.
bool criterion3() {
    auto t0 = Clock::now();
    Field F(2);
    Dense A(3, 3);
    A.at(0, 0) = 1;
    int count = 0;
    for (unsigned um = 0; um < 8; ++um)
        for (unsigned vm = 0; vm < 8; ++vm) {
            Vec u{um & 1u, (um >> 1) & 1u, (um >> 2) & 1u};
            Vec v{vm & 1u, (vm >> 1) & 1u, (vm >> 2) & 1u};
            if (dense_rank(F, rank_one_update(F, A, v, u)) == 2) ++count;
        }
    double el = seconds_since(t0);
    bool ok = count == 36 && el < 1.0;
    std::printf("%s criterion-3 exhaustive-rank-update count=%d/64 (expect 36) time=%.2fs\n",
                ok ? "PASS" : "FAIL", count, el);
    return ok;
}

// -------------------------------------------------------------------------
// 4. Preconditioner success probability lower bounds, one-sided binomial
//    tests at 99% confidence (normal approximation, z = 2.326).
bool criterion4() {
    auto t0 = Clock::now();
    const int N = 10000;
    Field F(2);

    // (a) exactly one nontrivial nilpotent block: diag(J2, I4), k = 1
    Dense A(6, 6);
    A.at(0, 1) = 1;
    for (int i = 2; i < 6; ++i) A.at(i, i) = 1;
    Rng rng(4001);
    int succ_a = 0;
    for (int t = 0; t < N; ++t) {
        Poly f = dense_minpoly(F, rank_one_update(F, A, rng.vector(F, 6), rng.vector(F, 6)));
        if (!(f.size() > 2 && f[0] == 0 && f[1] == 0)) ++succ_a;  // z^2 does not divide
    }
    double p_a = 1.0 / 24;
    double thr_a = p_a - 2.326 * std::sqrt(p_a * (1 - p_a) / N);
    bool ok_a = (double)succ_a / N >= thr_a;

    // (b) one invariant factor divisible by z+1: diag(1, 0^5), k = 1
    Dense B(6, 6);
    B.at(0, 0) = 1;
    Rng rng2(4002);
    int succ_b = 0;
    for (int t = 0; t < N; ++t) {
        Poly f = dense_minpoly(F, rank_one_update(F, B, rng2.vector(F, 6), rng2.vector(F, 6)));
        if (poly_eval(F, f, 1) != 0) ++succ_b;  // (z+1) does not divide
    }
    double p_b = 7.0 / 60;
    double thr_b = p_b - 2.326 * std::sqrt(p_b * (1 - p_b) / N);
    bool ok_b = (double)succ_b / N >= thr_b;

    double el = seconds_since(t0);
    bool ok = ok_a && ok_b && el < 120.0;
    std::printf("%s criterion-4 preconditioner-bounds freq-nilpotent=%.4f (>=%.4f) "
                "freq-invariant=%.4f (>=%.4f) time=%.1fs\n",
                ok ? "PASS" : "FAIL", (double)succ_a / N, thr_a, (double)succ_b / N, thr_b, el);
    return ok;
}

// -------------------------------------------------------------------------
// 5. Exact rational schedule table checks.
bool criterion5() {
    bool ok = true;
    Ratio eps{1, 4};
    for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull}) {
        unsigned s = schedule_params(q, 1, eps).sigma1;
        mpq_class pw = 1, miss = 1 - rho1(q);
        for (unsigned i = 0; i < s; ++i) pw *= miss;
        if (!(pw <= mpq_class(1, 2))) ok = false;
    }
    for (std::uint64_t q : {8ull, 9ull, 11ull, 13ull}) {
        unsigned s = schedule_params(q, 1, eps).sigma1;
        mpq_class pw = 1, miss = 1 - rho1(q);
        for (unsigned i = 0; i < s; ++i) pw *= miss;
        if (!(pw <= mpq_class(1, (unsigned long)q))) ok = false;
    }
    mpq_class half(1, 2);
    if (!(bigF(3, 4) < half && half < bigF(3, 3))) ok = false;
    for (std::uint64_t q : {4ull, 5ull, 7ull})
        if (!(bigF(q, 3) < half && half < bigF(q, 2))) ok = false;
    for (std::uint64_t q : {8ull, 9ull, 11ull})
        if (!(bigF(q, 2) < half)) ok = false;
    std::printf("%s criterion-5 schedule-table-exact\n", ok ? "PASS" : "FAIL");
    return ok;
}

// -------------------------------------------------------------------------
// 6. Protocol completeness: 50 honest seeded runs per protocol, all accept.
BBPtr blocks(const Field& F, std::size_t n, std::size_t jb, std::size_t units) {
    std::vector<Triple> t;
    std::size_t pos = 0;
    for (std::size_t b = 0; b < jb; ++b) {
        t.push_back({pos, pos + 1, 1});
        pos += 2;
    }
    for (std::size_t u = 0; u < units && pos < n; ++u, ++pos)
        t.push_back({pos, pos, (Scalar)(1 + u % (F.q() - 1))});
    return std::make_shared<SparseBox>(F, n, std::move(t));
}

BBPtr companion(const Field& F, std::size_t n, Scalar c0) {
    std::vector<Triple> t;
    for (std::size_t i = 1; i < n; ++i) t.push_back({i, i - 1, 1});
    t.push_back({0, n - 1, c0});
    return std::make_shared<SparseBox>(F, n, std::move(t));
}

bool criterion6() {
    auto t0 = Clock::now();
    Ratio eps{1, 4};
    int accepts = 0, runs = 0;
    for (std::uint64_t q : {2ull, 5ull}) {
        Field F(q);
        // ground truths fixed by the dense oracle
        BBPtr few_nil = blocks(F, 8, 1, 6);
        BBPtr many_nil = blocks(F, 8, 2, 4);
        BBPtr few_inv = companion(F, 6, 1);
        BBPtr many_inv = std::make_shared<DenseBox>(F, Dense::identity(5));
        if (invariant_report(F, materialize(*few_nil)).nilpotent_block_count != 1) return false;
        if (invariant_report(F, materialize(*many_nil)).nilpotent_block_count != 2) return false;
        if (invariant_report(F, materialize(*few_inv)).nontrivial_count != 1) return false;
        if (invariant_report(F, materialize(*many_inv)).nontrivial_count != 5) return false;

        Rng drng(6000 + q);
        NilpotentDecision nd = detect_nilpotent(*few_nil, 1, eps, drng);
        if (!nd.at_most_k) return false;
        InvariantDecision id = detect_invariant(*few_inv, 1, eps, drng);
        if (!id.at_most_k) return false;
        InvariantDecision md = detect_invariant(*many_inv, 1, eps, drng);
        if (md.at_most_k) return false;

        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            accepts += run_few_nilpotent(few_nil, 1, nd.witness->U, nd.witness->V, eps,
                                         seed).accepted();
            accepts += run_many_nilpotent(many_nil, 1, eps, seed).accepted();
            accepts += run_few_invariant(few_inv, 1, *id.witness, eps, seed).accepted();
            accepts += run_many_invariant(many_inv, 1, md.chi, eps, seed).accepted();
            runs += 4;
        }
    }
    double el = seconds_since(t0);
    bool ok = accepts == runs && runs == 200;
    std::printf("%s criterion-6 protocol-completeness accepts=%d/%d time=%.1fs\n",
                ok ? "PASS" : "FAIL", accepts, runs, el);
    return ok;
}

// -------------------------------------------------------------------------
// 7. Protocol soundness: scripted cheaters accepted <= eps = 1/4.
bool criterion7() {
    auto t0 = Clock::now();
    Ratio eps{1, 4};
    const int N = 400;
    const int threshold = N / 4 + 27;  // mean + 3 sigma of Binomial(N, 1/4)
    bool ok = true;

    // attack 1: few-nilpotent with an all-zero commit on diag(J2, J2)
    {
        Field F(2);
        BBPtr A = blocks(F, 4, 2, 0);
        int acc = 0;
        for (std::uint64_t seed = 0; seed < N; ++seed)
            if (run_few_nilpotent(A, 1, Dense(1, 4), Dense(4, 1), eps, seed).accepted()) ++acc;
        if (acc > threshold) ok = false;
        std::printf("  attack false-commit-few-nilpotent: accepted %d/%d (allow <= %d)\n", acc,
                    N, threshold);
    }
    // attack 2: many-nilpotent claim on a matrix with only one block
    {
        Field F(2);
        BBPtr A = blocks(F, 6, 1, 4);
        int acc = 0;
        for (std::uint64_t seed = 0; seed < N; ++seed)
            if (run_many_nilpotent(A, 1, eps, seed, CheatMode::RandomResponses).accepted()) ++acc;
        if (acc > threshold) ok = false;
        std::printf("  attack random-responses-many-nilpotent: accepted %d/%d (allow <= %d)\n",
                    acc, N, threshold);
    }
    // attack 3: few-invariant witness with a proper divisor committed as f_0
    {
        Field F(5);
        BBPtr A = companion(F, 6, 1);
        Rng drng(7003);
        InvariantDecision d = detect_invariant(*A, 1, eps, drng);
        if (!d.at_most_k) return false;
        InvariantWitness w = *d.witness;
        // strip one linear factor from f_0 (find a root by scanning)
        bool stripped = false;
        for (Scalar r = 0; r < 5 && !stripped; ++r)
            if (poly_eval(F, w.f[0], r) == 0) {
                w.f[0] = poly_divmod(F, w.f[0], Poly{F.neg(r), 1}).first;
                stripped = true;
            }
        if (!stripped) return false;  // instance must have a split factor
        auto [phi, gs] = poly_xgcd_list(F, w.f);
        w.g = gs;
        w.phi = phi;
        int acc = 0;
        for (std::uint64_t seed = 0; seed < N; ++seed)
            if (run_few_invariant(A, 1, w, eps, seed).accepted()) ++acc;
        if (acc > threshold) ok = false;
        std::printf("  attack proper-divisor-few-invariant: accepted %d/%d (allow <= %d)\n", acc,
                    N, threshold);
    }
    // attack 4: many-invariant with a wrong chi on the identity
    {
        Field F(5);
        BBPtr A = std::make_shared<DenseBox>(F, Dense::identity(4));
        Poly wrong{3, 1};  // z - 2; the true common factor is z - 1
        int acc = 0;
        for (std::uint64_t seed = 0; seed < N; ++seed)
            if (run_many_invariant(A, 1, wrong, eps, seed, CheatMode::RandomResponses)
                    .accepted())
                ++acc;
        if (acc > threshold) ok = false;
        std::printf("  attack wrong-chi-many-invariant: accepted %d/%d (allow <= %d)\n", acc, N,
                    threshold);
    }
    double el = seconds_since(t0);
    ok = ok && el < 300.0;
    std::printf("%s criterion-7 protocol-soundness time=%.1fs\n", ok ? "PASS" : "FAIL", el);
    return ok;
}

// -------------------------------------------------------------------------
// 8. Cost meters: frozen regression thresholds on n in {16, 32, 64}.
bool criterion8() {
    auto t0 = Clock::now();
    Ratio eps{1, 16};
    const double C_BAND = 21.0;  // verify_band field ops <= C_BAND * n * k
    const double C_RANK = 18.0;  // verify_low_rank field ops <= C_RANK * n * k
    const double C_COMM = 12.0;  // few-invariant comm <= C_COMM * (nk + n log2 n)
    const double GROWTH_SLACK = 0.05;
    bool ok = true;
    double prev_band = 0, prev_rank = 0, prev_comm = 0;

    for (std::size_t n : {16, 32, 64}) {
        Field F(5);
        std::size_t k = 2;
        unsigned reps = reps_for(F.q(), eps);
        Rng rng(8000 + n);

        BandBox bb(F, n, k, random_band_storage(F, n, k, rng));
        bb.reset_counters();
        BandResult br = detect_band(bb, k, eps, rng);
        if (!br.ok() || bb.total_applies() != 2 * k + 1 + reps) ok = false;

        F.reset_ops();
        bb.reset_counters();
        if (!verify_band(bb, *br.cert, eps, rng)) ok = false;
        double band_ratio = (double)F.ops() / (C_BAND * n * k);
        if (band_ratio > 1.0 || bb.total_applies() != reps) ok = false;
        if (prev_band && band_ratio > prev_band + GROWTH_SLACK) ok = false;
        prev_band = band_ratio;

        Dense U(k, n), V(n, k);
        for (auto& x : U.a) x = rng.element(F);
        for (auto& x : V.a) x = rng.element(F);
        BBPtr lr = add_low_rank(std::make_shared<SparseBox>(F, n, std::vector<Triple>{}), V, U);
        RankResult rr = detect_low_rank(*lr, k, eps, rng);
        if (!rr.ok()) return false;
        F.reset_ops();
        lr->reset_counters();
        if (!verify_low_rank(*lr, *rr.cert, eps, rng)) ok = false;
        double rank_ratio = (double)F.ops() / (C_RANK * n * k);
        if (rank_ratio > 1.0 || lr->total_applies() != reps) ok = false;
        if (prev_rank && rank_ratio > prev_rank + GROWTH_SLACK) ok = false;
        prev_rank = rank_ratio;

        BBPtr comp = companion(F, n, 2);
        Rng drng = Rng(8100).derive("inv", n);
        InvariantDecision d = detect_invariant(*comp, 1, eps, drng);
        if (!d.at_most_k) return false;
        Transcript tr = run_few_invariant(comp, 1, *d.witness, eps, 8200 + n);
        if (!tr.accepted()) ok = false;
        double log2n = n == 16 ? 4 : n == 32 ? 5 : 6;
        double comm_ratio = tr.cost().comm_elems / (C_COMM * (n * 1 + n * log2n));
        if (comm_ratio > 1.0) ok = false;
        if (prev_comm && comm_ratio > prev_comm + GROWTH_SLACK) ok = false;
        prev_comm = comm_ratio;

        std::printf("  n=%zu band-ratio=%.3f rank-ratio=%.3f comm-ratio=%.3f\n", n, band_ratio,
                    rank_ratio, comm_ratio);
    }
    double el = seconds_since(t0);
    std::printf("%s criterion-8 cost-meters time=%.1fs\n", ok ? "PASS" : "FAIL", el);
    return ok;
}

// -------------------------------------------------------------------------
// 9. Black-box minimal polynomial equals the dense one.
bool criterion9() {
    auto t0 = Clock::now();
    Ratio eps{1, 1024};
    int failures = 0, total = 0;
    for (std::uint64_t q : {2ull, 3ull, 5ull}) {
        Field F(q);
        Rng rng(9000 + q);
        for (int t = 0; t < 100; ++t) {
            std::size_t n = 2 + rng.below(15);  // 2..16
            Dense m(n, n);
            for (auto& x : m.a) x = rng.element(F);
            DenseBox bb(F, m);
            if (minpoly_matrix(bb, eps, rng).poly != dense_minpoly(F, m)) ++failures;
            ++total;
        }
    }
    double el = seconds_since(t0);
    bool ok = failures <= 2;
    std::printf("%s criterion-9 blackbox-minpoly failures=%d/%d time=%.1fs\n",
                ok ? "PASS" : "FAIL", failures, total, el);
    return ok;
}

}  // namespace

int main() {
    int failed = 0;
    failed += !criterion1();
    failed += !criterion2();
    failed += !criterion3();
    failed += !criterion4();
    failed += !criterion5();
    failed += !criterion6();
    failed += !criterion7();
    failed += !criterion8();
    failed += !criterion9();
    if (failed) std::printf("%d criteria FAILED\n", failed);
    else std::printf("all 9 criteria passed\n");
    return failed == 0 ? 0 : 1;
}
