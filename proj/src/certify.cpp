#include "bbx/certify.hpp"

#include <algorithm>

namespace bbx {
namespace {

// Non-owning view of a black box as a BBPtr, for composing wrappers around
// a reference the caller keeps alive.
BBPtr borrow(const BlackBox& bb) { return BBPtr(std::shared_ptr<void>(), &bb); }

Ratio eps_div(const Ratio& e, std::uint64_t m) {
    Ratio r = e;
    if (m == 0) m = 1;
    if (r.den > UINT64_MAX / m) {
        r.num = 1;
        r.den = UINT64_MAX;
    } else {
        r.den *= m;
    }
    return r;
}

Dense random_dense(const Field& F, std::size_t rows, std::size_t cols, Rng& rng) {
    Dense m(rows, cols);
    for (auto& x : m.a) x = rng.element(F);
    return m;
}

class SquaredBox final : public BlackBox {
public:
    explicit SquaredBox(BBPtr base) : BlackBox(base->field(), base->dim()), base_(std::move(base)) {}

protected:
    Vec do_apply(const Vec& v) const override { return base_->apply(base_->apply(v)); }
    Vec do_apply_transpose(const Vec& v) const override {
        return base_->apply_transpose(base_->apply_transpose(v));
    }

private:
    BBPtr base_;
};

Poly poly_div_exact(const Field& F, const Poly& a, const Poly& b) {
    auto [q, r] = poly_divmod(F, a, b);
    if (!poly_is_zero(r)) throw std::logic_error("expected exact polynomial division");
    return q;
}

// ---- payload token helpers --------------------------------------------

void push_u64(std::vector<std::string>& out, std::uint64_t v) { out.push_back(std::to_string(v)); }

void push_vec(std::vector<std::string>& out, const Vec& v) {
    for (Scalar x : v) push_u64(out, x);
}

void push_dense(std::vector<std::string>& out, const Dense& m) {
    for (Scalar x : m.a) push_u64(out, x);
}

void push_poly(std::vector<std::string>& out, const Poly& p) {
    out.push_back("poly");
    out.push_back(std::to_string(poly_deg(p)));
    for (Scalar c : p) push_u64(out, c);
}

// ---- detection ---------------------------------------------------------

struct Survivor {
    Dense U, V;
    Poly f;
};

// Draws up to `tau` preconditioner pairs.  A pair is eliminated as soon as
// one of `lam` Krylov-sequence minimal polynomials is divisible by h (which
// proves h | minpoly(A + VU), since sequence minimal polynomials divide the
// matrix one).  The first pair surviving all lam sequences, whose fully
// computed minimal polynomial is still not divisible by h, is returned;
// nullopt means every pair was eliminated, i.e. h divides phi_{k+1} with
// high probability.
std::optional<Survivor> stage_survivor(const BlackBox& bbA, std::size_t k, const Poly& h,
                                       unsigned tau, unsigned lam, const Ratio& witness_eps,
                                       Rng& rng) {
    const Field& F = bbA.field();
    const std::size_t n = bbA.dim();
    for (unsigned i = 0; i < tau; ++i) {
        Dense U = random_dense(F, k, n, rng);
        Dense V = random_dense(F, n, k, rng);
        BBPtr B = add_low_rank(borrow(bbA), V, U);
        bool eliminated = false;
        for (unsigned j = 0; j < lam && !eliminated; ++j) {
            Vec u = rng.vector(F, n), v = rng.vector(F, n);
            Poly s = minpoly_sequence(*B, u, v);
            if (poly_divides(F, h, s)) eliminated = true;
        }
        if (eliminated) continue;
        Poly f = minpoly_matrix(*B, witness_eps, rng).poly;
        if (!poly_divides(F, h, f)) return Survivor{std::move(U), std::move(V), std::move(f)};
    }
    return std::nullopt;
}

// chi extraction: squarefree part with the z factor removed.
Poly non_z_radical(const Field& F, const Poly& g) {
    Poly s = poly_squarefree_part(F, g);
    if (!s.empty() && s[0] == 0) s = Poly(s.begin() + 1, s.end());
    return s;
}

bool is_one_or_z(const Poly& p) {
    return poly_equal(p, Poly{1}) || poly_equal(p, Poly{0, 1});
}

}  // namespace

NilpotentDecision detect_nilpotent(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng) {
    ProtocolParams p = schedule_params(bb.field().q(), k, eps);
    Poly z2{0, 0, 1};
    auto s = stage_survivor(bb, k, z2, p.tau, p.lambda, eps_div(eps, 2 * p.tau), rng);
    if (!s) return {false, std::nullopt};
    return {true, NilpotentWitness{std::move(s->U), std::move(s->V), std::move(s->f)}};
}

InvariantDecision detect_invariant(const BlackBox& bb, std::size_t k, const Ratio& eps, Rng& rng) {
    const Field& F = bb.field();
    const std::size_t n = bb.dim();
    const std::uint64_t q = F.q();
    ProtocolParams p = schedule_params(q, k, eps);

    NilpotentDecision nd = detect_nilpotent(bb, k, eps_div(eps, 2), rng);
    if (!nd.at_most_k) return {false, std::nullopt, Poly{0, 0, 1}};  // chi = z^2
    Dense U0 = std::move(nd.witness->U), V0 = std::move(nd.witness->V);
    Poly f0 = std::move(nd.witness->f);

    auto make_witness = [&](std::vector<Dense> Us, std::vector<Dense> Vs,
                            std::vector<Poly> fs) -> InvariantDecision {
        auto [d, gs] = poly_xgcd_list(F, fs);
        InvariantWitness w;
        w.U = std::move(Us);
        w.V = std::move(Vs);
        w.f = std::move(fs);
        w.g = std::move(gs);
        w.phi = std::move(d);
        return {true, std::move(w), {}};
    };

    if (q == 2) {
        Poly z_plus_1{1, 1}, quad{1, 1, 1};
        auto s1 = stage_survivor(bb, k, z_plus_1, p.tau2_1, p.lambda2_1, eps_div(eps, 12), rng);
        if (!s1) return {false, std::nullopt, z_plus_1};
        auto s2 = stage_survivor(bb, k, quad, p.tau2_2, p.lambda2_2, eps_div(eps, 12), rng);
        if (!s2) return {false, std::nullopt, quad};

        // Degree >= 3 pool: tau_deg3 extra pairs; look for two whose minimal
        // polynomials bring gcd(f0, f1, f2, f_i, f_j) down to {1, z}.
        for (unsigned attempt = 0; attempt < 3; ++attempt) {
            unsigned pool_size = std::max(2u, p.tau_deg3);
            std::vector<Dense> PU, PV;
            std::vector<Poly> pf;
            Ratio sub = eps_div(eps, 12 * pool_size);
            for (unsigned i = 0; i < pool_size; ++i) {
                PU.push_back(random_dense(F, k, n, rng));
                PV.push_back(random_dense(F, n, k, rng));
                BBPtr B = add_low_rank(borrow(bb), PV.back(), PU.back());
                pf.push_back(minpoly_matrix(*B, sub, rng).poly);
            }
            Poly base = poly_gcd(F, poly_gcd(F, f0, s1->f), s2->f);
            for (std::size_t i = 0; i < pool_size; ++i)
                for (std::size_t j = i + 1; j < pool_size; ++j) {
                    Poly g = poly_gcd(F, poly_gcd(F, base, pf[i]), pf[j]);
                    if (is_one_or_z(g))
                        return make_witness({U0, s1->U, s2->U, PU[i], PU[j]},
                                            {V0, s1->V, s2->V, PV[i], PV[j]},
                                            {f0, s1->f, s2->f, pf[i], pf[j]});
                }
            Poly all = base;
            for (const Poly& f : pf) all = poly_gcd(F, all, f);
            Poly chi = non_z_radical(F, all);
            if (poly_deg(chi) >= 1) return {false, std::nullopt, std::move(chi)};
            // gcd of everything is in {1, z} but no 5-subset achieved it;
            // extremely unlucky pool, retry with fresh pairs.
        }
        throw std::runtime_error("invariant-factor detection failed to converge (q = 2)");
    }

    // q >= 3: batches of c preconditioner pairs; each batch independently
    // collapses gcd(f_0, ..., f_c) to phi_{k+1} with probability > 1/2.
    unsigned batches = std::max(1u, reps_for(2, eps_div(eps, 4)));
    Poly gall = f0;
    for (unsigned b = 0; b < batches; ++b) {
        std::vector<Dense> Us{U0}, Vs{V0};
        std::vector<Poly> fs{f0};
        Ratio sub = eps_div(eps, 4ull * batches * p.c);
        for (unsigned i = 0; i < p.c; ++i) {
            Us.push_back(random_dense(F, k, n, rng));
            Vs.push_back(random_dense(F, n, k, rng));
            BBPtr B = add_low_rank(borrow(bb), Vs.back(), Us.back());
            fs.push_back(minpoly_matrix(*B, sub, rng).poly);
        }
        Poly g = poly_gcd(F, fs);
        gall = poly_gcd(F, gall, g);
        if (is_one_or_z(g)) return make_witness(std::move(Us), std::move(Vs), std::move(fs));
    }
    Poly chi = non_z_radical(F, gall);
    if (poly_deg(chi) < 1)
        throw std::runtime_error("invariant-factor detection failed to converge");
    return {false, std::nullopt, std::move(chi)};
}

// ---- protocols ---------------------------------------------------------

Transcript run_few_nilpotent(BBPtr bbA, std::size_t k, const Dense& U, const Dense& V,
                             const Ratio& eps, std::uint64_t seed) {
    const Field& F = bbA->field();
    const std::size_t n = bbA->dim();
    if (U.rows != k || U.cols != n || V.rows != n || V.cols != k)
        throw ProtocolAbort("preconditioner has wrong shape");
    ProtocolParams p = schedule_params(F.q(), k, eps);
    Rng prng = Rng(seed).derive("prover", 0);
    Rng vrng = Rng(seed).derive("verifier", 0);
    Transcript tr(seed, eps);

    BBPtr B = add_low_rank(bbA, V, U);
    BBPtr B2 = std::make_shared<SquaredBox>(B);

    std::vector<std::string> commit;
    push_dense(commit, U);
    push_dense(commit, V);
    tr.add(0, Role::Prover, MsgKind::Commit, std::move(commit), 2 * n * k);

    // Challenge: b_i = (A + VU) c_i for gamma uniform c_i.
    std::vector<Vec> bs;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.gamma; ++i) bs.push_back(B->apply(vrng.vector(F, n)));
    tr.end_role();
    std::vector<std::string> chal;
    for (const Vec& b : bs) push_vec(chal, b);
    tr.add(1, Role::Verifier, MsgKind::Challenge, std::move(chal), (std::uint64_t)p.gamma * n);

    // Response: x_i with (A + VU)^2 x_i = b_i, when such x_i exist.
    std::vector<Vec> xs;
    tr.begin_role(Role::Prover, F, *bbA);
    for (const Vec& b : bs) {
        auto x = solve_consistent(*B2, b, eps_div(eps, 2 * p.gamma), prng);
        xs.push_back(x ? *x : Vec(n, 0));
    }
    tr.end_role();
    std::vector<std::string> resp;
    for (const Vec& x : xs) push_vec(resp, x);
    tr.add(2, Role::Prover, MsgKind::Response, std::move(resp), (std::uint64_t)p.gamma * n);

    bool ok = true;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.gamma && ok; ++i)
        if (B->apply(B->apply(xs[i])) != bs[i]) ok = false;
    tr.end_role();
    tr.set_verdict(3, ok);
    return tr;
}

namespace {

// Core of the many-nilpotent protocol, reusable from the many-invariant
// delegation path; appends rounds starting at `round0`.
void many_nilpotent_rounds(Transcript& tr, BBPtr bbA, std::size_t k, const Ratio& eps,
                           Rng& prng, Rng& vrng, unsigned round0, CheatMode cheat) {
    const Field& F = bbA->field();
    const std::size_t n = bbA->dim();
    ProtocolParams p = schedule_params(F.q(), k, eps);

    std::vector<Dense> Us, Vs;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.tau; ++i) {
        Us.push_back(random_dense(F, k, n, vrng));
        Vs.push_back(random_dense(F, n, k, vrng));
    }
    tr.end_role();
    std::vector<std::string> chal;
    for (unsigned i = 0; i < p.tau; ++i) {
        push_dense(chal, Us[i]);
        push_dense(chal, Vs[i]);
    }
    tr.add(round0, Role::Verifier, MsgKind::Challenge, std::move(chal),
           (std::uint64_t)p.tau * 2 * n * k);

    // Response: x_i with (A + V_i U_i) x_i != 0 = (A + V_i U_i)^2 x_i, found
    // through a vector v whose minimal polynomial against B_i is z^2 g:
    // x_i = g(B_i) v then works.
    std::vector<Vec> xs;
    tr.begin_role(Role::Prover, F, *bbA);
    for (unsigned i = 0; i < p.tau; ++i) {
        BBPtr B = add_low_rank(bbA, Vs[i], Us[i]);
        std::optional<Vec> found;
        for (unsigned attempt = 0; attempt < 20 && !found; ++attempt) {
            Vec v = prng.vector(F, n);
            Poly g = minpoly_matrix_vector(*B, v, 3, prng).poly;
            if (g.size() < 3 || g[0] != 0 || g[1] != 0) continue;  // need z^2 | g
            Vec x = apply_poly(*B, Poly(g.begin() + 2, g.end()), v);
            Vec y = B->apply(x);
            if (!vec_is_zero(y) && vec_is_zero(B->apply(y))) found = std::move(x);
        }
        if (!found) {
            if (cheat == CheatMode::None) {
                tr.end_role();
                throw ProverStuck("no nilpotent witness vector exists for a challenge");
            }
            found = prng.vector(F, n);
        }
        xs.push_back(std::move(*found));
    }
    tr.end_role();
    std::vector<std::string> resp;
    for (const Vec& x : xs) push_vec(resp, x);
    tr.add(round0 + 1, Role::Prover, MsgKind::Response, std::move(resp),
           (std::uint64_t)p.tau * n);

    bool ok = true;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.tau && ok; ++i) {
        BBPtr B = add_low_rank(bbA, Vs[i], Us[i]);
        Vec y = B->apply(xs[i]);
        if (vec_is_zero(y) || !vec_is_zero(B->apply(y))) ok = false;
    }
    tr.end_role();
    tr.set_verdict(round0 + 2, ok);
}

}  // namespace

Transcript run_many_nilpotent(BBPtr bbA, std::size_t k, const Ratio& eps, std::uint64_t seed,
                              CheatMode cheat) {
    Rng prng = Rng(seed).derive("prover", 0);
    Rng vrng = Rng(seed).derive("verifier", 0);
    Transcript tr(seed, eps);
    tr.add(0, Role::Prover, MsgKind::Commit, {"more-than-k-nilpotent"}, 0);
    many_nilpotent_rounds(tr, std::move(bbA), k, eps, prng, vrng, 1, cheat);
    return tr;
}

Transcript run_few_invariant(BBPtr bbA, std::size_t k, const InvariantWitness& w,
                             const Ratio& eps, std::uint64_t seed) {
    const Field& F = bbA->field();
    const std::size_t n = bbA->dim();
    const std::size_t m = w.f.size();  // c + 1
    if (m == 0 || w.U.size() != m || w.V.size() != m || w.g.size() != m)
        throw ProtocolAbort("invariant witness is incomplete");
    ProtocolParams p = schedule_params(F.q(), k, eps);
    Rng vrng = Rng(seed).derive("verifier", 0);
    Transcript tr(seed, eps);

    std::vector<std::string> commit;
    std::uint64_t commit_elems = 0;
    for (std::size_t j = 0; j < m; ++j) {
        push_dense(commit, w.U[j]);
        push_dense(commit, w.V[j]);
        push_poly(commit, w.f[j]);
        push_poly(commit, w.g[j]);
        commit_elems += 2 * n * k + w.f[j].size() + w.g[j].size();
    }
    tr.add(0, Role::Prover, MsgKind::Commit, std::move(commit), commit_elems);

    std::vector<Vec> us, vs;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.tau3; ++i) {
        us.push_back(vrng.vector(F, n));
        vs.push_back(vrng.vector(F, n));
    }
    tr.end_role();
    std::vector<std::string> chal;
    for (unsigned i = 0; i < p.tau3; ++i) {
        push_vec(chal, us[i]);
        push_vec(chal, vs[i]);
    }
    tr.add(1, Role::Verifier, MsgKind::Challenge, std::move(chal),
           (std::uint64_t)p.tau3 * 2 * n);

    // Response: the sequence minimal polynomials s_ij for every challenge
    // pair against every committed preconditioner.
    std::vector<std::vector<Poly>> s(m, std::vector<Poly>(p.tau3));
    std::uint64_t resp_elems = 0;
    std::vector<std::string> resp;
    tr.begin_role(Role::Prover, F, *bbA);
    for (std::size_t j = 0; j < m; ++j) {
        BBPtr B = add_low_rank(bbA, w.V[j], w.U[j]);
        for (unsigned i = 0; i < p.tau3; ++i) s[j][i] = minpoly_sequence(*B, us[i], vs[i]);
    }
    tr.end_role();
    for (std::size_t j = 0; j < m; ++j)
        for (unsigned i = 0; i < p.tau3; ++i) {
            push_poly(resp, s[j][i]);
            resp_elems += s[j][i].size();
        }
    tr.add(2, Role::Prover, MsgKind::Response, std::move(resp), resp_elems);

    bool ok = true;
    Ratio sub = eps_div(eps, 2 * (std::uint64_t)m * p.tau3);
    tr.begin_role(Role::Verifier, F, *bbA);
    for (std::size_t j = 0; j < m && ok; ++j) {
        BBPtr B = add_low_rank(bbA, w.V[j], w.U[j]);
        for (unsigned i = 0; i < p.tau3 && ok; ++i) {
            if (!certify_sequence_minpoly(*B, us[i], vs[i], s[j][i], sub, vrng)) ok = false;
            else if (!poly_divides(F, s[j][i], w.f[j])) ok = false;
        }
    }
    if (ok) {
        Poly acc;
        for (std::size_t j = 0; j < m; ++j)
            acc = poly_add(F, acc, poly_mul(F, w.g[j], w.f[j]));
        if (!is_one_or_z(acc)) ok = false;
    }
    tr.end_role();
    tr.set_verdict(3, ok);
    return tr;
}

Transcript run_many_invariant(BBPtr bbA, std::size_t k, const Poly& chi, const Ratio& eps,
                              std::uint64_t seed, CheatMode cheat) {
    const Field& F = bbA->field();
    const std::size_t n = bbA->dim();
    if (poly_deg(chi) < 1 || chi.back() != 1 || is_one_or_z(chi))
        throw ProtocolAbort("chi must be monic of positive degree, different from z");
    Rng prng = Rng(seed).derive("prover", 0);
    Rng vrng = Rng(seed).derive("verifier", 0);
    Transcript tr(seed, eps);

    std::vector<std::string> commit;
    push_poly(commit, chi);
    tr.add(0, Role::Prover, MsgKind::Commit, std::move(commit), chi.size());

    if (chi.size() > 2 && chi[0] == 0 && chi[1] == 0) {
        // z^2 | chi: confirming more than k nontrivial nilpotent blocks
        // confirms more than k nontrivial invariant factors.
        many_nilpotent_rounds(tr, std::move(bbA), k, eps, prng, vrng, 1, cheat);
        return tr;
    }

    ProtocolParams p = schedule_params(F.q(), k, eps);
    std::vector<Dense> Us, Vs;
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.tau_tilde; ++i) {
        Us.push_back(random_dense(F, k, n, vrng));
        Vs.push_back(random_dense(F, n, k, vrng));
    }
    tr.end_role();
    std::vector<std::string> chal;
    for (unsigned i = 0; i < p.tau_tilde; ++i) {
        push_dense(chal, Us[i]);
        push_dense(chal, Vs[i]);
    }
    tr.add(1, Role::Verifier, MsgKind::Challenge, std::move(chal),
           (std::uint64_t)p.tau_tilde * 2 * n * k);

    // Response: (u_i, v_i') whose sequence minimal polynomial against
    // A + V_i U_i is exactly chi.  With f the minimal polynomial of (B, v)
    // and chi | f, the vector v' = (f/chi)(B) v has matrix-vector minimal
    // polynomial exactly chi; random u then projects faithfully.
    std::vector<Vec> rus, rvs;
    tr.begin_role(Role::Prover, F, *bbA);
    for (unsigned i = 0; i < p.tau_tilde; ++i) {
        BBPtr B = add_low_rank(bbA, Vs[i], Us[i]);
        std::optional<std::pair<Vec, Vec>> found;
        for (unsigned attempt = 0; attempt < 20 && !found; ++attempt) {
            Vec v = prng.vector(F, n);
            Poly fv = minpoly_matrix_vector(*B, v, 3, prng).poly;
            if (!poly_divides(F, chi, fv)) continue;
            Vec vp = apply_poly(*B, poly_div_exact(F, fv, chi), v);
            for (unsigned ua = 0; ua < 8 && !found; ++ua) {
                Vec u = prng.vector(F, n);
                if (poly_equal(minpoly_sequence(*B, u, vp), chi)) found = {{u, vp}};
            }
        }
        if (!found) {
            if (cheat == CheatMode::None) {
                tr.end_role();
                throw ProverStuck("chi does not divide the minimal polynomial of a challenge");
            }
            found = {{prng.vector(F, n), prng.vector(F, n)}};
        }
        rus.push_back(found->first);
        rvs.push_back(found->second);
    }
    tr.end_role();
    std::vector<std::string> resp;
    for (unsigned i = 0; i < p.tau_tilde; ++i) {
        push_vec(resp, rus[i]);
        push_vec(resp, rvs[i]);
    }
    tr.add(2, Role::Prover, MsgKind::Response, std::move(resp),
           (std::uint64_t)p.tau_tilde * 2 * n);

    bool ok = true;
    Ratio sub = eps_div(eps, 2 * p.tau_tilde);
    tr.begin_role(Role::Verifier, F, *bbA);
    for (unsigned i = 0; i < p.tau_tilde && ok; ++i) {
        BBPtr B = add_low_rank(bbA, Vs[i], Us[i]);
        if (!certify_sequence_minpoly(*B, rus[i], rvs[i], chi, sub, vrng)) ok = false;
    }
    tr.end_role();
    tr.set_verdict(3, ok);
    return tr;
}

bool certify_sequence_minpoly(const BlackBox& bb, const Vec& u, const Vec& v, const Poly& claimed,
                              const Ratio& eps, Rng& rng) {
    (void)eps;
    (void)rng;
    if (claimed.empty() || claimed.back() != 1) return false;  // must be monic
    // Deterministic realization: regenerate a 2n-term prefix and compare the
    // Berlekamp-Massey output exactly.  Perfectly complete and sound, which
    // is strictly stronger than the eps bound the surrounding protocols
    // require.
    Poly actual = minpoly_sequence(bb, u, v);
    return poly_equal(actual, claimed);
}

}  // namespace bbx
