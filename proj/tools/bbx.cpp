// Command-line front end: matrix generation, structure detection and
// certification, certificate verification, interactive protocol runs with
// transcript output, dense ground-truth queries, and cost benchmarks.
//
// Exit codes: 0 accept/success, 1 reject/not-detected, 2 usage error,
// 3 parse error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>

#include "bbx/io.hpp"
#include "bbx/oracle.hpp"

using namespace bbx;

namespace {

Ratio parse_eps(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        throw CLI::ValidationError("--eps", "expected <num>/<den>");
    Ratio eps;
    try {
        eps.num = std::stoull(s.substr(0, slash));
        eps.den = std::stoull(s.substr(slash + 1));
        check_epsilon(eps);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--eps", "expected <num>/<den> with 0 < num/den < 1");
    }
    return eps;
}

std::uint64_t ensure_seed(std::optional<std::uint64_t> seed) {
    if (seed) return *seed;
    std::random_device rd;
    std::uint64_t s = ((std::uint64_t)rd() << 32) ^ rd();
    std::cout << "seed " << s << "\n";
    return s;
}

void emit_matrix(const std::string& out, const BlackBox& bb) {
    if (out.empty() || out == "-")
        write_matrix(std::cout, bb);
    else
        write_matrix_file(out, bb);
}

void emit_certificate(const std::string& out, const CertificateFile& c) {
    if (out.empty() || out == "-")
        write_certificate(std::cout, c);
    else
        write_certificate_file(out, c);
}

std::string poly_str(const Poly& p) {
    Poly q = p.empty() ? Poly{0} : p;
    std::string s = "poly " + std::to_string(q.size() - 1);
    for (Scalar c : q) s += " " + std::to_string(c);
    return s;
}

BBPtr generate(const std::string& kind, const Field& F, std::size_t n, std::size_t k, Rng& rng) {
    if (kind == "band") {
        Dense bands(n, 2 * k + 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < 2 * k + 1; ++d)
                if (i + d >= k && i + d < n + k)  // keep out-of-range positions zero
                    bands.at(i, d) = rng.element(F);
        return std::make_shared<BandBox>(F, n, k, std::move(bands));
    }
    if (kind == "lowrank") {
        Dense U(k, n), V(n, k);
        for (auto& x : U.a) x = rng.element(F);
        for (auto& x : V.a) x = rng.element(F);
        BBPtr zero = std::make_shared<SparseBox>(F, n, std::vector<Triple>{});
        return add_low_rank(std::move(zero), std::move(V), std::move(U));
    }
    if (kind == "toeplitz" || kind == "hankel") {
        std::vector<Scalar> diag(2 * n - 1);
        for (auto& x : diag) x = rng.element(F);
        Dense m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = kind == "toeplitz" ? diag[n - 1 + i - j] : diag[i + j];
        return std::make_shared<DenseBox>(F, std::move(m));
    }
    if (kind == "jordan") {
        // k order-2 Jordan blocks for eigenvalue 0; remaining rows zero.
        if (2 * k > n) throw CLI::ValidationError("-k", "need 2k <= n for jordan");
        std::vector<Triple> t;
        for (std::size_t b = 0; b < k; ++b) t.push_back({2 * b, 2 * b + 1, 1});
        return std::make_shared<SparseBox>(F, n, std::move(t));
    }
    if (kind == "companion") {
        std::vector<Triple> t;
        for (std::size_t i = 1; i < n; ++i) t.push_back({i, i - 1, 1});
        for (std::size_t i = 0; i < n; ++i) {
            Scalar c = rng.element(F);
            if (c != 0) t.push_back({i, n - 1, F.neg(c)});
        }
        return std::make_shared<SparseBox>(F, n, std::move(t));
    }
    if (kind == "random") {
        Dense m(n, n);
        for (auto& x : m.a) x = rng.element(F);
        return std::make_shared<DenseBox>(F, std::move(m));
    }
    throw CLI::ValidationError("--kind", "unknown generator '" + kind + "'");
}

int cmd_detect(const std::string& matrix_path, const std::string& property, std::size_t k,
               const Ratio& eps, std::uint64_t seed, const std::string& cert_out) {
    BBPtr bb = read_matrix_file(matrix_path);
    Rng rng = Rng(seed).derive("detect", 0);
    CertificateFile c;
    c.n = bb->dim();
    c.k = k;

    if (property == "band") {
        BandResult r = detect_band(*bb, k, eps, rng);
        if (!r.ok()) {
            std::cout << "not-band\n";
            return 1;
        }
        c.type = "band";
        c.band = std::move(r.cert);
        std::cout << "band bandwidth=" << k << "\n";
    } else if (property == "rank") {
        RankResult r = detect_low_rank(*bb, k, eps, rng);
        if (!r.ok()) {
            std::cout << "rank-exceeds " << k << "\n";
            return 1;
        }
        c.type = "rank";
        std::cout << "rank " << r.cert->r << "\n";
        c.rank = std::move(r.cert);
    } else if (property == "toeplitz" || property == "hankel" || property == "th") {
        OpKind op = property == "toeplitz" ? OpKind::T : property == "hankel" ? OpKind::H : OpKind::TH;
        DisplacementResult r = detect_displacement(bb, op, k, eps, rng);
        if (!r.ok()) {
            std::cout << "displacement-rank-exceeds " << k << "\n";
            return 1;
        }
        c.type = "displacement";
        std::cout << "displacement-rank " << r.cert->inner.r << "\n";
        c.displacement = std::move(r.cert);
    } else if (property == "nilpotent") {
        NilpotentDecision d = detect_nilpotent(*bb, k, eps, rng);
        if (d.at_most_k) {
            c.type = "nilpotent-few";
            c.nilpotent = std::move(d.witness);
            std::cout << "at-most " << k << " nontrivial nilpotent blocks\n";
        } else {
            c.type = "nilpotent-many";
            std::cout << "more-than " << k << " nontrivial nilpotent blocks\n";
        }
        if (!cert_out.empty()) emit_certificate(cert_out, c);
        return d.at_most_k ? 0 : 1;
    } else if (property == "invariant") {
        InvariantDecision d = detect_invariant(*bb, k, eps, rng);
        if (d.at_most_k) {
            c.type = "invariant-few";
            c.invariant = std::move(d.witness);
            std::cout << "at-most " << k << " nontrivial invariant factors\n";
        } else {
            c.type = "invariant-many";
            c.chi = std::move(d.chi);
            std::cout << "more-than " << k << " nontrivial invariant factors, chi: "
                      << poly_str(*c.chi) << "\n";
        }
        if (!cert_out.empty()) emit_certificate(cert_out, c);
        return d.at_most_k ? 0 : 1;
    } else {
        throw CLI::ValidationError("--property", "unknown property '" + property + "'");
    }
    if (!cert_out.empty()) emit_certificate(cert_out, c);
    return 0;
}

int cmd_verify(const std::string& matrix_path, const std::string& cert_path, const Ratio& eps,
               std::uint64_t seed) {
    BBPtr bb = read_matrix_file(matrix_path);
    CertificateFile c = read_certificate_file(cert_path);
    Rng rng = Rng(seed).derive("verify", 0);
    bool ok = false;
    try {
        if (c.type == "band") {
            ok = verify_band(*bb, *c.band, eps, rng);
        } else if (c.type == "rank") {
            ok = verify_low_rank(*bb, *c.rank, eps, rng);
        } else if (c.type == "displacement") {
            ok = verify_displacement(bb, *c.displacement, eps, rng);
        } else if (c.type == "nilpotent-few") {
            ok = run_few_nilpotent(bb, c.k, c.nilpotent->U, c.nilpotent->V, eps, seed).accepted();
        } else if (c.type == "nilpotent-many") {
            ok = run_many_nilpotent(bb, c.k, eps, seed).accepted();
        } else if (c.type == "invariant-few") {
            ok = run_few_invariant(bb, c.k, *c.invariant, eps, seed).accepted();
        } else if (c.type == "invariant-many") {
            ok = run_many_invariant(bb, c.k, *c.chi, eps, seed).accepted();
        } else {
            std::cerr << "unknown certificate type '" << c.type << "'\n";
            return 2;
        }
    } catch (const MalformedCertificate& ex) {
        std::cout << "reject (malformed: " << ex.what() << ")\n";
        return 1;
    } catch (const ProverStuck& ex) {
        std::cout << "reject (claim refuted: " << ex.what() << ")\n";
        return 1;
    }
    std::cout << (ok ? "accept" : "reject") << "\n";
    return ok ? 0 : 1;
}

int cmd_protocol(const std::string& matrix_path, const std::string& property,
                 const std::string& claim, std::size_t k, const Ratio& eps, std::uint64_t seed,
                 const std::string& transcript_out) {
    BBPtr bb = read_matrix_file(matrix_path);
    Rng drng = Rng(seed).derive("protocol-setup", 0);
    std::optional<Transcript> tr;
    try {
        if (property == "nilpotent" && claim == "few") {
            NilpotentDecision d = detect_nilpotent(*bb, k, eps, drng);
            if (!d.at_most_k) {
                std::cerr << "claim 'few' contradicts detection; no honest witness\n";
                return 1;
            }
            tr = run_few_nilpotent(bb, k, d.witness->U, d.witness->V, eps, seed);
        } else if (property == "nilpotent" && claim == "many") {
            tr = run_many_nilpotent(bb, k, eps, seed);
        } else if (property == "invariant" && claim == "few") {
            InvariantDecision d = detect_invariant(*bb, k, eps, drng);
            if (!d.at_most_k) {
                std::cerr << "claim 'few' contradicts detection; no honest witness\n";
                return 1;
            }
            tr = run_few_invariant(bb, k, *d.witness, eps, seed);
        } else if (property == "invariant" && claim == "many") {
            InvariantDecision d = detect_invariant(*bb, k, eps, drng);
            if (d.at_most_k) {
                std::cerr << "claim 'many' contradicts detection\n";
                return 1;
            }
            tr = run_many_invariant(bb, k, d.chi, eps, seed);
        } else {
            throw CLI::ValidationError("--property/--claim",
                                       "need nilpotent|invariant and few|many");
        }
    } catch (const ProverStuck& ex) {
        std::cerr << "prover stuck: " << ex.what() << "\n";
        return 1;
    }
    TranscriptFile tf = transcript_to_file(*tr);
    if (transcript_out.empty() || transcript_out == "-")
        write_transcript(std::cout, tf);
    else
        write_transcript_file(transcript_out, tf);
    std::cout << "verdict " << (tr->accepted() ? "accept" : "reject") << "\n";
    return tr->accepted() ? 0 : 1;
}

int cmd_oracle(const std::string& matrix_path, const std::string& what, const std::string& op_s) {
    BBPtr bb = read_matrix_file(matrix_path);
    const Field& F = bb->field();
    Dense m = materialize(*bb);
    if (what == "rank") {
        std::cout << dense_rank(F, m) << "\n";
    } else if (what == "minpoly") {
        std::cout << poly_str(dense_minpoly(F, m)) << "\n";
    } else if (what == "invariants") {
        InvariantReport rep = invariant_report(F, m);
        for (const Poly& f : rep.factors)
            if (poly_deg(f) >= 1) std::cout << poly_str(f) << "\n";
        std::cout << "nontrivial " << rep.nontrivial_count << "\n";
        std::cout << "nilpotent-blocks " << rep.nilpotent_block_count << "\n";
        std::cout << "rank " << rep.rank << "\n";
    } else if (what == "bandwidth") {
        std::cout << dense_band_width(m) << "\n";
    } else if (what == "displacement") {
        OpKind op = op_s == "H" ? OpKind::H : op_s == "TH" ? OpKind::TH : OpKind::T;
        std::cout << dense_displacement_rank(F, m, op) << "\n";
    } else {
        throw CLI::ValidationError("--what", "unknown query '" + what + "'");
    }
    return 0;
}

int cmd_bench(std::uint64_t q, const Ratio& eps, std::uint64_t seed) {
    std::cout << "n k property prover-fieldops verifier-fieldops prover-apps verifier-apps "
                 "comm-elems\n";
    for (std::size_t n : {16, 32, 64}) {
        Field F = field_from_order(q);
        std::size_t k = 2;
        Rng rng = Rng(seed).derive("bench", n);

        // band detection/verification
        Dense bands(n, 2 * k + 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < 2 * k + 1; ++d)
                if (i + d >= k && i + d < n + k) bands.at(i, d) = rng.element(F);
        auto band_bb = std::make_shared<BandBox>(F, n, k, bands);
        F.reset_ops();
        band_bb->reset_counters();
        BandResult br = detect_band(*band_bb, k, eps, rng);
        std::cout << n << " " << k << " band-detect - " << F.ops() << " - "
                  << band_bb->total_applies() << " 0\n";
        if (br.ok()) {
            F.reset_ops();
            band_bb->reset_counters();
            verify_band(*band_bb, *br.cert, eps, rng);
            std::cout << n << " " << k << " band-verify - " << F.ops() << " - "
                      << band_bb->total_applies() << " 0\n";
        }

        // few-invariant protocol on a k-block instance
        std::vector<Triple> t;
        for (std::size_t i = 0; i < n; ++i) t.push_back({i, i, (Scalar)(1 + i % (F.q() - 1))});
        auto inv_bb = std::make_shared<SparseBox>(F, n, std::move(t));
        Rng drng = Rng(seed).derive("bench-inv", n);
        InvariantDecision d = detect_invariant(*inv_bb, n, eps, drng);
        if (d.at_most_k) {
            Transcript tr = run_few_invariant(inv_bb, n, *d.witness, eps, seed);
            const CostMeters& cm = tr.cost();
            std::cout << n << " " << n << " invariant-few " << cm.prover_fieldops << " "
                      << cm.verifier_fieldops << " " << cm.prover_apps << " " << cm.verifier_apps
                      << " " << cm.comm_elems << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field black-box matrix structure toolkit"};
    app.require_subcommand(1);

    std::string kind = "random", property = "band", claim = "few", what = "rank", op_s = "T";
    std::string matrix_path, cert_path, out_path, transcript_out, eps_s = "1/1024";
    std::uint64_t q = 2;
    std::size_t n = 8, k = 1;
    std::optional<std::uint64_t> seed_opt;

    auto add_seed = [&](CLI::App* c) { c->add_option("--seed", seed_opt, "master seed (u64)"); };
    auto add_eps = [&](CLI::App* c) { c->add_option("--eps", eps_s, "tolerance num/den"); };

    CLI::App* gen = app.add_subcommand("gen", "generate a matrix file");
    gen->add_option("--kind", kind, "band|lowrank|toeplitz|hankel|jordan|companion|random");
    gen->add_option("--q", q, "field order (prime power)");
    gen->add_option("--size", n, "dimension n");
    gen->add_option("-k,--k", k, "band width / rank / block count");
    gen->add_option("-o,--out", out_path, "output file (default stdout)");
    add_seed(gen);

    CLI::App* det = app.add_subcommand("detect", "detect structure of a matrix");
    det->add_option("matrix", matrix_path, "matrix file")->required();
    det->add_option("--property", property, "band|rank|toeplitz|hankel|th|nilpotent|invariant")
        ->required();
    det->add_option("-k,--k", k, "structure parameter")->required();
    det->add_option("--cert", cert_path, "write certificate here");
    add_eps(det);
    add_seed(det);

    CLI::App* cert = app.add_subcommand("certify", "detect and emit a certificate file");
    cert->add_option("matrix", matrix_path, "matrix file")->required();
    cert->add_option("--property", property, "band|rank|toeplitz|hankel|th|nilpotent|invariant")
        ->required();
    cert->add_option("-k,--k", k, "structure parameter")->required();
    cert->add_option("-o,--out", out_path, "certificate output file")->required();
    add_eps(cert);
    add_seed(cert);

    CLI::App* ver = app.add_subcommand("verify", "verify a certificate against a matrix");
    ver->add_option("matrix", matrix_path, "matrix file")->required();
    ver->add_option("certificate", cert_path, "certificate file")->required();
    add_eps(ver);
    add_seed(ver);

    CLI::App* proto = app.add_subcommand("protocol", "run a prover/verifier protocol in-process");
    proto->add_option("matrix", matrix_path, "matrix file")->required();
    proto->add_option("--property", property, "nilpotent|invariant")->required();
    proto->add_option("--claim", claim, "few|many")->required();
    proto->add_option("-k,--k", k, "claim parameter")->required();
    proto->add_option("--transcript", transcript_out, "transcript output file");
    add_eps(proto);
    add_seed(proto);

    CLI::App* orc = app.add_subcommand("oracle", "dense ground-truth query");
    orc->add_option("matrix", matrix_path, "matrix file")->required();
    orc->add_option("--what", what, "rank|minpoly|invariants|bandwidth|displacement")->required();
    orc->add_option("--operator", op_s, "T|H|TH (displacement only)");

    CLI::App* bench = app.add_subcommand("bench", "emit a cost-meter table");
    bench->add_option("--q", q, "field order");
    add_eps(bench);
    add_seed(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Ratio eps = parse_eps(eps_s);
        if (gen->parsed()) {
            std::uint64_t seed = ensure_seed(seed_opt);
            Field F = field_from_order(q);
            Rng rng = Rng(seed).derive("gen", 0);
            emit_matrix(out_path, *generate(kind, F, n, k, rng));
            return 0;
        }
        if (det->parsed())
            return cmd_detect(matrix_path, property, k, eps, ensure_seed(seed_opt), cert_path);
        if (cert->parsed())
            return cmd_detect(matrix_path, property, k, eps, ensure_seed(seed_opt), out_path);
        if (ver->parsed()) return cmd_verify(matrix_path, cert_path, eps, ensure_seed(seed_opt));
        if (proto->parsed())
            return cmd_protocol(matrix_path, property, claim, k, eps, ensure_seed(seed_opt),
                                transcript_out);
        if (orc->parsed()) return cmd_oracle(matrix_path, what, op_s);
        if (bench->parsed()) return cmd_bench(q, eps, ensure_seed(seed_opt));
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const FieldError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
