#include "bbx/io.hpp"

#include <fstream>
#include <sstream>

namespace bbx {
namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string t;
    while (iss >> t) out.push_back(t);
    return out;
}

struct Reader {
    std::istream& in;
    std::size_t line = 0;
    std::vector<std::string> toks;

    bool next() {
        std::string s;
        while (std::getline(in, s)) {
            ++line;
            toks = split_ws(s);
            if (!toks.empty()) return true;
        }
        return false;
    }
    const std::vector<std::string>& expect_line(const char* what) {
        if (!next()) throw ParseError(line + 1, std::string("unexpected end of input, expected ") + what);
        return toks;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, msg); }

    std::uint64_t as_u64(const std::string& t) const {
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(t, &pos);
            if (pos != t.size()) fail("malformed integer '" + t + "'");
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("malformed integer '" + t + "'");
        }
    }

    void expect_keyword(const char* kw) {
        expect_line(kw);
        if (toks[0] != kw) fail(std::string("expected '") + kw + "', got '" + toks[0] + "'");
    }
    std::uint64_t keyword_u64(const char* kw) {
        expect_keyword(kw);
        if (toks.size() != 2) fail(std::string("'") + kw + "' takes one integer");
        return as_u64(toks[1]);
    }

    /// Reads `rows` lines of `cols` integers each; rows of width zero (or
    /// zero rows) occupy no lines at all.
    Dense read_block(const Field& F, std::size_t rows, std::size_t cols, const char* what) {
        Dense m(rows, cols);
        if (rows == 0 || cols == 0) return m;
        for (std::size_t i = 0; i < rows; ++i) {
            expect_line(what);
            if (toks.size() != cols)
                fail(std::string(what) + ": expected " + std::to_string(cols) + " entries, got " +
                     std::to_string(toks.size()));
            for (std::size_t j = 0; j < cols; ++j) {
                Scalar v = as_u64(toks[j]);
                if (!F.is_valid(v)) fail(std::string(what) + ": entry out of field range");
                m.at(i, j) = v;
            }
        }
        return m;
    }

    Poly read_poly_after_label(const char* label) {
        expect_line(label);
        if (toks.size() < 3 || toks[0] != label || toks[1] != "poly")
            fail(std::string("expected '") + label + " poly <deg> <coeffs>'");
        std::size_t d = as_u64(toks[2]);
        if (toks.size() != 3 + d + 1) fail("polynomial coefficient count does not match degree");
        Poly p(d + 1);
        for (std::size_t i = 0; i <= d; ++i) p[i] = as_u64(toks[3 + i]);
        if (!p.empty() && p.back() == 0 && p.size() > 1) fail("polynomial has a zero leading coefficient");
        return p;
    }
};

Field read_field_line(Reader& r) {
    r.expect_keyword("field");
    const auto& t = r.toks;
    try {
        if (t.size() == 2) return field_from_order(r.as_u64(t[1]));
        if (t.size() >= 4 && t[1] == "ext") {
            std::uint64_t p = r.as_u64(t[2]);
            unsigned e = (unsigned)r.as_u64(t[3]);
            if (t.size() != 4 + e + 1) r.fail("extension modulus needs e+1 coefficients");
            std::vector<std::uint64_t> mod;
            for (std::size_t i = 4; i < t.size(); ++i) mod.push_back(r.as_u64(t[i]));
            return Field(p, e, std::move(mod));
        }
    } catch (const std::invalid_argument& ex) {
        throw FieldError(ex.what());
    }
    r.fail("malformed field line");
}

void write_field_line(std::ostream& out, const Field& F) {
    if (F.degree() == 1) {
        out << "field " << F.p() << "\n";
    } else {
        out << "field ext " << F.p() << " " << F.degree();
        for (std::uint64_t c : F.modulus()) out << " " << c;
        out << "\n";
    }
}

void write_block(std::ostream& out, const Dense& m) {
    if (m.rows == 0 || m.cols == 0) return;
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) out << (j ? " " : "") << m.a[i * m.cols + j];
        out << "\n";
    }
}

void write_poly_line(std::ostream& out, const char* label, const Poly& p) {
    Poly q = p.empty() ? Poly{0} : p;
    out << label << " poly " << (q.size() - 1);
    for (Scalar c : q) out << " " << c;
    out << "\n";
}

BBPtr read_matrix_block(Reader& r) {
    r.expect_line("%%bbm header");
    if (r.toks.size() != 2 || r.toks[0] != "%%bbm" || r.toks[1] != "v1")
        r.fail("expected '%%bbm v1' header");
    Field F = read_field_line(r);
    std::size_t n = r.keyword_u64("size");
    if (n == 0) r.fail("size must be positive");
    r.expect_keyword("kind");
    if (r.toks.size() != 2) r.fail("kind takes one word");
    std::string kind = r.toks[1];

    if (kind == "dense") {
        return std::make_shared<DenseBox>(F, r.read_block(F, n, n, "dense row"));
    }
    if (kind == "sparse") {
        std::size_t m = r.keyword_u64("nnz");
        std::vector<Triple> entries;
        for (std::size_t t = 0; t < m; ++t) {
            r.expect_line("sparse triplet");
            if (r.toks.size() != 3) r.fail("triplet needs '<i> <j> <val>'");
            std::size_t i = r.as_u64(r.toks[0]), j = r.as_u64(r.toks[1]);
            Scalar v = r.as_u64(r.toks[2]);
            if (i < 1 || i > n || j < 1 || j > n) r.fail("triplet index out of range");
            if (!F.is_valid(v)) r.fail("triplet value out of field range");
            entries.push_back({i - 1, j - 1, v});
        }
        return std::make_shared<SparseBox>(F, n, std::move(entries));
    }
    if (kind == "band") {
        std::size_t k = r.keyword_u64("bandwidth");
        return std::make_shared<BandBox>(F, n, k, r.read_block(F, n, 2 * k + 1, "band row"));
    }
    if (kind == "plus-lowrank") {
        std::size_t k = r.keyword_u64("rankwidth");
        Dense U = r.read_block(F, k, n, "U row");
        Dense V = r.read_block(F, n, k, "V row");
        BBPtr base = read_matrix_block(r);
        if (base->field() != F) r.fail("nested matrix field differs from wrapper field");
        if (base->dim() != n) r.fail("nested matrix size differs from wrapper size");
        return add_low_rank(std::move(base), std::move(V), std::move(U));
    }
    r.fail("unknown matrix kind '" + kind + "'");
}

void write_rank_payload(std::ostream& out, const RankCertificate& c) {
    out << "size " << c.n << "\n";
    out << "rank " << c.r << "\n";
    out << "rowperm";
    for (std::size_t i : c.row_perm) out << " " << i;
    out << "\ncolperm";
    for (std::size_t j : c.col_perm) out << " " << j;
    out << "\nC\n";
    write_block(out, c.C);
    out << "Cinv\n";
    write_block(out, c.Cinv);
    out << "L\n";
    write_block(out, c.L);
    out << "R\n";
    write_block(out, c.R);
}

const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::T: return "T";
        case OpKind::H: return "H";
        case OpKind::TH: return "TH";
    }
    return "?";
}

}  // namespace

ParseError::ParseError(std::size_t line_no, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}

Field field_from_order(std::uint64_t q) {
    if (q < 2) throw FieldError("field order must be at least 2");
    // Factor q = p^e; q must be a prime power.
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    unsigned e = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw FieldError(std::to_string(q) + " is not a prime power");
    return e == 1 ? Field(p) : Field::extension(p, e);
}

BBPtr read_matrix(std::istream& in) {
    Reader r{in};
    return read_matrix_block(r);
}

BBPtr read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const BlackBox& bb) {
    const Field& F = bb.field();
    out << "%%bbm v1\n";
    write_field_line(out, F);
    out << "size " << bb.dim() << "\n";
    if (auto* d = dynamic_cast<const DenseBox*>(&bb)) {
        out << "kind dense\n";
        write_block(out, d->matrix());
    } else if (auto* s = dynamic_cast<const SparseBox*>(&bb)) {
        out << "kind sparse\n";
        out << "nnz " << s->entries().size() << "\n";
        for (const Triple& t : s->entries())
            out << (t.i + 1) << " " << (t.j + 1) << " " << t.val << "\n";
    } else if (auto* b = dynamic_cast<const BandBox*>(&bb)) {
        out << "kind band\n";
        out << "bandwidth " << b->bandwidth() << "\n";
        write_block(out, b->bands());
    } else if (auto* p = dynamic_cast<const PlusLowRankBox*>(&bb)) {
        out << "kind plus-lowrank\n";
        out << "rankwidth " << p->U().rows << "\n";
        write_block(out, p->U());
        write_block(out, p->V());
        write_matrix(out, *p->base());
    } else {
        out << "kind dense\n";
        write_block(out, materialize(bb));
    }
}

void write_matrix_file(const std::string& path, const BlackBox& bb) {
    std::ofstream out(path);
    write_matrix(out, bb);
}

CertificateFile read_certificate(std::istream& in) {
    Reader r{in};
    r.expect_line("%%bbc header");
    if (r.toks.size() != 2 || r.toks[0] != "%%bbc" || r.toks[1] != "v1")
        r.fail("expected '%%bbc v1' header");
    r.expect_keyword("type");
    if (r.toks.size() != 2) r.fail("type takes one word");
    CertificateFile c;
    c.type = r.toks[1];
    // Certificates carry raw scalars; field validation happens when they are
    // checked against a matrix.
    if (c.type == "band") {
        c.n = r.keyword_u64("size");
        std::size_t k = r.keyword_u64("bandwidth");
        c.k = k;
        BandCertificate bc;
        bc.n = c.n;
        bc.k = k;
        bc.entries = Dense(c.n, 2 * k + 1);
        for (std::size_t i = 0; i < c.n; ++i) {
            r.expect_line("band row");
            if (r.toks.size() != 2 * k + 1) r.fail("band row has wrong width");
            for (std::size_t j = 0; j < 2 * k + 1; ++j) bc.entries.at(i, j) = r.as_u64(r.toks[j]);
        }
        c.band = std::move(bc);
        return c;
    }
    if (c.type == "rank" || c.type == "displacement") {
        OpKind op = OpKind::T;
        if (c.type == "displacement") {
            r.expect_keyword("operator");
            if (r.toks.size() != 2) r.fail("operator takes one word");
            if (r.toks[1] == "T") op = OpKind::T;
            else if (r.toks[1] == "H") op = OpKind::H;
            else if (r.toks[1] == "TH") op = OpKind::TH;
            else r.fail("operator must be T, H or TH");
        }
        RankCertificate rc;
        {
            rc.n = r.keyword_u64("size");
            rc.r = r.keyword_u64("rank");
            if (rc.r > rc.n) r.fail("rank exceeds size");
            auto perm = [&](const char* kw) {
                r.expect_keyword(kw);
                if (r.toks.size() != rc.n + 1) r.fail(std::string(kw) + " needs n indices");
                std::vector<std::size_t> p;
                for (std::size_t i = 1; i < r.toks.size(); ++i) p.push_back(r.as_u64(r.toks[i]));
                return p;
            };
            rc.row_perm = perm("rowperm");
            rc.col_perm = perm("colperm");
            rc.row_idx.assign(rc.row_perm.begin(), rc.row_perm.begin() + rc.r);
            rc.col_idx.assign(rc.col_perm.begin(), rc.col_perm.begin() + rc.r);
            auto raw_block = [&](const char* kw, std::size_t rows, std::size_t cols) {
                r.expect_keyword(kw);
                Dense m(rows, cols);
                if (rows == 0 || cols == 0) return m;
                for (std::size_t i = 0; i < rows; ++i) {
                    r.expect_line(kw);
                    if (r.toks.size() != cols) r.fail(std::string(kw) + " row has wrong width");
                    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = r.as_u64(r.toks[j]);
                }
                return m;
            };
            rc.C = raw_block("C", rc.r, rc.r);
            rc.Cinv = raw_block("Cinv", rc.r, rc.r);
            rc.L = raw_block("L", rc.n - rc.r, rc.r);
            rc.R = raw_block("R", rc.r, rc.n - rc.r);
        }
        c.n = rc.n;
        c.k = rc.r;
        if (c.type == "rank") {
            c.rank = std::move(rc);
        } else {
            c.displacement = DisplacementCertificate{op, std::move(rc)};
        }
        return c;
    }
    if (c.type == "nilpotent-few") {
        c.n = r.keyword_u64("size");
        c.k = r.keyword_u64("k");
        NilpotentWitness w;
        auto raw_block = [&](const char* kw, std::size_t rows, std::size_t cols) {
            r.expect_keyword(kw);
            Dense m(rows, cols);
            if (rows == 0 || cols == 0) return m;
            for (std::size_t i = 0; i < rows; ++i) {
                r.expect_line(kw);
                if (r.toks.size() != cols) r.fail(std::string(kw) + " row has wrong width");
                for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = r.as_u64(r.toks[j]);
            }
            return m;
        };
        w.U = raw_block("U", c.k, c.n);
        w.V = raw_block("V", c.n, c.k);
        w.f = r.read_poly_after_label("f");
        c.nilpotent = std::move(w);
        return c;
    }
    if (c.type == "nilpotent-many") {
        c.n = r.keyword_u64("size");
        c.k = r.keyword_u64("k");
        return c;
    }
    if (c.type == "invariant-few") {
        c.n = r.keyword_u64("size");
        c.k = r.keyword_u64("k");
        std::size_t m = r.keyword_u64("count");
        InvariantWitness w;
        auto raw_block = [&](const char* kw, std::size_t rows, std::size_t cols) {
            r.expect_keyword(kw);
            Dense d(rows, cols);
            if (rows == 0 || cols == 0) return d;
            for (std::size_t i = 0; i < rows; ++i) {
                r.expect_line(kw);
                if (r.toks.size() != cols) r.fail(std::string(kw) + " row has wrong width");
                for (std::size_t j = 0; j < cols; ++j) d.at(i, j) = r.as_u64(r.toks[j]);
            }
            return d;
        };
        for (std::size_t j = 0; j < m; ++j) {
            w.U.push_back(raw_block("U", c.k, c.n));
            w.V.push_back(raw_block("V", c.n, c.k));
            w.f.push_back(r.read_poly_after_label("f"));
            w.g.push_back(r.read_poly_after_label("g"));
        }
        w.phi = r.read_poly_after_label("phi");
        c.invariant = std::move(w);
        return c;
    }
    if (c.type == "invariant-many") {
        c.n = r.keyword_u64("size");
        c.k = r.keyword_u64("k");
        c.chi = r.read_poly_after_label("chi");
        return c;
    }
    r.fail("unknown certificate type '" + c.type + "'");
}

CertificateFile read_certificate_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return read_certificate(in);
}

void write_certificate(std::ostream& out, const CertificateFile& c) {
    out << "%%bbc v1\n";
    out << "type " << c.type << "\n";
    if (c.type == "band") {
        out << "size " << c.band->n << "\n";
        out << "bandwidth " << c.band->k << "\n";
        write_block(out, c.band->entries);
    } else if (c.type == "rank") {
        write_rank_payload(out, *c.rank);
    } else if (c.type == "displacement") {
        out << "operator " << op_name(c.displacement->kind) << "\n";
        write_rank_payload(out, c.displacement->inner);
    } else if (c.type == "nilpotent-few") {
        out << "size " << c.n << "\n";
        out << "k " << c.k << "\n";
        out << "U\n";
        write_block(out, c.nilpotent->U);
        out << "V\n";
        write_block(out, c.nilpotent->V);
        write_poly_line(out, "f", c.nilpotent->f);
    } else if (c.type == "nilpotent-many") {
        out << "size " << c.n << "\n";
        out << "k " << c.k << "\n";
    } else if (c.type == "invariant-few") {
        out << "size " << c.n << "\n";
        out << "k " << c.k << "\n";
        out << "count " << c.invariant->f.size() << "\n";
        for (std::size_t j = 0; j < c.invariant->f.size(); ++j) {
            out << "U\n";
            write_block(out, c.invariant->U[j]);
            out << "V\n";
            write_block(out, c.invariant->V[j]);
            write_poly_line(out, "f", c.invariant->f[j]);
            write_poly_line(out, "g", c.invariant->g[j]);
        }
        write_poly_line(out, "phi", c.invariant->phi);
    } else if (c.type == "invariant-many") {
        out << "size " << c.n << "\n";
        out << "k " << c.k << "\n";
        write_poly_line(out, "chi", *c.chi);
    } else {
        throw std::invalid_argument("unknown certificate type '" + c.type + "'");
    }
}

void write_certificate_file(const std::string& path, const CertificateFile& cert) {
    std::ofstream out(path);
    write_certificate(out, cert);
}

TranscriptFile transcript_to_file(const Transcript& tr) {
    TranscriptFile f;
    f.seed = tr.seed();
    f.eps = tr.eps();
    for (const Message& m : tr.messages())
        if (m.kind != MsgKind::Verdict) f.messages.push_back(m);
    f.cost = tr.cost();
    f.accepted = tr.accepted();
    return f;
}

TranscriptFile read_transcript(std::istream& in) {
    Reader r{in};
    r.expect_line("%%bbt header");
    if (r.toks.size() != 2 || r.toks[0] != "%%bbt" || r.toks[1] != "v1")
        r.fail("expected '%%bbt v1' header");
    TranscriptFile f;
    f.seed = r.keyword_u64("seed");
    r.expect_keyword("epsilon");
    if (r.toks.size() != 2) r.fail("epsilon takes '<num>/<den>'");
    {
        auto slash = r.toks[1].find('/');
        if (slash == std::string::npos) r.fail("epsilon takes '<num>/<den>'");
        f.eps.num = r.as_u64(r.toks[1].substr(0, slash));
        f.eps.den = r.as_u64(r.toks[1].substr(slash + 1));
    }
    for (;;) {
        r.expect_line("msg, cost or verdict");
        if (r.toks[0] == "msg") {
            if (r.toks.size() < 4) r.fail("msg needs round, role and kind");
            Message m;
            m.round = (unsigned)r.as_u64(r.toks[1]);
            if (r.toks[2] == "prover") m.role = Role::Prover;
            else if (r.toks[2] == "verifier") m.role = Role::Verifier;
            else r.fail("role must be prover or verifier");
            if (r.toks[3] == "commit") m.kind = MsgKind::Commit;
            else if (r.toks[3] == "challenge") m.kind = MsgKind::Challenge;
            else if (r.toks[3] == "response") m.kind = MsgKind::Response;
            else r.fail("kind must be commit, challenge or response");
            m.payload.assign(r.toks.begin() + 4, r.toks.end());
            f.messages.push_back(std::move(m));
        } else if (r.toks[0] == "cost") {
            auto field = [&](std::size_t i, const char* key) -> std::uint64_t {
                std::string pre = std::string(key) + "=";
                if (i >= r.toks.size() || r.toks[i].rfind(pre, 0) != 0)
                    r.fail(std::string("cost line: expected ") + pre + "<N>");
                return r.as_u64(r.toks[i].substr(pre.size()));
            };
            f.cost.prover_fieldops = field(1, "prover-fieldops");
            f.cost.verifier_fieldops = field(2, "verifier-fieldops");
            f.cost.prover_apps = field(3, "prover-apps");
            f.cost.verifier_apps = field(4, "verifier-apps");
            f.cost.comm_elems = field(5, "comm-elems");
            r.expect_keyword("verdict");
            if (r.toks.size() != 2 || (r.toks[1] != "accept" && r.toks[1] != "reject"))
                r.fail("verdict must be accept or reject");
            f.accepted = r.toks[1] == "accept";
            return f;
        } else {
            r.fail("expected msg or cost line");
        }
    }
}

void write_transcript(std::ostream& out, const TranscriptFile& f) {
    out << "%%bbt v1\n";
    out << "seed " << f.seed << "\n";
    out << "epsilon " << f.eps.num << "/" << f.eps.den << "\n";
    for (const Message& m : f.messages) {
        out << "msg " << m.round << " " << role_name(m.role) << " " << kind_name(m.kind);
        for (const std::string& t : m.payload) out << " " << t;
        out << "\n";
    }
    out << "cost prover-fieldops=" << f.cost.prover_fieldops
        << " verifier-fieldops=" << f.cost.verifier_fieldops
        << " prover-apps=" << f.cost.prover_apps << " verifier-apps=" << f.cost.verifier_apps
        << " comm-elems=" << f.cost.comm_elems << "\n";
    out << "verdict " << (f.accepted ? "accept" : "reject") << "\n";
}

void write_transcript_file(const std::string& path, const TranscriptFile& tr) {
    std::ofstream out(path);
    write_transcript(out, tr);
}

}  // namespace bbx
