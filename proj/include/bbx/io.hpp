/**
 * @file io.hpp
 * @brief Line-oriented text formats for matrices (%%bbm v1), certificates
 *        (%%bbc v1) and protocol transcripts (%%bbt v1).
 *
 * All three formats are canonical: parsing a printed file reproduces the
 * printed bytes.  Integers are decimal, tokens separated by single spaces,
 * polynomials written lowest coefficient first as `poly <deg> <c0 ... cd>`.
 */
#ifndef BBX_IO_HPP
#define BBX_IO_HPP

#include <iosfwd>
#include <optional>

#include "bbx/certify.hpp"
#include "bbx/displacement.hpp"

namespace bbx {

struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_no, const std::string& msg);
};

struct FieldError : std::runtime_error {
    explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

/// GF(q): prime q gives the prime field, prime power q = p^e the extension
/// with the canonical modulus.  Throws FieldError otherwise.
Field field_from_order(std::uint64_t q);

BBPtr read_matrix(std::istream& in);
BBPtr read_matrix_file(const std::string& path);

/// Writes dense / sparse / band / plus-lowrank backends natively; any other
/// backend is materialized and written dense.
void write_matrix(std::ostream& out, const BlackBox& bb);
void write_matrix_file(const std::string& path, const BlackBox& bb);

struct CertificateFile {
    std::string type;  // band|rank|displacement|nilpotent-few|nilpotent-many|invariant-few|invariant-many
    std::size_t n = 0;
    std::size_t k = 0;
    std::optional<BandCertificate> band;
    std::optional<RankCertificate> rank;
    std::optional<DisplacementCertificate> displacement;
    std::optional<NilpotentWitness> nilpotent;  // nilpotent-few
    std::optional<InvariantWitness> invariant;  // invariant-few
    std::optional<Poly> chi;                    // invariant-many
};

CertificateFile read_certificate(std::istream& in);
CertificateFile read_certificate_file(const std::string& path);
void write_certificate(std::ostream& out, const CertificateFile& cert);
void write_certificate_file(const std::string& path, const CertificateFile& cert);

struct TranscriptFile {
    std::uint64_t seed = 0;
    Ratio eps;
    std::vector<Message> messages;  // commit/challenge/response only
    CostMeters cost;
    bool accepted = false;
};

TranscriptFile transcript_to_file(const Transcript& tr);
TranscriptFile read_transcript(std::istream& in);
void write_transcript(std::ostream& out, const TranscriptFile& tr);
void write_transcript_file(const std::string& path, const TranscriptFile& tr);

}  // namespace bbx

#endif
