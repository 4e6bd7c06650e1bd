#include "bbx/transcript.hpp"

namespace bbx {

void Transcript::add(unsigned round, Role role, MsgKind kind, std::vector<std::string> payload,
                     std::uint64_t elems) {
    if (verdict_set_) throw ProtocolAbort("message after verdict");
    messages_.push_back({round, role, kind, std::move(payload)});
    cost_.comm_elems += elems;
}

void Transcript::set_verdict(unsigned round, bool accept) {
    if (verdict_set_) throw ProtocolAbort("duplicate verdict");
    messages_.push_back({round, Role::Verifier, MsgKind::Verdict,
                         {accept ? "accept" : "reject"}});
    accepted_ = accept;
    verdict_set_ = true;
}

void Transcript::begin_role(Role role, const Field& F, const BlackBox& bb) {
    if (in_section_) throw ProtocolAbort("nested meter section");
    in_section_ = true;
    section_role_ = role;
    section_field_ = &F;
    section_bb_ = &bb;
    fops0_ = F.ops();
    apps0_ = bb.total_applies();
}

void Transcript::end_role() {
    if (!in_section_) throw ProtocolAbort("end_role without begin_role");
    std::uint64_t df = section_field_->ops() - fops0_;
    std::uint64_t da = section_bb_->total_applies() - apps0_;
    if (section_role_ == Role::Prover) {
        cost_.prover_fieldops += df;
        cost_.prover_apps += da;
    } else {
        cost_.verifier_fieldops += df;
        cost_.verifier_apps += da;
    }
    in_section_ = false;
}

const char* role_name(Role r) { return r == Role::Prover ? "prover" : "verifier"; }

const char* kind_name(MsgKind k) {
    switch (k) {
        case MsgKind::Commit: return "commit";
        case MsgKind::Challenge: return "challenge";
        case MsgKind::Response: return "response";
        case MsgKind::Verdict: return "verdict";
    }
    return "?";
}

}  // namespace bbx
