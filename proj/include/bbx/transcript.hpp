/**
 * @file transcript.hpp
 * @brief Ordered message log and cost meters for the interactive protocols.
 *
 * Meters charge field operations and black-box applications to whichever
 * role is currently active; the protocol drivers run prover and verifier
 * sections strictly sequentially, bracketing each with begin_role/end_role
 * snapshots of the shared counters.  Communication is counted in field
 * elements, declared per message by the sender.
 */
#ifndef BBX_TRANSCRIPT_HPP
#define BBX_TRANSCRIPT_HPP

#include <string>

#include "bbx/blackbox.hpp"
#include "bbx/ratio.hpp"

namespace bbx {

struct ProtocolAbort : std::runtime_error {
    explicit ProtocolAbort(const std::string& what) : std::runtime_error(what) {}
};
/// An honest prover could not produce the required witness: the claim being
/// certified is false.  Reported, never silently converted to a cheat.
struct ProverStuck : std::runtime_error {
    explicit ProverStuck(const std::string& what) : std::runtime_error(what) {}
};

enum class Role { Prover, Verifier };
enum class MsgKind { Commit, Challenge, Response, Verdict };

struct Message {
    unsigned round = 0;
    Role role = Role::Prover;
    MsgKind kind = MsgKind::Commit;
    std::vector<std::string> payload;  // serialization tokens
};

struct CostMeters {
    std::uint64_t prover_fieldops = 0;
    std::uint64_t verifier_fieldops = 0;
    std::uint64_t prover_apps = 0;
    std::uint64_t verifier_apps = 0;
    std::uint64_t comm_elems = 0;
};

class Transcript {
public:
    Transcript(std::uint64_t seed, Ratio eps) : seed_(seed), eps_(eps) {}

    std::uint64_t seed() const { return seed_; }
    const Ratio& eps() const { return eps_; }
    const std::vector<Message>& messages() const { return messages_; }
    const CostMeters& cost() const { return cost_; }
    bool accepted() const { return accepted_; }

    /// Record a message; `elems` is the number of field elements it carries.
    void add(unsigned round, Role role, MsgKind kind, std::vector<std::string> payload,
             std::uint64_t elems);
    void set_verdict(unsigned round, bool accept);

    /// Charge subsequent field ops and applications on (F, bb) to `role`
    /// until end_role is called.  Sections must not nest.
    void begin_role(Role role, const Field& F, const BlackBox& bb);
    void end_role();

private:
    std::uint64_t seed_;
    Ratio eps_;
    std::vector<Message> messages_;
    CostMeters cost_;
    bool accepted_ = false;
    bool verdict_set_ = false;

    bool in_section_ = false;
    Role section_role_ = Role::Prover;
    const Field* section_field_ = nullptr;
    const BlackBox* section_bb_ = nullptr;
    std::uint64_t fops0_ = 0, apps0_ = 0;
};

const char* role_name(Role r);
const char* kind_name(MsgKind k);

}  // namespace bbx

#endif
