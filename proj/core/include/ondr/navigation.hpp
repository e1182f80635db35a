#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ondr/connection_db.hpp"
#include "ondr/inventory.hpp"

namespace ondr {

enum class SessionState : std::uint8_t {
    Idle,
    FiberScanned,
    TargetKnown,
    Navigating,
    LedLit,
    Failed,
};

const char* to_string(SessionState state);

struct AuditEvent {
    std::uint64_t timestamp = 0; // session-monotonic tick
    std::string event;
    std::optional<Epc> epc;
};

/// One technician workflow: scan a fiber, look up its target connector,
/// locate it by multi-scan inventory, light its LED. The session owns LED
/// mutations on the registry; sessions must be serialized against each
/// other.
class NavigationSession {
public:
    NavigationSession(std::string id, TagRegistry& registry);

    /// Single-scan read of one fiber tag. Throws OutOfRange when the link
    /// cannot reach it, WrongKind for a connector tag, InvalidSessionState
    /// unless the session is Idle.
    Epc scan_fiber(const LinkParams& link, const Epc& fiber, double distance_cm);

    /// Database lookup of the scanned fiber's intended connector. Throws
    /// NotInDatabase (and fails the session) when no record exists.
    Epc lookup_target(const ConnectionDb& db);

    /// Multi-scan inventory over the connector population; lights the
    /// target's LED when identified and returns its panel position. Throws
    /// TargetNotFound (and fails the session) when the inventory ends
    /// without seeing the target.
    Position navigate_to_target(std::span<const TagInRange> connector_population,
                                const LinkParams& link, const ProtocolConfig& config);

    /// Turns every LED off and returns the session to Idle. Returns the
    /// audit trail accumulated so far.
    std::vector<AuditEvent> end_session();

    SessionState state() const { return state_; }
    const std::string& id() const { return id_; }
    const std::vector<AuditEvent>& audit() const { return audit_; }
    std::optional<Epc> target() const { return target_; }

private:
    void record(std::string event, std::optional<Epc> epc = std::nullopt);
    void fail(const std::string& reason);
    void require_state(SessionState expected, const char* operation);

    std::string id_;
    TagRegistry& registry_;
    SessionState state_ = SessionState::Idle;
    std::optional<Epc> fiber_;
    std::optional<Epc> target_;
    std::vector<AuditEvent> audit_;
    std::uint64_t clock_ = 0;
};

/// Line-delimited audit export: timestamp<TAB>session<TAB>event<TAB>epc
std::string audit_lines(const std::string& session_id, std::span<const AuditEvent> events);

} // namespace ondr
