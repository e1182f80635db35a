#include "ondr/navigation.hpp"

#include "ondr/errors.hpp"
#include "ondr/radio_link.hpp"

namespace ondr {

const char* to_string(SessionState state) {
    switch (state) {
    case SessionState::Idle: return "idle";
    case SessionState::FiberScanned: return "fiber_scanned";
    case SessionState::TargetKnown: return "target_known";
    case SessionState::Navigating: return "navigating";
    case SessionState::LedLit: return "led_lit";
    case SessionState::Failed: return "failed";
    }
    return "idle";
}

NavigationSession::NavigationSession(std::string id, TagRegistry& registry)
    : id_(std::move(id)), registry_(registry) {}

void NavigationSession::record(std::string event, std::optional<Epc> epc) {
    audit_.push_back({++clock_, std::move(event), epc});
}

void NavigationSession::fail(const std::string& reason) {
    state_ = SessionState::Failed;
    record("failed: " + reason);
}

void NavigationSession::require_state(SessionState expected, const char* operation) {
    if (state_ != expected) {
        record(std::string("rejected: ") + operation + " in state " + to_string(state_));
        throw InvalidSessionState(std::string(operation) + " requires state " +
                                  to_string(expected) + ", session is " +
                                  to_string(state_));
    }
}

Epc NavigationSession::scan_fiber(const LinkParams& link, const Epc& fiber,
                                  double distance_cm) {
    require_state(SessionState::Idle, "scan_fiber");
    const TagRecord* record_ptr = registry_.find(fiber);
    if (!record_ptr) {
        fail("unknown tag " + fiber.hex());
        throw UnknownEpc(fiber.hex());
    }
    if (record_ptr->kind != TagKind::Fiber) {
        fail("scanned tag is not a fiber");
        throw WrongKind(fiber.hex() + " is a connector tag");
    }
    if (!is_readable(link, distance_cm)) {
        fail("fiber out of reception range");
        throw OutOfRange(fiber.hex() + " unreadable at " +
                         std::to_string(distance_cm) + " cm");
    }
    fiber_ = fiber;
    state_ = SessionState::FiberScanned;
    record("fiber_scanned", fiber);
    return fiber;
}

Epc NavigationSession::lookup_target(const ConnectionDb& db) {
    require_state(SessionState::FiberScanned, "lookup_target");
    const auto target = db.target_of(*fiber_);
    if (!target) {
        fail("fiber " + fiber_->hex() + " has no database record");
        throw NotInDatabase(fiber_->hex());
    }
    target_ = target;
    state_ = SessionState::TargetKnown;
    record("target_known", target);
    return *target;
}

Position NavigationSession::navigate_to_target(std::span<const TagInRange> connector_population,
                                               const LinkParams& link,
                                               const ProtocolConfig& config) {
    require_state(SessionState::TargetKnown, "navigate_to_target");
    state_ = SessionState::Navigating;

    const InventoryLog log = run_inventory(connector_population, link, config);
    if (log.identified.count(*target_) == 0) {
        fail("target " + target_->hex() + " not identified within budget");
        throw TargetNotFound(target_->hex());
    }

    // Exactly one LED lit at a time, across sessions sharing the registry.
    registry_.clear_leds();
    registry_.set_led(*target_, LedState::On);
    state_ = SessionState::LedLit;
    record("led_lit", target_);
    return registry_.at(*target_).position;
}

std::vector<AuditEvent> NavigationSession::end_session() {
    registry_.clear_leds();
    fiber_.reset();
    target_.reset();
    state_ = SessionState::Idle;
    record("session_ended");
    return audit_;
}

std::string audit_lines(const std::string& session_id, std::span<const AuditEvent> events) {
    std::string out;
    for (const AuditEvent& event : events) {
        out += std::to_string(event.timestamp);
        out += '\t';
        out += session_id;
        out += '\t';
        out += event.event;
        out += '\t';
        if (event.epc) out += event.epc->hex();
        out += '\n';
    }
    return out;
}

} // namespace ondr
