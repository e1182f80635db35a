#include "ondr/tag.hpp"

#include "ondr/errors.hpp"

namespace ondr {

bool mode_allowed(TagKind kind, SpiMode mode) {
    switch (kind) {
    case TagKind::Fiber:
        return mode == SpiMode::Master || mode == SpiMode::Idle;
    case TagKind::Connector:
        return mode == SpiMode::Slave || mode == SpiMode::Idle;
    }
    return false;
}

const char* to_string(TagKind kind) {
    return kind == TagKind::Fiber ? "fiber" : "connector";
}

const char* to_string(SpiMode mode) {
    switch (mode) {
    case SpiMode::Master: return "master";
    case SpiMode::Slave: return "slave";
    case SpiMode::Idle: return "idle";
    }
    return "idle";
}

const char* to_string(LedState led) {
    return led == LedState::On ? "on" : "off";
}

namespace {

void check_record(const TagRecord& record) {
    if (!mode_allowed(record.kind, record.spi_mode)) {
        throw InvalidModeForKind(std::string(to_string(record.kind)) + " tag " +
                                 record.epc.hex() + " cannot be in " +
                                 to_string(record.spi_mode) + " mode");
    }
    if (record.led == LedState::On && record.kind != TagKind::Connector) {
        throw InvalidLedState("LED on non-connector tag " + record.epc.hex());
    }
}

} // namespace

const TagRecord& TagRegistry::add(const TagRecord& record) {
    check_record(record);
    if (tags_.count(record.epc) != 0) {
        throw DuplicateEpc(record.epc.hex());
    }
    if (record.attached_to) {
        const TagRecord* partner = find(*record.attached_to);
        if (!partner) {
            throw UnknownEpc("attached_to " + record.attached_to->hex());
        }
        if (partner->kind == record.kind) {
            throw KindMismatch("attachment " + record.epc.hex() + " -> " +
                               record.attached_to->hex() + " joins two " +
                               to_string(record.kind) + " tags");
        }
    }
    return tags_.emplace(record.epc, record).first->second;
}

void TagRegistry::attach(const Epc& a, const Epc& b) {
    set_attachment(a, b);
    set_attachment(b, a);
}

void TagRegistry::set_attachment(const Epc& tag, std::optional<Epc> partner) {
    auto it = tags_.find(tag);
    if (it == tags_.end()) throw UnknownEpc(tag.hex());
    if (partner) {
        auto pit = tags_.find(*partner);
        if (pit == tags_.end()) throw UnknownEpc(partner->hex());
        if (pit->second.kind == it->second.kind) {
            throw KindMismatch("cannot attach two " +
                               std::string(to_string(it->second.kind)) + " tags");
        }
    }
    it->second.attached_to = partner;
}

const TagRecord* TagRegistry::find(const Epc& epc) const {
    auto it = tags_.find(epc);
    return it == tags_.end() ? nullptr : &it->second;
}

const TagRecord& TagRegistry::at(const Epc& epc) const {
    const TagRecord* record = find(epc);
    if (!record) throw UnknownEpc(epc.hex());
    return *record;
}

void TagRegistry::set_spi_mode(const Epc& epc, SpiMode mode) {
    auto it = tags_.find(epc);
    if (it == tags_.end()) throw UnknownEpc(epc.hex());
    if (!mode_allowed(it->second.kind, mode)) {
        throw InvalidModeForKind(std::string(to_string(it->second.kind)) +
                                 " tag cannot be in " + to_string(mode) + " mode");
    }
    it->second.spi_mode = mode;
}

void TagRegistry::set_led(const Epc& epc, LedState led) {
    auto it = tags_.find(epc);
    if (it == tags_.end()) throw UnknownEpc(epc.hex());
    if (led == LedState::On && it->second.kind != TagKind::Connector) {
        throw InvalidLedState("LED on non-connector tag " + epc.hex());
    }
    it->second.led = led;
}

std::size_t TagRegistry::clear_leds() {
    std::size_t n = 0;
    for (auto& [epc, record] : tags_) {
        if (record.led == LedState::On) {
            record.led = LedState::Off;
            ++n;
        }
    }
    return n;
}

std::vector<Epc> TagRegistry::lit_leds() const {
    std::vector<Epc> lit;
    for (const auto& [epc, record] : tags_) {
        if (record.led == LedState::On) lit.push_back(epc);
    }
    return lit;
}

std::vector<Epc> TagRegistry::epcs() const {
    std::vector<Epc> out;
    out.reserve(tags_.size());
    for (const auto& [epc, record] : tags_) out.push_back(epc);
    return out;
}

std::vector<Epc> TagRegistry::epcs_of_kind(TagKind kind) const {
    std::vector<Epc> out;
    for (const auto& [epc, record] : tags_) {
        if (record.kind == kind) out.push_back(epc);
    }
    return out;
}

} // namespace ondr
