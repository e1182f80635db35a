#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ondr/epc.hpp"

namespace ondr {

enum class TagKind : std::uint8_t { Fiber, Connector };
enum class SpiMode : std::uint8_t { Master, Slave, Idle };
enum class LedState : std::uint8_t { Off, On };

/// Position on the patch panel, in inches.
struct Position {
    double x_in = 0.0;
    double y_in = 0.0;

    bool operator==(const Position&) const = default;
};

/// Fiber tags may be SPI masters, connector tags SPI slaves; Idle is legal
/// for both. LEDs exist on connector tags only.
bool mode_allowed(TagKind kind, SpiMode mode);

const char* to_string(TagKind kind);
const char* to_string(SpiMode mode);
const char* to_string(LedState led);

struct TagRecord {
    Epc epc;
    TagKind kind = TagKind::Fiber;
    SpiMode spi_mode = SpiMode::Idle;
    LedState led = LedState::Off;
    Position position;
    std::optional<Epc> attached_to; // physically co-located partner tag

    bool operator==(const TagRecord&) const = default;
};

/// All tags known to the system, keyed by EPC. Iteration order is EPC order,
/// which keeps everything built on top of the registry deterministic.
class TagRegistry {
public:
    using Map = std::map<Epc, TagRecord>;

    /// Registers a tag. Throws DuplicateEpc, InvalidModeForKind,
    /// InvalidLedState; when attached_to is set it must resolve to an
    /// already-registered tag of the opposite kind (UnknownEpc/KindMismatch).
    const TagRecord& add(const TagRecord& record);

    /// Sets attached_to on both tags. They must exist and be of opposite
    /// kinds.
    void attach(const Epc& a, const Epc& b);

    /// One-sided attachment update (attachments can end up asymmetric after
    /// re-patching). Partner, when given, must exist and be of the opposite
    /// kind.
    void set_attachment(const Epc& tag, std::optional<Epc> partner);

    const TagRecord* find(const Epc& epc) const;
    const TagRecord& at(const Epc& epc) const; // throws UnknownEpc
    bool contains(const Epc& epc) const { return tags_.count(epc) != 0; }
    std::size_t size() const { return tags_.size(); }
    bool empty() const { return tags_.empty(); }

    void set_spi_mode(const Epc& epc, SpiMode mode);
    /// LEDs exist on connector tags only; turning a fiber LED on throws
    /// InvalidLedState.
    void set_led(const Epc& epc, LedState led);
    /// Turns every LED off. Returns how many were on.
    std::size_t clear_leds();
    std::vector<Epc> lit_leds() const;

    std::vector<Epc> epcs() const;
    std::vector<Epc> epcs_of_kind(TagKind kind) const;

    Map::const_iterator begin() const { return tags_.begin(); }
    Map::const_iterator end() const { return tags_.end(); }

    bool operator==(const TagRegistry&) const = default;

private:
    Map tags_;
};

} // namespace ondr
