#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ondr/population.hpp"
#include "ondr/radio_link.hpp"
#include "ondr/rng.hpp"

namespace ondr {

/// One reply slot of an anticollision round.
struct SlotOutcome {
    enum class Kind : std::uint8_t { Empty, Success, Collision };

    std::uint32_t index = 0; // ordinal within the log
    Kind kind = Kind::Empty;
    Epc epc;                           // valid iff Success
    std::uint32_t collision_count = 0; // >= 2 iff Collision, else 0
    double duration_s = 0.0;
};

const char* to_string(SlotOutcome::Kind kind);

/// Slot-by-slot record of an inventory run.
struct InventoryLog {
    std::vector<SlotOutcome> slots;
    std::map<Epc, double> identified; // first-identification timestamp, seconds
    double elapsed_s = 0.0;           // == sum of slot durations
    std::uint32_t rounds = 0;
    bool budget_exhausted = false;
};

enum class QAdapt : std::uint8_t { Fixed, AdaptiveC };

/// Framed slotted-ALOHA parameters. Slot durations default to the measured
/// 119 SPS success rate with typical air-protocol proportions for collision
/// and empty slots. The default frame (2^6 slots) matches the 60-tag panel
/// this system is built around.
struct ProtocolConfig {
    int initial_q = 6;                  // frame size 2^q, q in [0, 15]
    QAdapt q_adapt = QAdapt::AdaptiveC;
    double q_step = 0.3;                // the +/- c of the Q update rule
    double t_success_s = 1.0 / 119.0;
    double t_collision_s = 0.0048;
    double t_empty_s = 0.0012;
    double time_budget_s = 2.0;
    std::uint64_t rng_seed = 1;

    /// Throws InvalidProtocolConfig when outside the legal envelope
    /// (q in [0,15], 0 < t_empty <= t_collision <= t_success, budget > 0).
    void validate() const;

    bool operator==(const ProtocolConfig&) const = default;
};

/// Runs one full frame of 2^q slots over the not-yet-identified tags in
/// `pending`. Every readable tag picks a slot uniformly at random; a sole
/// occupant is identified unless the link drops the read (miss_probability),
/// in which case the reader sees an empty slot and the tag stays pending.
/// Unreadable tags never transmit.
std::vector<SlotOutcome> run_round(std::span<const TagInRange> pending,
                                   const LinkParams& link, int q,
                                   const ProtocolConfig& config, Rng& rng);

/// Repeats rounds, adapting q per config, until every readable tag has been
/// identified or the time budget runs out. Deterministic for a fixed seed.
InventoryLog run_inventory(std::span<const TagInRange> population,
                           const LinkParams& link, const ProtocolConfig& config);

/// Recomputes elapsed time from the slots (equals log.elapsed_s).
double elapsed_time(const InventoryLog& log);

/// CSV export: slot_index,kind,epc,duration_s,cumulative_s
std::string inventory_csv(const InventoryLog& log);

} // namespace ondr
