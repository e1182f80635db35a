#include "ondr/inventory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ondr/errors.hpp"

namespace ondr {

const char* to_string(SlotOutcome::Kind kind) {
    switch (kind) {
    case SlotOutcome::Kind::Empty: return "empty";
    case SlotOutcome::Kind::Success: return "success";
    case SlotOutcome::Kind::Collision: return "collision";
    }
    return "empty";
}

void ProtocolConfig::validate() const {
    if (initial_q < 0 || initial_q > 15) {
        throw InvalidProtocolConfig("initial_q must be in [0, 15]");
    }
    if (!(t_empty_s > 0.0) || t_empty_s > t_collision_s || t_collision_s > t_success_s) {
        throw InvalidProtocolConfig("slot durations must satisfy 0 < t_empty <= t_collision <= t_success");
    }
    if (!(time_budget_s > 0.0)) {
        throw InvalidProtocolConfig("time_budget must be positive");
    }
    if (q_step < 0.0) {
        throw InvalidProtocolConfig("q_step must be non-negative");
    }
}

std::vector<SlotOutcome> run_round(std::span<const TagInRange> pending,
                                   const LinkParams& link, int q,
                                   const ProtocolConfig& config, Rng& rng) {
    if (q < 0 || q > 15) {
        throw InvalidProtocolConfig("q must be in [0, 15]");
    }
    const std::uint32_t frame = 1u << q;

    // Each readable tag draws its reply slot, in population order.
    std::vector<std::vector<const TagInRange*>> occupants(frame);
    for (const TagInRange& tag : pending) {
        if (!is_readable(link, tag.distance_cm)) continue;
        occupants[rng.below(frame)].push_back(&tag);
    }

    std::vector<SlotOutcome> slots(frame);
    for (std::uint32_t i = 0; i < frame; ++i) {
        SlotOutcome& slot = slots[i];
        slot.index = i;
        const auto& tags = occupants[i];
        if (tags.empty()) {
            slot.kind = SlotOutcome::Kind::Empty;
            slot.duration_s = config.t_empty_s;
        } else if (tags.size() == 1) {
            const TagInRange& tag = *tags.front();
            if (rng.bernoulli(miss_probability(link, tag.distance_cm))) {
                // Reply lost below the floor: the reader sees an empty slot.
                slot.kind = SlotOutcome::Kind::Empty;
                slot.duration_s = config.t_empty_s;
            } else {
                slot.kind = SlotOutcome::Kind::Success;
                slot.epc = tag.epc;
                slot.duration_s = config.t_success_s;
            }
        } else {
            slot.kind = SlotOutcome::Kind::Collision;
            slot.collision_count = static_cast<std::uint32_t>(tags.size());
            slot.duration_s = config.t_collision_s;
        }
    }
    return slots;
}

InventoryLog run_inventory(std::span<const TagInRange> population,
                           const LinkParams& link, const ProtocolConfig& config) {
    config.validate();
    Rng rng(config.rng_seed);

    std::vector<TagInRange> pending;
    for (const TagInRange& tag : population) {
        if (is_readable(link, tag.distance_cm)) pending.push_back(tag);
    }

    InventoryLog log;
    double qfp = static_cast<double>(config.initial_q);
    int q = config.initial_q;

    for (;;) {
        const auto slots = run_round(pending, link, q, config, rng);
        ++log.rounds;

        std::uint32_t collisions = 0;
        std::uint32_t empties = 0;
        for (const SlotOutcome& slot : slots) {
            log.elapsed_s += slot.duration_s;
            SlotOutcome stored = slot;
            stored.index = static_cast<std::uint32_t>(log.slots.size());
            log.slots.push_back(stored);
            switch (slot.kind) {
            case SlotOutcome::Kind::Success:
                log.identified.emplace(slot.epc, log.elapsed_s);
                std::erase_if(pending, [&](const TagInRange& t) { return t.epc == slot.epc; });
                break;
            case SlotOutcome::Kind::Collision:
                ++collisions;
                break;
            case SlotOutcome::Kind::Empty:
                ++empties;
                break;
            }
        }

        if (pending.empty()) break;
        if (log.elapsed_s >= config.time_budget_s) {
            log.budget_exhausted = true;
            break;
        }

        if (config.q_adapt == QAdapt::AdaptiveC) {
            // Round-granularity Q +/- c rule: nudge towards larger frames when
            // collisions dominate, smaller when empties do.
            if (collisions > empties) {
                qfp = std::min(15.0, qfp + config.q_step);
            } else if (empties > collisions) {
                qfp = std::max(0.0, qfp - config.q_step);
            }
            q = static_cast<int>(std::lround(qfp));
        }
    }
    return log;
}

double elapsed_time(const InventoryLog& log) {
    double total = 0.0;
    for (const SlotOutcome& slot : log.slots) total += slot.duration_s;
    return total;
}

std::string inventory_csv(const InventoryLog& log) {
    std::string out = "slot_index,kind,epc,duration_s,cumulative_s\n";
    char line[128];
    double cumulative = 0.0;
    for (const SlotOutcome& slot : log.slots) {
        cumulative += slot.duration_s;
        std::snprintf(line, sizeof(line), "%u,%s,%s,%.9f,%.9f\n", slot.index,
                      to_string(slot.kind),
                      slot.kind == SlotOutcome::Kind::Success ? slot.epc.hex().c_str() : "",
                      slot.duration_s, cumulative);
        out += line;
    }
    return out;
}

} // namespace ondr
