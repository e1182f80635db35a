#include "ondr/pairing.hpp"

#include <algorithm>
#include <cstdio>

#include "ondr/errors.hpp"

namespace ondr {

const char* to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::SlaveAbsent: return "slave_absent";
    case Verdict::NotInDatabase: return "not_in_database";
    }
    return "match";
}

std::optional<Epc> spi_exchange(const TagRecord& master, const TagRegistry& registry) {
    if (master.kind != TagKind::Fiber || master.spi_mode != SpiMode::Master) {
        throw NotMaster(master.epc.hex());
    }
    if (!master.attached_to) return std::nullopt;
    const TagRecord* partner = registry.find(*master.attached_to);
    if (!partner || partner->spi_mode != SpiMode::Slave) return std::nullopt;
    return partner->epc;
}

VerificationOutcome verify_pair(const ConnectionDb& db, const TagRegistry& registry,
                                const Epc& fiber, std::optional<Epc> observed) {
    const TagRecord* record = registry.find(fiber);
    if (!record) throw UnknownEpc(fiber.hex());
    if (record->kind != TagKind::Fiber) {
        throw WrongKind(fiber.hex() + " is not a fiber tag");
    }

    VerificationOutcome outcome;
    outcome.fiber = fiber;
    outcome.expected_connector = db.target_of(fiber);
    outcome.observed_connector = observed;

    // An unrecorded fiber is reported as such even when nothing was observed:
    // without a database record there is no expectation to compare against.
    if (!outcome.expected_connector) {
        outcome.verdict = Verdict::NotInDatabase;
    } else if (!observed) {
        outcome.verdict = Verdict::SlaveAbsent;
    } else if (*observed == *outcome.expected_connector) {
        outcome.verdict = Verdict::Match;
    } else {
        outcome.verdict = Verdict::Mismatch;
    }
    return outcome;
}

namespace {

/// Singulated EPCs in identification order.
std::vector<Epc> identification_order(const InventoryLog& log) {
    std::vector<Epc> order;
    order.reserve(log.identified.size());
    for (const SlotOutcome& slot : log.slots) {
        if (slot.kind == SlotOutcome::Kind::Success) order.push_back(slot.epc);
    }
    return order;
}

} // namespace

VerificationReport verify_all(const ConnectionDb& db, const TagRegistry& registry,
                              std::span<const TagInRange> population,
                              const LinkParams& link, const ProtocolConfig& config,
                              const VerifyOptions& options) {
    std::vector<TagInRange> fibers;
    for (const TagInRange& tag : population) {
        if (registry.at(tag.epc).kind == TagKind::Fiber) fibers.push_back(tag);
    }

    VerificationReport report;
    report.log = run_inventory(fibers, link, config);
    report.reader_identifications = report.log.identified.size();

    for (const Epc& fiber : identification_order(report.log)) {
        const auto observed = spi_exchange(registry.at(fiber), registry);
        report.outcomes.push_back(verify_pair(db, registry, fiber, observed));
    }
    report.elapsed_s = report.log.elapsed_s +
                       options.spi_exchange_cost_s * static_cast<double>(report.outcomes.size());
    return report;
}

VerificationReport verify_all_baseline(const ConnectionDb& db, const TagRegistry& registry,
                                       std::span<const TagInRange> population,
                                       const LinkParams& link, const ProtocolConfig& config,
                                       const VerifyOptions& options) {
    (void)options;
    VerificationReport report;
    report.log = run_inventory(population, link, config);
    report.reader_identifications = report.log.identified.size();

    // Pair the two radio reads through physical co-location: the connector
    // at a fiber's port counts as observed only if it was itself singulated.
    for (const Epc& epc : identification_order(report.log)) {
        const TagRecord& record = registry.at(epc);
        if (record.kind != TagKind::Fiber) continue;
        std::optional<Epc> observed;
        if (record.attached_to && report.log.identified.count(*record.attached_to) != 0) {
            observed = record.attached_to;
        }
        report.outcomes.push_back(verify_pair(db, registry, epc, observed));
    }
    report.elapsed_s = report.log.elapsed_s;
    return report;
}

std::string verification_csv(const VerificationReport& report) {
    std::string out = "fiber,expected,observed,verdict\n";
    std::size_t matches = 0;
    for (const VerificationOutcome& outcome : report.outcomes) {
        out += outcome.fiber.hex();
        out += ',';
        out += outcome.expected_connector ? outcome.expected_connector->hex() : "";
        out += ',';
        out += outcome.observed_connector ? outcome.observed_connector->hex() : "";
        out += ',';
        out += to_string(outcome.verdict);
        out += '\n';
        if (outcome.verdict == Verdict::Match) ++matches;
    }
    char summary[160];
    std::snprintf(summary, sizeof(summary),
                  "# pairs=%zu matches=%zu identifications=%zu elapsed_s=%.9f\n",
                  report.outcomes.size(), matches, report.reader_identifications,
                  report.elapsed_s);
    out += summary;
    return out;
}

} // namespace ondr
