#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ondr/connection_db.hpp"
#include "ondr/inventory.hpp"

namespace ondr {

enum class Verdict : std::uint8_t { Match, Mismatch, SlaveAbsent, NotInDatabase };

const char* to_string(Verdict verdict);

/// Result of checking one fiber against the patching database.
struct VerificationOutcome {
    Epc fiber;
    std::optional<Epc> expected_connector; // from the database
    std::optional<Epc> observed_connector; // from the SPI exchange (or the
                                           // second radio read in baseline mode)
    Verdict verdict = Verdict::Match;
};

struct VerificationReport {
    std::vector<VerificationOutcome> outcomes; // in singulation order
    std::size_t reader_identifications = 0;    // radio singulations consumed
    double elapsed_s = 0.0;
    InventoryLog log; // the underlying inventory run
};

struct VerifyOptions {
    /// Extra reader time per SPI exchange. 0 by default: the exchange rides
    /// inside the singulation dialogue.
    double spi_exchange_cost_s = 0.0;
};

/// Wired EPC exchange: the master asks its physically attached partner for
/// its EPC. Returns the partner's EPC when the partner exists in the
/// registry and is in Slave mode; nullopt otherwise (no attachment, partner
/// unregistered, or partner not responding). Throws NotMaster unless the
/// tag is a fiber in Master mode.
std::optional<Epc> spi_exchange(const TagRecord& master, const TagRegistry& registry);

/// Compares an observed connector EPC against the database record for
/// `fiber`. Throws UnknownEpc / WrongKind if the fiber is not a registered
/// fiber tag.
VerificationOutcome verify_pair(const ConnectionDb& db, const TagRegistry& registry,
                                const Epc& fiber, std::optional<Epc> observed);

/// SPI-mode verification: inventories the fiber (master) tags only; each
/// singulated fiber fetches its partner's EPC over the wired exchange and
/// is checked against the database. One radio identification per pair.
VerificationReport verify_all(const ConnectionDb& db, const TagRegistry& registry,
                              std::span<const TagInRange> population,
                              const LinkParams& link, const ProtocolConfig& config,
                              const VerifyOptions& options = {});

/// Comparator without the SPI exchange: inventories both sides by radio and
/// pairs them through the database. Two identifications per pair.
VerificationReport verify_all_baseline(const ConnectionDb& db, const TagRegistry& registry,
                                       std::span<const TagInRange> population,
                                       const LinkParams& link, const ProtocolConfig& config,
                                       const VerifyOptions& options = {});

/// CSV export: fiber,expected,observed,verdict rows plus a trailing summary
/// comment line.
std::string verification_csv(const VerificationReport& report);

} // namespace ondr
