#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "ondr/epc.hpp"
#include "ondr/tag.hpp"

namespace ondr {

/// Intended fiber <-> connector pairing. created_at is a monotonic stamp
/// assigned by the database, not wall-clock time.
struct ConnectionRecord {
    Epc fiber;
    Epc connector;
    std::uint64_t created_at = 0;

    bool operator==(const ConnectionRecord&) const = default;
};

/// The patching database: a partial one-to-one map fiber <-> connector.
class ConnectionDb {
public:
    using Map = std::map<Epc, ConnectionRecord>; // keyed by fiber EPC

    /// Records that `fiber` is supposed to be patched to `connector`.
    /// Both must be registered with the right kinds and not yet connected.
    /// Throws UnknownEpc, KindMismatch, AlreadyConnected.
    const ConnectionRecord& connect(const TagRegistry& registry,
                                    const Epc& fiber, const Epc& connector);

    /// Re-inserts a record with its original created_at stamp. Same
    /// validation as connect(); used when loading a persisted store.
    const ConnectionRecord& restore(const TagRegistry& registry,
                                    const ConnectionRecord& record);

    /// lookup by fiber; nullopt when the fiber has no record.
    std::optional<Epc> target_of(const Epc& fiber) const;
    /// reverse lookup by connector.
    std::optional<Epc> source_of(const Epc& connector) const;

    const ConnectionRecord* find(const Epc& fiber) const;
    std::size_t size() const { return by_fiber_.size(); }
    bool empty() const { return by_fiber_.empty(); }

    Map::const_iterator begin() const { return by_fiber_.begin(); }
    Map::const_iterator end() const { return by_fiber_.end(); }

    bool operator==(const ConnectionDb& other) const {
        return by_fiber_ == other.by_fiber_;
    }

private:
    Map by_fiber_;
    std::map<Epc, Epc> by_connector_;
    std::uint64_t next_stamp_ = 1;
};

} // namespace ondr
