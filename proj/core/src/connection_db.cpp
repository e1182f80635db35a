#include "ondr/connection_db.hpp"

#include <algorithm>

#include "ondr/errors.hpp"

namespace ondr {

const ConnectionRecord& ConnectionDb::connect(const TagRegistry& registry,
                                              const Epc& fiber, const Epc& connector) {
    const TagRecord* f = registry.find(fiber);
    const TagRecord* c = registry.find(connector);
    if (!f) throw UnknownEpc(fiber.hex());
    if (!c) throw UnknownEpc(connector.hex());
    if (f->kind != TagKind::Fiber) {
        throw KindMismatch(fiber.hex() + " is not a fiber tag");
    }
    if (c->kind != TagKind::Connector) {
        throw KindMismatch(connector.hex() + " is not a connector tag");
    }
    if (by_fiber_.count(fiber) != 0) {
        throw AlreadyConnected("fiber " + fiber.hex());
    }
    if (by_connector_.count(connector) != 0) {
        throw AlreadyConnected("connector " + connector.hex());
    }
    ConnectionRecord record{fiber, connector, next_stamp_++};
    by_connector_.emplace(connector, fiber);
    return by_fiber_.emplace(fiber, record).first->second;
}

const ConnectionRecord& ConnectionDb::restore(const TagRegistry& registry,
                                              const ConnectionRecord& record) {
    const auto& stored = connect(registry, record.fiber, record.connector);
    auto& mut = by_fiber_.at(record.fiber);
    mut.created_at = record.created_at;
    next_stamp_ = std::max(next_stamp_, record.created_at + 1);
    return stored;
}

std::optional<Epc> ConnectionDb::target_of(const Epc& fiber) const {
    auto it = by_fiber_.find(fiber);
    if (it == by_fiber_.end()) return std::nullopt;
    return it->second.connector;
}

std::optional<Epc> ConnectionDb::source_of(const Epc& connector) const {
    auto it = by_connector_.find(connector);
    if (it == by_connector_.end()) return std::nullopt;
    return it->second;
}

const ConnectionRecord* ConnectionDb::find(const Epc& fiber) const {
    auto it = by_fiber_.find(fiber);
    return it == by_fiber_.end() ? nullptr : &it->second;
}

} // namespace ondr
