#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ondr/connection_db.hpp"
#include "ondr/tag.hpp"

namespace ondr {

/// One persisted audit record (NAVIGATE sessions and other service events).
struct AuditRecord {
    std::uint64_t timestamp = 0;
    std::string session;
    std::string event;
    std::string epc; // canonical hex, empty when not applicable

    bool operator==(const AuditRecord&) const = default;
};

/// Registry + connection database + audit log persisted as line-delimited
/// JSON. Saves are atomic (temp file + rename) and bump a generation
/// counter carried in the header line.
class Store {
public:
    /// Creates an empty, unsaved store bound to `path`.
    static Store create(std::filesystem::path path);

    /// Loads a store produced by save(). Throws MissingFile when the path
    /// does not exist and CorruptStore (naming the offending line) when the
    /// content does not validate.
    static Store load(std::filesystem::path path);

    /// Loads when the file exists, otherwise starts empty.
    static Store open(std::filesystem::path path);

    /// Atomic save; returns the new generation. On IoFailure the in-memory
    /// state (including the generation) is unchanged.
    std::uint64_t save();

    TagRegistry& registry() { return registry_; }
    const TagRegistry& registry() const { return registry_; }
    ConnectionDb& connections() { return connections_; }
    const ConnectionDb& connections() const { return connections_; }

    void append_audit(std::string session, std::string event, std::string epc = "");
    const std::vector<AuditRecord>& audit() const { return audit_; }

    std::uint64_t generation() const { return generation_; }
    const std::filesystem::path& path() const { return path_; }

    /// Value equality of the persisted content (registry, connections,
    /// audit); the path and generation are identity, not content.
    bool same_content(const Store& other) const {
        return registry_ == other.registry_ && connections_ == other.connections_ &&
               audit_ == other.audit_;
    }

private:
    explicit Store(std::filesystem::path path) : path_(std::move(path)) {}

    std::filesystem::path path_;
    TagRegistry registry_;
    ConnectionDb connections_;
    std::vector<AuditRecord> audit_;
    std::uint64_t generation_ = 0;
    std::uint64_t audit_clock_ = 0;
};

} // namespace ondr
