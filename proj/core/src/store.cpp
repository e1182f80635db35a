#include "ondr/store.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ondr/errors.hpp"

namespace ondr {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatName = "ondr-store";
constexpr int kFormatVersion = 1;

json tag_to_json(const TagRecord& record) {
    json j{{"type", "tag"},
           {"epc", record.epc.hex()},
           {"kind", to_string(record.kind)},
           {"spi_mode", to_string(record.spi_mode)},
           {"led", to_string(record.led)},
           {"x_in", record.position.x_in},
           {"y_in", record.position.y_in}};
    if (record.attached_to) j["attached_to"] = record.attached_to->hex();
    return j;
}

TagKind kind_from_string(const std::string& s) {
    if (s == "fiber") return TagKind::Fiber;
    if (s == "connector") return TagKind::Connector;
    throw CorruptStore("unknown tag kind \"" + s + "\"");
}

SpiMode mode_from_string(const std::string& s) {
    if (s == "master") return SpiMode::Master;
    if (s == "slave") return SpiMode::Slave;
    if (s == "idle") return SpiMode::Idle;
    throw CorruptStore("unknown spi mode \"" + s + "\"");
}

LedState led_from_string(const std::string& s) {
    if (s == "on") return LedState::On;
    if (s == "off") return LedState::Off;
    throw CorruptStore("unknown led state \"" + s + "\"");
}

} // namespace

Store Store::create(std::filesystem::path path) { return Store(std::move(path)); }

Store Store::open(std::filesystem::path path) {
    if (std::filesystem::exists(path)) return load(std::move(path));
    return create(std::move(path));
}

Store Store::load(std::filesystem::path path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingFile(path.string());
    }
    Store store(std::move(path));

    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;

    // Attachments may point forward in the file; resolve them after all
    // tags are registered.
    std::vector<std::pair<Epc, Epc>> attachments;

    try {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, /*allow_exceptions=*/true);

            if (!have_header) {
                if (j.value("format", "") != kFormatName) {
                    throw CorruptStore("missing store header");
                }
                if (j.at("version").get<int>() != kFormatVersion) {
                    throw CorruptStore("unsupported store version");
                }
                store.generation_ = j.at("generation").get<std::uint64_t>();
                have_header = true;
                continue;
            }

            const std::string type = j.at("type").get<std::string>();
            if (type == "tag") {
                TagRecord record;
                record.epc = Epc::parse(j.at("epc").get<std::string>());
                record.kind = kind_from_string(j.at("kind").get<std::string>());
                record.spi_mode = mode_from_string(j.at("spi_mode").get<std::string>());
                record.led = led_from_string(j.at("led").get<std::string>());
                record.position = {j.at("x_in").get<double>(), j.at("y_in").get<double>()};
                if (j.contains("attached_to")) {
                    attachments.emplace_back(
                        record.epc, Epc::parse(j.at("attached_to").get<std::string>()));
                }
                store.registry_.add(record);
            } else if (type == "connection") {
                ConnectionRecord record;
                record.fiber = Epc::parse(j.at("fiber").get<std::string>());
                record.connector = Epc::parse(j.at("connector").get<std::string>());
                record.created_at = j.at("created_at").get<std::uint64_t>();
                store.connections_.restore(store.registry_, record);
            } else if (type == "audit") {
                AuditRecord record;
                record.timestamp = j.at("timestamp").get<std::uint64_t>();
                record.session = j.at("session").get<std::string>();
                record.event = j.at("event").get<std::string>();
                record.epc = j.value("epc", "");
                store.audit_clock_ = std::max(store.audit_clock_, record.timestamp);
                store.audit_.push_back(std::move(record));
            } else {
                throw CorruptStore("unknown record type \"" + type + "\"");
            }
        }
    } catch (const CorruptStore& e) {
        throw CorruptStore("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
        // Domain validation failures (duplicate EPC, dangling reference, ...)
        throw CorruptStore("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const json::exception& e) {
        throw CorruptStore("line " + std::to_string(line_no) + ": " + e.what());
    }

    if (!have_header) {
        throw CorruptStore("empty file: missing store header");
    }

    for (const auto& [from, to] : attachments) {
        try {
            // one-sided restore: the partner carries its own attachment record
            store.registry_.set_attachment(from, to);
        } catch (const Error& e) {
            throw CorruptStore("tag " + from.hex() + ": " + e.what());
        }
    }
    return store;
}

std::uint64_t Store::save() {
    const std::uint64_t next_generation = generation_ + 1;

    std::ostringstream out;
    out << json{{"format", kFormatName},
                {"version", kFormatVersion},
                {"generation", next_generation}}
               .dump()
        << '\n';
    for (const auto& [epc, record] : registry_) {
        out << tag_to_json(record).dump() << '\n';
    }
    for (const auto& [fiber, record] : connections_) {
        out << json{{"type", "connection"},
                    {"fiber", record.fiber.hex()},
                    {"connector", record.connector.hex()},
                    {"created_at", record.created_at}}
                   .dump()
            << '\n';
    }
    for (const AuditRecord& record : audit_) {
        json j{{"type", "audit"},
               {"timestamp", record.timestamp},
               {"session", record.session},
               {"event", record.event}};
        if (!record.epc.empty()) j["epc"] = record.epc;
        out << j.dump() << '\n';
    }

    // Write-temp-then-rename keeps the previous generation intact if we die
    // mid-save.
    const std::filesystem::path temp = path_.string() + ".tmp";
    {
        std::ofstream file(temp, std::ios::trunc);
        if (!file) {
            throw IoFailure("cannot open " + temp.string() + ": " + std::strerror(errno));
        }
        file << out.str();
        file.flush();
        if (!file) {
            std::error_code ec;
            std::filesystem::remove(temp, ec);
            throw IoFailure("short write to " + temp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(temp, path_, ec);
    if (ec) {
        std::filesystem::remove(temp, ec);
        throw IoFailure("rename to " + path_.string() + " failed");
    }
    generation_ = next_generation;
    return generation_;
}

void Store::append_audit(std::string session, std::string event, std::string epc) {
    audit_.push_back({++audit_clock_, std::move(session), std::move(event), std::move(epc)});
}

} // namespace ondr
