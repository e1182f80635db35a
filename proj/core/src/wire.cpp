#include "ondr/wire.hpp"

#include <json.hpp>

#include "ondr/errors.hpp"
#include "ondr/navigation.hpp"
#include "ondr/pairing.hpp"
#include "ondr/population.hpp"

namespace ondr {

using json = nlohmann::ordered_json;

namespace {

Epc epc_field(const json& j, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string()) {
        throw MalformedRequest(std::string("missing field \"") + field + "\"");
    }
    return Epc::parse(j.at(field).get<std::string>());
}

json handle_register(Store& store, const json& request) {
    TagRecord record;
    record.epc = epc_field(request, "epc");
    const std::string kind = request.value("kind", "");
    if (kind == "fiber") {
        record.kind = TagKind::Fiber;
        record.spi_mode = SpiMode::Master;
    } else if (kind == "connector") {
        record.kind = TagKind::Connector;
        record.spi_mode = SpiMode::Slave;
    } else {
        throw MalformedRequest("kind must be \"fiber\" or \"connector\"");
    }
    if (request.contains("spi_mode")) {
        const std::string mode = request.at("spi_mode").get<std::string>();
        if (mode == "master") record.spi_mode = SpiMode::Master;
        else if (mode == "slave") record.spi_mode = SpiMode::Slave;
        else if (mode == "idle") record.spi_mode = SpiMode::Idle;
        else throw MalformedRequest("bad spi_mode \"" + mode + "\"");
    }
    record.position.x_in = request.value("x_in", 0.0);
    record.position.y_in = request.value("y_in", 0.0);
    if (request.contains("attached_to")) {
        record.attached_to = epc_field(request, "attached_to");
    }
    store.registry().add(record); // validates mode, duplicate, attachment
    if (record.attached_to) {
        store.registry().attach(record.epc, *record.attached_to);
    }
    store.save();
    return {{"status", "OK"}, {"epc", record.epc.hex()}};
}

json handle_connect(Store& store, const json& request) {
    const Epc fiber = epc_field(request, "fiber");
    const Epc connector = epc_field(request, "connector");
    store.connections().connect(store.registry(), fiber, connector);
    store.save();
    return {{"status", "OK"}, {"fiber", fiber.hex()}, {"connector", connector.hex()}};
}

json handle_lookup(Store& store, const json& request) {
    const Epc fiber = epc_field(request, "fiber");
    store.registry().at(fiber); // UnknownEpc for unregistered tags
    const auto connector = store.connections().target_of(fiber);
    if (!connector) throw NotInDatabase(fiber.hex());
    return {{"status", "OK"}, {"connector", connector->hex()}};
}

json handle_verify(Store& store, const ServiceConfig& config, const json& request) {
    ProtocolConfig protocol = config.protocol;
    protocol.rng_seed = request.value("seed", protocol.rng_seed);
    const double distance = request.value("distance_cm", config.tag_distance_cm);
    const bool baseline = request.value("baseline", false);

    const auto population = build_population(store.registry(), distance);
    const VerificationReport report =
        baseline ? verify_all_baseline(store.connections(), store.registry(), population,
                                       config.link, protocol)
                 : verify_all(store.connections(), store.registry(), population,
                              config.link, protocol);

    std::size_t matches = 0, mismatches = 0, slave_absent = 0, unrecorded = 0;
    for (const auto& outcome : report.outcomes) {
        switch (outcome.verdict) {
        case Verdict::Match: ++matches; break;
        case Verdict::Mismatch: ++mismatches; break;
        case Verdict::SlaveAbsent: ++slave_absent; break;
        case Verdict::NotInDatabase: ++unrecorded; break;
        }
    }
    return {{"status", "OK"},
            {"mode", baseline ? "baseline" : "spi"},
            {"pairs_checked", report.outcomes.size()},
            {"matches", matches},
            {"mismatches", mismatches},
            {"slave_absent", slave_absent},
            {"not_in_database", unrecorded},
            {"reader_identifications", report.reader_identifications},
            {"elapsed_s", report.elapsed_s}};
}

json handle_navigate(Store& store, const ServiceConfig& config, const json& request) {
    const Epc fiber = epc_field(request, "fiber");
    const double distance = request.value("distance_cm", config.tag_distance_cm);

    NavigationSession session("wire", store.registry());
    json response;
    try {
        session.scan_fiber(config.link, fiber, distance);
        session.lookup_target(store.connections());
        const auto population =
            build_population(store.registry(), distance, TagKind::Connector);
        ProtocolConfig protocol = config.protocol;
        protocol.rng_seed = request.value("seed", protocol.rng_seed);
        const Position position =
            session.navigate_to_target(population, config.link, protocol);
        response = {{"status", "OK"},
                    {"connector", session.target()->hex()},
                    {"x_in", position.x_in},
                    {"y_in", position.y_in}};
    } catch (...) {
        for (const AuditEvent& event : session.audit()) {
            store.append_audit(session.id(), event.event,
                               event.epc ? event.epc->hex() : "");
        }
        store.save();
        throw;
    }
    for (const AuditEvent& event : session.audit()) {
        store.append_audit(session.id(), event.event, event.epc ? event.epc->hex() : "");
    }
    store.save();
    return response;
}

json handle_inventory(Store& store, const ServiceConfig& config, const json& request) {
    ProtocolConfig protocol = config.protocol;
    protocol.rng_seed = request.value("seed", protocol.rng_seed);
    const double distance = request.value("distance_cm", config.tag_distance_cm);

    std::optional<TagKind> kind;
    const std::string kind_str = request.value("kind", "all");
    if (kind_str == "fiber") kind = TagKind::Fiber;
    else if (kind_str == "connector") kind = TagKind::Connector;
    else if (kind_str != "all") throw MalformedRequest("bad kind \"" + kind_str + "\"");

    const auto population = build_population(store.registry(), distance, kind);
    const InventoryLog log = run_inventory(population, config.link, protocol);
    return {{"status", "OK"},
            {"population", population.size()},
            {"identified", log.identified.size()},
            {"rounds", log.rounds},
            {"slots", log.slots.size()},
            {"elapsed_s", log.elapsed_s},
            {"budget_exhausted", log.budget_exhausted}};
}

json handle_metrics(const Store& store) {
    std::size_t fibers = 0, connectors = 0;
    for (const auto& [epc, record] : store.registry()) {
        (record.kind == TagKind::Fiber ? fibers : connectors) += 1;
    }
    return {{"status", "OK"},
            {"tags", store.registry().size()},
            {"fibers", fibers},
            {"connectors", connectors},
            {"connections", store.connections().size()},
            {"audit_records", store.audit().size()},
            {"generation", store.generation()}};
}

} // namespace

std::string handle_request(Store& store, const ServiceConfig& config,
                           std::string_view request_line) {
    json response;
    try {
        json request = json::parse(request_line, nullptr, false);
        if (request.is_discarded() || !request.is_object()) {
            throw MalformedRequest("request is not a JSON object");
        }
        const std::string verb = request.value("verb", "");

        if (verb == "REGISTER") response = handle_register(store, request);
        else if (verb == "CONNECT") response = handle_connect(store, request);
        else if (verb == "LOOKUP") response = handle_lookup(store, request);
        else if (verb == "VERIFY") response = handle_verify(store, config, request);
        else if (verb == "NAVIGATE") response = handle_navigate(store, config, request);
        else if (verb == "INVENTORY") response = handle_inventory(store, config, request);
        else if (verb == "METRICS") response = handle_metrics(store);
        else throw UnknownVerb(verb.empty() ? "missing verb" : verb);
    } catch (const Error& e) {
        response = {{"status", "ERR"}, {"code", e.code()}, {"message", e.what()}};
    } catch (const json::exception& e) {
        response = {{"status", "ERR"}, {"code", "malformed_request"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        response = {{"status", "ERR"}, {"code", "internal_error"}, {"message", e.what()}};
    }
    return response.dump();
}

} // namespace ondr
