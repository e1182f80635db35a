#include <doctest.h>

#include "ondr/errors.hpp"
#include "ondr/navigation.hpp"
#include "ondr/radio_link.hpp"
#include "ondr/rng.hpp"

using namespace ondr;

namespace {

struct Bench {
    TagRegistry registry;
    ConnectionDb db;
    std::vector<TagInRange> connectors;
};

Epc fiber_epc(std::uint64_t i) { return Epc::make(0xf1, i); }
Epc connector_epc(std::uint64_t i) { return Epc::make(0xc0, i); }

Bench patched_pairs(std::size_t n) {
    Bench bench;
    for (std::size_t i = 0; i < n; ++i) {
        TagRecord fiber{fiber_epc(i), TagKind::Fiber, SpiMode::Master};
        fiber.position = {0.2 * static_cast<double>(i), 0.5};
        TagRecord connector{connector_epc(i), TagKind::Connector, SpiMode::Slave};
        connector.position = fiber.position;
        bench.registry.add(fiber);
        bench.registry.add(connector);
        bench.registry.attach(fiber.epc, connector.epc);
        bench.db.connect(bench.registry, fiber.epc, connector.epc);
        bench.connectors.push_back({connector.epc, 30.0});
    }
    return bench;
}

LinkParams link30() { return reader_profile(30.0, 915.0); }

} // namespace

TEST_CASE("full workflow ends with the target led lit") {
    Bench bench = patched_pairs(8);
    NavigationSession session("s1", bench.registry);
    ProtocolConfig config;
    config.rng_seed = 5;

    CHECK(session.scan_fiber(link30(), fiber_epc(2), 30.0) == fiber_epc(2));
    CHECK(session.state() == SessionState::FiberScanned);
    CHECK(session.lookup_target(bench.db) == connector_epc(2));
    CHECK(session.state() == SessionState::TargetKnown);

    const Position position =
        session.navigate_to_target(bench.connectors, link30(), config);
    CHECK(session.state() == SessionState::LedLit);
    CHECK(position == bench.registry.at(connector_epc(2)).position);
    CHECK(bench.registry.lit_leds() == std::vector<Epc>{connector_epc(2)});

    session.end_session();
    CHECK(session.state() == SessionState::Idle);
    CHECK(bench.registry.lit_leds().empty());
}

TEST_CASE("scan failures") {
    Bench bench = patched_pairs(3);

    SUBCASE("out of range") {
        NavigationSession session("s", bench.registry);
        CHECK_THROWS_AS(session.scan_fiber(link30(), fiber_epc(0), 200.0), OutOfRange);
        CHECK(session.state() == SessionState::Failed);
    }
    SUBCASE("connector scanned instead of fiber") {
        NavigationSession session("s", bench.registry);
        CHECK_THROWS_AS(session.scan_fiber(link30(), connector_epc(0), 30.0), WrongKind);
        CHECK(session.state() == SessionState::Failed);
    }
    SUBCASE("unknown tag") {
        NavigationSession session("s", bench.registry);
        CHECK_THROWS_AS(session.scan_fiber(link30(), fiber_epc(55), 30.0), UnknownEpc);
        CHECK(session.state() == SessionState::Failed);
    }
    SUBCASE("boundary distance is readable") {
        NavigationSession session("s", bench.registry);
        CHECK(session.scan_fiber(link30(), fiber_epc(0), 125.0) == fiber_epc(0));
    }
}

TEST_CASE("lookup of an unrecorded fiber fails the session") {
    Bench bench = patched_pairs(2);
    TagRecord stray{fiber_epc(9), TagKind::Fiber, SpiMode::Master};
    bench.registry.add(stray);

    NavigationSession session("s", bench.registry);
    session.scan_fiber(link30(), fiber_epc(9), 30.0);
    CHECK_THROWS_AS(session.lookup_target(bench.db), NotInDatabase);
    CHECK(session.state() == SessionState::Failed);

    // the state machine rejects further progress after a failure
    CHECK_THROWS_AS(session.lookup_target(bench.db), InvalidSessionState);
}

TEST_CASE("state machine guards reject out-of-order operations") {
    Bench bench = patched_pairs(2);
    NavigationSession session("s", bench.registry);
    ProtocolConfig config;

    CHECK_THROWS_AS(session.lookup_target(bench.db), InvalidSessionState);
    CHECK_THROWS_AS(session.navigate_to_target(bench.connectors, link30(), config),
                    InvalidSessionState);

    session.scan_fiber(link30(), fiber_epc(0), 30.0);
    CHECK_THROWS_AS(session.scan_fiber(link30(), fiber_epc(1), 30.0),
                    InvalidSessionState);
}

TEST_CASE("navigation fails when the target is off the panel") {
    Bench bench = patched_pairs(4);
    NavigationSession session("s", bench.registry);
    ProtocolConfig config;
    config.rng_seed = 9;

    session.scan_fiber(link30(), fiber_epc(1), 30.0);
    session.lookup_target(bench.db);

    // remove the target connector from the multi-scan population
    std::vector<TagInRange> without;
    for (const auto& tag : bench.connectors) {
        if (tag.epc != connector_epc(1)) without.push_back(tag);
    }
    CHECK_THROWS_AS(session.navigate_to_target(without, link30(), config), TargetNotFound);
    CHECK(session.state() == SessionState::Failed);
    CHECK(bench.registry.lit_leds().empty());
}

TEST_CASE("sequential sessions leave only the last led on") {
    Bench bench = patched_pairs(5);
    ProtocolConfig config;
    config.rng_seed = 21;

    NavigationSession first("s1", bench.registry);
    first.scan_fiber(link30(), fiber_epc(1), 30.0);
    first.lookup_target(bench.db);
    first.navigate_to_target(bench.connectors, link30(), config);
    CHECK(bench.registry.lit_leds() == std::vector<Epc>{connector_epc(1)});

    NavigationSession second("s2", bench.registry);
    second.scan_fiber(link30(), fiber_epc(2), 30.0);
    second.lookup_target(bench.db);
    second.navigate_to_target(bench.connectors, link30(), config);
    CHECK(bench.registry.lit_leds() == std::vector<Epc>{connector_epc(2)});

    second.end_session();
    CHECK(bench.registry.lit_leds().empty());
}

TEST_CASE("led exclusivity over random session sequences") {
    Bench bench = patched_pairs(6);
    Rng rng(0x1edull);
    for (int round = 0; round < 40; ++round) {
        NavigationSession session("s", bench.registry);
        const std::uint64_t pick = rng.below(6);
        ProtocolConfig config;
        config.rng_seed = rng.next_u64();
        try {
            session.scan_fiber(link30(), fiber_epc(pick), rng.uniform(10.0, 150.0));
            session.lookup_target(bench.db);
            session.navigate_to_target(bench.connectors, link30(), config);
        } catch (const Error&) {
        }
        CHECK(bench.registry.lit_leds().size() <= 1);
        if (rng.bernoulli(0.7)) {
            session.end_session();
            CHECK(bench.registry.lit_leds().empty());
        }
    }
}

TEST_CASE("audit length equals the number of operations invoked") {
    Bench bench = patched_pairs(4);
    Rng rng(0xad17ull);
    for (int round = 0; round < 30; ++round) {
        NavigationSession session("s", bench.registry);
        std::size_t operations = 0;
        const int ops = 1 + static_cast<int>(rng.below(12));
        ProtocolConfig config;
        config.rng_seed = rng.next_u64();
        for (int i = 0; i < ops; ++i) {
            try {
                switch (rng.below(4)) {
                case 0:
                    session.scan_fiber(link30(), fiber_epc(rng.below(4)),
                                       rng.uniform(10.0, 200.0));
                    break;
                case 1: session.lookup_target(bench.db); break;
                case 2:
                    session.navigate_to_target(bench.connectors, link30(), config);
                    break;
                case 3: session.end_session(); break;
                }
            } catch (const Error&) {
            }
            ++operations;
        }
        CHECK(session.audit().size() == operations);
    }
}

TEST_CASE("audit timestamps strictly increase") {
    Bench bench = patched_pairs(2);
    NavigationSession session("s", bench.registry);
    ProtocolConfig config;
    config.rng_seed = 3;

    session.scan_fiber(link30(), fiber_epc(0), 30.0);
    session.lookup_target(bench.db);
    session.navigate_to_target(bench.connectors, link30(), config);
    const auto audit = session.end_session();

    REQUIRE(audit.size() == 4);
    for (std::size_t i = 1; i < audit.size(); ++i) {
        CHECK(audit[i].timestamp > audit[i - 1].timestamp);
    }
}

TEST_CASE("end from idle is a no-op apart from the audit entry") {
    Bench bench = patched_pairs(1);
    NavigationSession session("s", bench.registry);
    const auto audit = session.end_session();
    CHECK(audit.size() == 1);
    CHECK(session.state() == SessionState::Idle);
    CHECK(bench.registry.lit_leds().empty());
}

TEST_CASE("audit export is line-delimited with session id and epc") {
    Bench bench = patched_pairs(2);
    NavigationSession session("desk-7", bench.registry);
    ProtocolConfig config;
    config.rng_seed = 3;
    session.scan_fiber(link30(), fiber_epc(0), 30.0);
    session.lookup_target(bench.db);
    session.navigate_to_target(bench.connectors, link30(), config);

    const std::string lines = audit_lines(session.id(), session.audit());
    CHECK(lines.find("desk-7\tfiber_scanned\t" + fiber_epc(0).hex()) != std::string::npos);
    CHECK(lines.find("desk-7\tled_lit\t" + connector_epc(0).hex()) != std::string::npos);
    std::size_t newlines = 0;
    for (char c : lines) {
        if (c == '\n') ++newlines;
    }
    CHECK(newlines == session.audit().size());
}
