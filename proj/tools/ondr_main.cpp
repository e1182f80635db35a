#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ondr/antenna.hpp"
#include "ondr/errors.hpp"
#include "ondr/navigation.hpp"
#include "ondr/pairing.hpp"
#include "ondr/population.hpp"
#include "ondr/scenario.hpp"
#include "ondr/server.hpp"
#include "ondr/store.hpp"
#include "ondr/wire.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsage = 2;

std::string default_store_path() {
    if (const char* env = std::getenv("ONDR_STORE"); env && *env) return env;
    return "ondr.store";
}

std::string read_file_or_exit(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: file not found: " << path << "\n";
        std::exit(kExitUsage);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_sim(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            std::optional<std::size_t> trials, const std::string& out_csv) {
    ondr::ScenarioConfig config = ondr::parse_scenario(read_file_or_exit(scenario_path));
    if (seed) config.seed = *seed;
    if (trials) config.trials = *trials;
    config.validate();

    const ondr::MetricsReport report = ondr::run_scenario(config);
    std::cout << ondr::report_summary(report, config);
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ondr::IoFailure("cannot write " + out_csv);
        }
        out << ondr::report_csv(report);
        std::cout << "csv         : " << out_csv << "\n";
    }
    return kExitOk;
}

int run_antenna(const std::string& s1p_path, double threshold_db) {
    const ondr::SParamTrace trace = ondr::parse_touchstone(read_file_or_exit(s1p_path));
    const ondr::AntennaSummary summary = ondr::summarize(trace, threshold_db);
    std::cout << ondr::summary_text(summary);
    std::cout << ondr::summary_machine(summary);
    return kExitOk;
}

int run_serve(const std::string& store_path, std::uint16_t port) {
    ondr::Store store = ondr::Store::open(store_path);
    ondr::WireServer server(store, ondr::ServiceConfig{}, port);
    std::cout << "store " << store_path << " (generation " << store.generation()
              << "), listening on 127.0.0.1:" << server.port() << "\n";
    server.run();
    return kExitOk;
}

int run_verify(const std::string& store_path, bool baseline, double distance_cm,
               std::uint64_t seed) {
    const ondr::Store store = ondr::Store::load(store_path);
    ondr::ServiceConfig config;
    config.protocol.rng_seed = seed;
    const auto population = ondr::build_population(store.registry(), distance_cm);
    const ondr::VerificationReport report =
        baseline ? ondr::verify_all_baseline(store.connections(), store.registry(),
                                             population, config.link, config.protocol)
                 : ondr::verify_all(store.connections(), store.registry(), population,
                                    config.link, config.protocol);
    std::cout << ondr::verification_csv(report);
    std::cout << "identifications: " << report.reader_identifications << "\n";
    return kExitOk;
}

int run_navigate(const std::string& store_path, const std::string& fiber_hex,
                 double distance_cm, std::uint64_t seed) {
    ondr::Store store = ondr::Store::load(store_path);
    const ondr::Epc fiber = ondr::Epc::parse(fiber_hex);

    ondr::NavigationSession session("cli", store.registry());
    ondr::ServiceConfig config;
    config.protocol.rng_seed = seed;
    try {
        session.scan_fiber(config.link, fiber, distance_cm);
        session.lookup_target(store.connections());
        const auto connectors = ondr::build_population(
            store.registry(), distance_cm, ondr::TagKind::Connector);
        const ondr::Position position =
            session.navigate_to_target(connectors, config.link, config.protocol);
        std::cout << "connector " << session.target()->hex() << " at (" << position.x_in
                  << ", " << position.y_in << ") in, LED on\n";
        std::cout << ondr::audit_lines(session.id(), session.audit());
        return kExitOk;
    } catch (...) {
        std::cout << ondr::audit_lines(session.id(), session.audit());
        throw;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"RFID supervision of optical network dumb resources: "
                 "inventory simulation, pairing verification, LED navigation"};
    app.require_subcommand(1);

    // sim
    auto* sim = app.add_subcommand("sim", "Run a Monte-Carlo scenario and report metrics");
    std::string scenario_path;
    std::string out_csv;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::size_t> trials_override;
    sim->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sim->add_option("--seed", seed_override, "Override the base seed");
    sim->add_option("--trials", trials_override, "Override the trial count");
    sim->add_option("--out", out_csv, "Write per-trial CSV here");

    // antenna
    auto* antenna = app.add_subcommand("antenna", "Analyze a one-port Touchstone trace");
    std::string s1p_path;
    double threshold_db = -10.0;
    antenna->add_option("--s1p", s1p_path, "Touchstone .s1p file")->required();
    antenna->add_option("--threshold", threshold_db, "Band threshold in dB [-10]");

    // serve
    auto* serve = app.add_subcommand("serve", "Serve the store over newline-delimited JSON/TCP");
    std::string store_path = default_store_path();
    std::uint16_t port = 0;
    serve->add_option("--store", store_path, "Store path (env ONDR_STORE)");
    serve->add_option("--port", port, "TCP port")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "Verify patching of every recorded pair");
    bool baseline = false;
    double distance_cm = 30.0;
    std::uint64_t seed = 1;
    verify->add_option("--store", store_path, "Store path (env ONDR_STORE)");
    verify->add_flag("--baseline", baseline, "Scan both sides instead of the SPI exchange");
    verify->add_option("--distance", distance_cm, "Reader-to-panel distance in cm [30]");
    verify->add_option("--seed", seed, "Inventory RNG seed [1]");

    // navigate
    auto* navigate = app.add_subcommand("navigate", "Locate a fiber's connector and light its LED");
    std::string fiber_hex;
    navigate->add_option("--store", store_path, "Store path (env ONDR_STORE)");
    navigate->add_option("--fiber", fiber_hex, "Fiber EPC (24 hex digits)")->required();
    navigate->add_option("--distance", distance_cm, "Reader-to-panel distance in cm [30]");
    navigate->add_option("--seed", seed, "Inventory RNG seed [1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim->parsed()) {
            return run_sim(scenario_path, seed_override, trials_override, out_csv);
        }
        if (antenna->parsed()) {
            return run_antenna(s1p_path, threshold_db);
        }
        if (serve->parsed()) {
            return run_serve(store_path, port);
        }
        if (verify->parsed()) {
            return run_verify(store_path, baseline, distance_cm, seed);
        }
        if (navigate->parsed()) {
            return run_navigate(store_path, fiber_hex, distance_cm, seed);
        }
    } catch (const ondr::MissingFile& e) {
        std::cerr << "error: file not found: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ondr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitUsage;
}
