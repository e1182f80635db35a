#include "ondr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "ondr/errors.hpp"
#include "ondr/pairing.hpp"
#include "ondr/population.hpp"

namespace ondr {

using nlohmann::json;

const char* to_string(ScenarioMode mode) {
    switch (mode) {
    case ScenarioMode::SpiVerify: return "spi_verify";
    case ScenarioMode::Baseline: return "baseline";
    case ScenarioMode::InventoryOnly: return "inventory_only";
    }
    return "spi_verify";
}

LinkParams LinkSpec::resolve() const {
    LinkParams link = reader_profile(tx_power_dbm, frequency_mhz, boundary_cm,
                                     path_loss_exponent, rssi_floor_dbm,
                                     reference_distance_cm);
    link.margin_knee_db = margin_knee_db;
    link.p_base = p_base;
    return link;
}

void ScenarioConfig::validate() const {
    if (version != 1) throw InvalidScenario("version: only version 1 is supported");
    if (trials < 1) throw InvalidScenario("trials: must be >= 1");
    if (pairs > panel.columns * panel.rows) {
        throw InvalidScenario("pairs: exceeds panel slot count");
    }
    if (!(tag_distance_cm > 0.0)) {
        throw InvalidScenario("tag_distance_cm: must be positive");
    }
    if (histogram_bins < 1) throw InvalidScenario("histogram_bins: must be >= 1");
    if (spi_exchange_cost_s < 0.0) {
        throw InvalidScenario("spi_exchange_cost_s: must be >= 0");
    }
    for (double t : thresholds_s) {
        if (!(t > 0.0)) throw InvalidScenario("thresholds_s: must be positive");
    }
    try {
        protocol.validate();
        (void)link.resolve();
    } catch (const Error& e) {
        throw InvalidScenario(e.what());
    }
}

namespace {

void reject_unknown_fields(const json& j, const std::set<std::string>& known,
                           const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (known.count(key) == 0) {
            throw InvalidScenario(where + ": unknown field \"" + key + "\"");
        }
    }
}

template <typename T>
void read_field(const json& j, const char* name, T& out, const std::string& where) {
    if (!j.contains(name)) return;
    try {
        out = j.at(name).get<T>();
    } catch (const json::exception&) {
        throw InvalidScenario(where + "." + name + ": wrong type");
    }
}

} // namespace

ScenarioConfig parse_scenario(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw InvalidScenario("document is not a JSON object");
    }

    reject_unknown_fields(j,
                          {"version", "mode", "pairs", "panel", "tag_distance_cm",
                           "link", "protocol", "trials", "seed", "thresholds_s",
                           "histogram_bins", "spi_exchange_cost_s"},
                          "scenario");

    ScenarioConfig config;
    read_field(j, "version", config.version, "scenario");
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "spi_verify") config.mode = ScenarioMode::SpiVerify;
        else if (mode == "baseline") config.mode = ScenarioMode::Baseline;
        else if (mode == "inventory_only") config.mode = ScenarioMode::InventoryOnly;
        else throw InvalidScenario("mode: unknown value \"" + mode + "\"");
    }
    read_field(j, "pairs", config.pairs, "scenario");
    read_field(j, "tag_distance_cm", config.tag_distance_cm, "scenario");
    read_field(j, "trials", config.trials, "scenario");
    read_field(j, "seed", config.seed, "scenario");
    read_field(j, "thresholds_s", config.thresholds_s, "scenario");
    read_field(j, "histogram_bins", config.histogram_bins, "scenario");
    read_field(j, "spi_exchange_cost_s", config.spi_exchange_cost_s, "scenario");

    if (j.contains("panel")) {
        const json& p = j.at("panel");
        reject_unknown_fields(p, {"width_in", "height_in", "columns", "rows"}, "panel");
        read_field(p, "width_in", config.panel.width_in, "panel");
        read_field(p, "height_in", config.panel.height_in, "panel");
        read_field(p, "columns", config.panel.columns, "panel");
        read_field(p, "rows", config.panel.rows, "panel");
    }
    if (j.contains("link")) {
        const json& l = j.at("link");
        reject_unknown_fields(l,
                              {"tx_power_dbm", "frequency_mhz", "path_loss_exponent",
                               "rssi_floor_dbm", "reference_distance_cm", "boundary_cm",
                               "margin_knee_db", "p_base"},
                              "link");
        read_field(l, "tx_power_dbm", config.link.tx_power_dbm, "link");
        read_field(l, "frequency_mhz", config.link.frequency_mhz, "link");
        read_field(l, "path_loss_exponent", config.link.path_loss_exponent, "link");
        read_field(l, "rssi_floor_dbm", config.link.rssi_floor_dbm, "link");
        read_field(l, "reference_distance_cm", config.link.reference_distance_cm, "link");
        read_field(l, "boundary_cm", config.link.boundary_cm, "link");
        read_field(l, "margin_knee_db", config.link.margin_knee_db, "link");
        read_field(l, "p_base", config.link.p_base, "link");
    }
    if (j.contains("protocol")) {
        const json& p = j.at("protocol");
        reject_unknown_fields(p,
                              {"initial_q", "q_adapt", "q_step", "t_success_s",
                               "t_collision_s", "t_empty_s", "time_budget_s"},
                              "protocol");
        read_field(p, "initial_q", config.protocol.initial_q, "protocol");
        if (p.contains("q_adapt")) {
            const std::string adapt = p.at("q_adapt").get<std::string>();
            if (adapt == "fixed") config.protocol.q_adapt = QAdapt::Fixed;
            else if (adapt == "adaptive_c") config.protocol.q_adapt = QAdapt::AdaptiveC;
            else throw InvalidScenario("protocol.q_adapt: unknown value \"" + adapt + "\"");
        }
        read_field(p, "q_step", config.protocol.q_step, "protocol");
        read_field(p, "t_success_s", config.protocol.t_success_s, "protocol");
        read_field(p, "t_collision_s", config.protocol.t_collision_s, "protocol");
        read_field(p, "t_empty_s", config.protocol.t_empty_s, "protocol");
        read_field(p, "time_budget_s", config.protocol.time_budget_s, "protocol");
    }

    config.validate();
    return config;
}

std::string scenario_to_json(const ScenarioConfig& config) {
    json j{{"version", config.version},
           {"mode", to_string(config.mode)},
           {"pairs", config.pairs},
           {"panel",
            {{"width_in", config.panel.width_in},
             {"height_in", config.panel.height_in},
             {"columns", config.panel.columns},
             {"rows", config.panel.rows}}},
           {"tag_distance_cm", config.tag_distance_cm},
           {"link",
            {{"tx_power_dbm", config.link.tx_power_dbm},
             {"frequency_mhz", config.link.frequency_mhz},
             {"path_loss_exponent", config.link.path_loss_exponent},
             {"rssi_floor_dbm", config.link.rssi_floor_dbm},
             {"reference_distance_cm", config.link.reference_distance_cm},
             {"boundary_cm", config.link.boundary_cm},
             {"margin_knee_db", config.link.margin_knee_db},
             {"p_base", config.link.p_base}}},
           {"protocol",
            {{"initial_q", config.protocol.initial_q},
             {"q_adapt", config.protocol.q_adapt == QAdapt::Fixed ? "fixed" : "adaptive_c"},
             {"q_step", config.protocol.q_step},
             {"t_success_s", config.protocol.t_success_s},
             {"t_collision_s", config.protocol.t_collision_s},
             {"t_empty_s", config.protocol.t_empty_s},
             {"time_budget_s", config.protocol.time_budget_s}}},
           {"trials", config.trials},
           {"seed", config.seed},
           {"thresholds_s", config.thresholds_s},
           {"histogram_bins", config.histogram_bins},
           {"spi_exchange_cost_s", config.spi_exchange_cost_s}};
    return j.dump(2) + "\n";
}

ScenarioConfig default_scenario() {
    ScenarioConfig config;
    config.protocol.initial_q = 5; // 32 slots, matched to 30 master tags
    config.protocol.time_budget_s = 5.0;
    return config;
}

ScenarioBench build_bench(const ScenarioConfig& config) {
    ScenarioBench bench;
    const PanelLayout layout = PanelLayout::grid(
        config.panel.width_in, config.panel.height_in, config.panel.columns,
        config.panel.rows);
    const Position center = layout.center();

    for (std::size_t i = 0; i < config.pairs; ++i) {
        const Position slot = layout.slots()[i];
        TagRecord fiber;
        fiber.epc = Epc::make(0xf1, i);
        fiber.kind = TagKind::Fiber;
        fiber.spi_mode = SpiMode::Master;
        fiber.position = slot;
        TagRecord connector;
        connector.epc = Epc::make(0xc0, i);
        connector.kind = TagKind::Connector;
        connector.spi_mode = SpiMode::Slave;
        connector.position = slot;

        bench.registry.add(fiber);
        bench.registry.add(connector);
        bench.registry.attach(fiber.epc, connector.epc);
        bench.db.connect(bench.registry, fiber.epc, connector.epc);
    }

    // Both tags of a pair sit on the panel regardless of mode.
    const double area = layout.area_in2();
    bench.density_tags_per_in2 =
        area > 0.0 ? static_cast<double>(2 * config.pairs) / area : 0.0;

    bench.population =
        build_population(bench.registry, config.tag_distance_cm, std::nullopt, center);
    return bench;
}

MetricsReport run_scenario(const ScenarioConfig& config) {
    config.validate();
    const ScenarioBench bench = build_bench(config);
    const LinkParams link = config.link.resolve();
    const VerifyOptions verify_options{config.spi_exchange_cost_s};

    std::vector<TrialResult> trials;
    trials.reserve(config.trials);
    for (std::size_t i = 0; i < config.trials; ++i) {
        ProtocolConfig protocol = config.protocol;
        protocol.rng_seed = config.seed + i;

        TrialResult trial;
        switch (config.mode) {
        case ScenarioMode::SpiVerify: {
            const auto report = verify_all(bench.db, bench.registry, bench.population,
                                           link, protocol, verify_options);
            trial.elapsed_s = report.elapsed_s;
            trial.identifications = report.reader_identifications;
            trial.complete = report.outcomes.size() == config.pairs &&
                             trial.elapsed_s <= protocol.time_budget_s;
            break;
        }
        case ScenarioMode::Baseline: {
            const auto report = verify_all_baseline(bench.db, bench.registry,
                                                    bench.population, link, protocol,
                                                    verify_options);
            trial.elapsed_s = report.elapsed_s;
            trial.identifications = report.reader_identifications;
            trial.complete = report.reader_identifications == 2 * config.pairs &&
                             trial.elapsed_s <= protocol.time_budget_s;
            break;
        }
        case ScenarioMode::InventoryOnly: {
            const auto log = run_inventory(bench.population, link, protocol);
            trial.elapsed_s = log.elapsed_s;
            trial.identifications = log.identified.size();
            trial.complete = log.identified.size() == bench.population.size() &&
                             trial.elapsed_s <= protocol.time_budget_s;
            break;
        }
        }
        trials.push_back(trial);
    }

    return MetricsReport(std::move(trials), config.thresholds_s,
                         config.protocol.time_budget_s, bench.density_tags_per_in2,
                         config.histogram_bins);
}

MetricsReport::MetricsReport(std::vector<TrialResult> trials,
                             std::vector<double> thresholds_s, double time_budget_s,
                             double density_tags_per_in2, std::size_t histogram_bins)
    : trials_(std::move(trials)), thresholds_(std::move(thresholds_s)),
      time_budget_s_(time_budget_s), density_(density_tags_per_in2),
      histogram_bins_(histogram_bins) {}

double MetricsReport::fraction_within(double t_s) const {
    if (trials_.empty()) return 0.0;
    std::size_t n = 0;
    for (const TrialResult& trial : trials_) {
        if (trial.complete && trial.elapsed_s <= t_s) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(trials_.size());
}

double MetricsReport::efficiency() const {
    if (trials_.empty()) return 0.0;
    std::size_t n = 0;
    for (const TrialResult& trial : trials_) {
        if (trial.complete) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(trials_.size());
}

double MetricsReport::quantile(double p) const {
    std::vector<double> sorted;
    sorted.reserve(trials_.size());
    for (const TrialResult& trial : trials_) sorted.push_back(trial.elapsed_s);
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty()) return 0.0;
    p = std::clamp(p, 0.0, 1.0);
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<std::size_t> MetricsReport::histogram() const {
    std::vector<std::size_t> bins(histogram_bins_, 0);
    if (trials_.empty()) return bins;
    double max_elapsed = 0.0;
    for (const TrialResult& trial : trials_) {
        max_elapsed = std::max(max_elapsed, trial.elapsed_s);
    }
    if (max_elapsed <= 0.0) {
        bins[0] = trials_.size();
        return bins;
    }
    for (const TrialResult& trial : trials_) {
        auto bin = static_cast<std::size_t>(
            std::floor(trial.elapsed_s / max_elapsed * static_cast<double>(histogram_bins_)));
        if (bin >= histogram_bins_) bin = histogram_bins_ - 1; // max lands in the last bin
        ++bins[bin];
    }
    return bins;
}

std::string report_csv(const MetricsReport& report) {
    std::string out = "trial,elapsed_s,identifications,complete\n";
    char line[96];
    for (std::size_t i = 0; i < report.trials().size(); ++i) {
        const TrialResult& trial = report.trials()[i];
        std::snprintf(line, sizeof(line), "%zu,%.9f,%zu,%d\n", i, trial.elapsed_s,
                      trial.identifications, trial.complete ? 1 : 0);
        out += line;
    }
    return out;
}

std::string report_summary(const MetricsReport& report, const ScenarioConfig& config) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "mode        : %s\n", to_string(config.mode));
    out += buf;
    std::snprintf(buf, sizeof(buf), "pairs       : %zu (%zu tags)\n", config.pairs,
                  2 * config.pairs);
    out += buf;
    std::snprintf(buf, sizeof(buf), "trials      : %zu (base seed %llu)\n",
                  report.trials().size(),
                  static_cast<unsigned long long>(config.seed));
    out += buf;
    std::snprintf(buf, sizeof(buf), "density     : %.3f tags/in^2\n", report.density());
    out += buf;
    std::snprintf(buf, sizeof(buf), "efficiency  : %.9f (budget %.3f s)\n",
                  report.efficiency(), report.time_budget_s());
    out += buf;
    std::snprintf(buf, sizeof(buf), "p50 / p80 / p95 : %.9f / %.9f / %.9f s\n",
                  report.quantile(0.50), report.quantile(0.80), report.quantile(0.95));
    out += buf;
    for (double t : report.thresholds_s()) {
        std::snprintf(buf, sizeof(buf), "within %.3f s : %.9f\n", t,
                      report.fraction_within(t));
        out += buf;
    }
    return out;
}

std::string emit_report(const MetricsReport& report, const ScenarioConfig& config,
                        ReportFormat format) {
    return format == ReportFormat::Csv ? report_csv(report)
                                       : report_summary(report, config);
}

} // namespace ondr
