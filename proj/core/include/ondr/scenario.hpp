#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ondr/connection_db.hpp"
#include "ondr/inventory.hpp"
#include "ondr/panel.hpp"
#include "ondr/radio_link.hpp"

namespace ondr {

enum class ScenarioMode : std::uint8_t { SpiVerify, Baseline, InventoryOnly };

const char* to_string(ScenarioMode mode);

struct PanelSpec {
    double width_in = 4.2;
    double height_in = 2.8;
    std::size_t columns = 10;
    std::size_t rows = 6;

    bool operator==(const PanelSpec&) const = default;
};

/// Link profile as it appears in scenario files: the fixed loss is
/// calibrated from the boundary distance unless given explicitly.
struct LinkSpec {
    double tx_power_dbm = 30.0;
    double frequency_mhz = 915.0;
    double path_loss_exponent = 2.0;
    double rssi_floor_dbm = -60.0;
    double reference_distance_cm = 10.0;
    double boundary_cm = 125.0;
    double margin_knee_db = 6.0;
    double p_base = 0.01;

    LinkParams resolve() const;

    bool operator==(const LinkSpec&) const = default;
};

struct ScenarioConfig {
    int version = 1;
    ScenarioMode mode = ScenarioMode::SpiVerify;
    std::size_t pairs = 30;
    PanelSpec panel;
    double tag_distance_cm = 30.0;
    LinkSpec link;
    ProtocolConfig protocol;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::vector<double> thresholds_s = {0.6, 1.0};
    std::size_t histogram_bins = 12;
    double spi_exchange_cost_s = 0.0;

    /// Throws InvalidScenario with a field-level message.
    void validate() const;
};

/// Parses a scenario JSON document. Unknown fields are rejected (they are
/// usually typos in calibration constants). Throws InvalidScenario.
ScenarioConfig parse_scenario(const std::string& json_text);

std::string scenario_to_json(const ScenarioConfig& config);

/// The in-repo default: 30 pairs at 30 cm, 30 dBm, 100 trials.
ScenarioConfig default_scenario();

struct TrialResult {
    double elapsed_s = 0.0;
    std::size_t identifications = 0;
    bool complete = false; // full identification within the time budget
};

class MetricsReport {
public:
    MetricsReport(std::vector<TrialResult> trials, std::vector<double> thresholds_s,
                  double time_budget_s, double density_tags_per_in2,
                  std::size_t histogram_bins);

    const std::vector<TrialResult>& trials() const { return trials_; }
    const std::vector<double>& thresholds_s() const { return thresholds_; }
    double time_budget_s() const { return time_budget_s_; }
    double density() const { return density_; }

    /// Fraction of trials that completed within t seconds.
    double fraction_within(double t_s) const;
    /// Fraction of trials with complete identification within the budget.
    double efficiency() const;
    /// Linear-interpolation quantile of per-trial elapsed time, p in [0,1].
    double quantile(double p) const;
    /// Fixed-width bins over [0, max elapsed]; counts sum to trials.
    std::vector<std::size_t> histogram() const;

private:
    std::vector<TrialResult> trials_;
    std::vector<double> thresholds_;
    double time_budget_s_;
    double density_;
    std::size_t histogram_bins_;
};

/// Deterministic Monte-Carlo run: trial i uses seed base_seed + i.
MetricsReport run_scenario(const ScenarioConfig& config);

enum class ReportFormat : std::uint8_t { SummaryText, Csv };

std::string report_csv(const MetricsReport& report);
std::string report_summary(const MetricsReport& report, const ScenarioConfig& config);
std::string emit_report(const MetricsReport& report, const ScenarioConfig& config,
                        ReportFormat format);

/// The fixed experimental bench behind a scenario: registry, database and
/// per-tag distances. Exposed for tests and the service verbs.
struct ScenarioBench {
    TagRegistry registry;
    ConnectionDb db;
    std::vector<TagInRange> population; // per mode: fibers+connectors or all
    double density_tags_per_in2 = 0.0;
};

ScenarioBench build_bench(const ScenarioConfig& config);

} // namespace ondr
