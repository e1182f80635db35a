#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ondr {

/// One sample of a one-port S-parameter sweep. Phase is parsed but takes no
/// part in the dB-magnitude analysis.
struct SParamPoint {
    double frequency_mhz = 0.0;
    double s11_db = 0.0;
    double phase_deg = 0.0;
};

/// Strictly increasing frequency sweep with at least two samples.
struct SParamTrace {
    std::vector<SParamPoint> points;
};

/// Contiguous frequency interval where s11 < threshold (strict inside,
/// boundaries at equality).
struct Band {
    double lo_mhz = 0.0;
    double hi_mhz = 0.0;

    double width_mhz() const { return hi_mhz - lo_mhz; }
};

struct AntennaSummary {
    double min_s11_db = 0.0;
    double min_frequency_mhz = 0.0;
    double threshold_db = -10.0;
    std::vector<Band> bands;
};

/// Parses a one-port Touchstone v1 document. Option line variants
/// "# HZ|KHZ|MHZ|GHZ S DB|MA|RI R <n>" are supported (tokens in any order,
/// defaults GHZ/S/MA/50); magnitudes are normalized to dB and frequencies
/// to MHz. Comments start with '!'. Touchstone v2 keyword lines are
/// rejected. Throws MalformedOptionLine, MalformedDataLine,
/// NonMonotoneFrequency, EmptyTrace.
SParamTrace parse_touchstone(std::string_view text);

/// Renders a trace back to Touchstone ("# MHZ S DB R 50"); values keep
/// enough digits for a lossless re-parse.
std::string render_touchstone(const SParamTrace& trace);

/// The sample with minimum s11; ties broken towards the lowest frequency.
SParamPoint min_s11(const SParamTrace& trace);

/// Maximal intervals where s11 < threshold. Crossings are located by linear
/// interpolation between adjacent samples; a trace edge already below the
/// threshold opens its band at the edge frequency.
std::vector<Band> bandwidth_below(const SParamTrace& trace, double threshold_db);

AntennaSummary summarize(const SParamTrace& trace, double threshold_db = -10.0);

/// Human-readable aligned summary.
std::string summary_text(const AntennaSummary& summary);

/// One key=value line per quantity: min_db, min_mhz, then per band
/// band_lo/band_hi/width.
std::string summary_machine(const AntennaSummary& summary);

} // namespace ondr
