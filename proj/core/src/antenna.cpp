#include "ondr/antenna.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "ondr/errors.hpp"

namespace ondr {

namespace {

enum class ValueFormat { MagnitudeAngle, DbAngle, RealImaginary };

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> tokens;
    std::istringstream in{std::string(line)};
    std::string token;
    while (in >> token) tokens.push_back(token);
    return tokens;
}

std::optional<double> parse_number(const std::string& token) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

struct OptionLine {
    double freq_to_mhz = 1000.0; // Touchstone default unit is GHz
    ValueFormat format = ValueFormat::MagnitudeAngle;
};

OptionLine parse_option_line(std::string_view line) {
    OptionLine opts;
    const auto tokens = tokenize(line.substr(1)); // past '#'
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string t = upper(tokens[i]);
        if (t == "HZ") {
            opts.freq_to_mhz = 1e-6;
        } else if (t == "KHZ") {
            opts.freq_to_mhz = 1e-3;
        } else if (t == "MHZ") {
            opts.freq_to_mhz = 1.0;
        } else if (t == "GHZ") {
            opts.freq_to_mhz = 1e3;
        } else if (t == "S") {
            // scattering parameters, the only supported network parameter
        } else if (t == "Y" || t == "Z" || t == "G" || t == "H") {
            throw MalformedOptionLine("unsupported network parameter " + tokens[i]);
        } else if (t == "DB") {
            opts.format = ValueFormat::DbAngle;
        } else if (t == "MA") {
            opts.format = ValueFormat::MagnitudeAngle;
        } else if (t == "RI") {
            opts.format = ValueFormat::RealImaginary;
        } else if (t == "R") {
            if (i + 1 >= tokens.size() || !parse_number(tokens[i + 1])) {
                throw MalformedOptionLine("R without a reference resistance");
            }
            ++i; // reference resistance is accepted and ignored
        } else {
            throw MalformedOptionLine("unrecognized token \"" + tokens[i] + "\"");
        }
    }
    return opts;
}

double to_db(ValueFormat format, double a, double b) {
    switch (format) {
    case ValueFormat::DbAngle:
        return a;
    case ValueFormat::MagnitudeAngle:
        return 20.0 * std::log10(a);
    case ValueFormat::RealImaginary:
        return 20.0 * std::log10(std::hypot(a, b));
    }
    return a;
}

double to_phase_deg(ValueFormat format, double a, double b) {
    switch (format) {
    case ValueFormat::DbAngle:
    case ValueFormat::MagnitudeAngle:
        return b;
    case ValueFormat::RealImaginary:
        return std::atan2(b, a) * 180.0 / M_PI;
    }
    return b;
}

} // namespace

SParamTrace parse_touchstone(std::string_view text) {
    SParamTrace trace;
    std::optional<OptionLine> opts;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        // strip comments and surrounding whitespace
        if (const auto bang = line.find('!'); bang != std::string_view::npos) {
            line = line.substr(0, bang);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) {
            line.remove_prefix(1);
        }
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
            line.remove_suffix(1);
        }
        if (line.empty()) continue;

        if (line.front() == '[') {
            throw MalformedOptionLine("Touchstone v2 keyword on line " +
                                      std::to_string(line_no) + "; only v1 is supported");
        }
        if (line.front() == '#') {
            if (opts) {
                throw MalformedOptionLine("duplicate option line " + std::to_string(line_no));
            }
            if (!trace.points.empty()) {
                throw MalformedOptionLine("option line " + std::to_string(line_no) +
                                          " appears after data");
            }
            opts = parse_option_line(line);
            continue;
        }

        const OptionLine fmt = opts.value_or(OptionLine{});
        const auto tokens = tokenize(line);
        if (tokens.size() != 3) {
            throw MalformedDataLine("line " + std::to_string(line_no) +
                                    ": expected 3 values for a one-port record, got " +
                                    std::to_string(tokens.size()));
        }
        double values[3];
        for (int i = 0; i < 3; ++i) {
            const auto v = parse_number(tokens[i]);
            if (!v) {
                throw MalformedDataLine("line " + std::to_string(line_no) +
                                        ": \"" + tokens[i] + "\" is not a number");
            }
            values[i] = *v;
        }

        SParamPoint point;
        point.frequency_mhz = values[0] * fmt.freq_to_mhz;
        point.s11_db = to_db(fmt.format, values[1], values[2]);
        point.phase_deg = to_phase_deg(fmt.format, values[1], values[2]);
        if (!std::isfinite(point.s11_db)) {
            throw MalformedDataLine("line " + std::to_string(line_no) +
                                    ": magnitude is not finite in dB");
        }
        if (!trace.points.empty() &&
            point.frequency_mhz <= trace.points.back().frequency_mhz) {
            throw NonMonotoneFrequency("line " + std::to_string(line_no));
        }
        trace.points.push_back(point);
    }

    if (trace.points.size() < 2) {
        throw EmptyTrace("a trace needs at least 2 points, got " +
                         std::to_string(trace.points.size()));
    }
    return trace;
}

std::string render_touchstone(const SParamTrace& trace) {
    std::string out = "# MHZ S DB R 50\n";
    char line[128];
    for (const SParamPoint& point : trace.points) {
        std::snprintf(line, sizeof(line), "%.12g %.12g %.12g\n", point.frequency_mhz,
                      point.s11_db, point.phase_deg);
        out += line;
    }
    return out;
}

SParamPoint min_s11(const SParamTrace& trace) {
    const SParamPoint* best = &trace.points.front();
    for (const SParamPoint& point : trace.points) {
        if (point.s11_db < best->s11_db) best = &point;
    }
    return *best;
}

std::vector<Band> bandwidth_below(const SParamTrace& trace, double threshold_db) {
    std::vector<Band> bands;
    std::optional<double> open_lo;

    const auto& points = trace.points;
    if (points.front().s11_db < threshold_db) {
        open_lo = points.front().frequency_mhz;
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        const SParamPoint& a = points[i - 1];
        const SParamPoint& b = points[i];
        const auto crossing = [&] {
            const double t = (threshold_db - a.s11_db) / (b.s11_db - a.s11_db);
            return a.frequency_mhz + t * (b.frequency_mhz - a.frequency_mhz);
        };
        if (a.s11_db >= threshold_db && b.s11_db < threshold_db) {
            open_lo = crossing();
        } else if (a.s11_db < threshold_db && b.s11_db >= threshold_db) {
            const double hi = crossing();
            if (open_lo && hi > *open_lo) bands.push_back({*open_lo, hi});
            open_lo.reset();
        }
    }
    if (open_lo && points.back().frequency_mhz > *open_lo) {
        bands.push_back({*open_lo, points.back().frequency_mhz});
    }
    return bands;
}

AntennaSummary summarize(const SParamTrace& trace, double threshold_db) {
    AntennaSummary summary;
    const SParamPoint at_min = min_s11(trace);
    summary.min_s11_db = at_min.s11_db;
    summary.min_frequency_mhz = at_min.frequency_mhz;
    summary.threshold_db = threshold_db;
    summary.bands = bandwidth_below(trace, threshold_db);
    return summary;
}

std::string summary_text(const AntennaSummary& summary) {
    char buf[160];
    std::string out;
    std::snprintf(buf, sizeof(buf), "minimum S11     : %8.2f dB at %.1f MHz\n",
                  summary.min_s11_db, summary.min_frequency_mhz);
    out += buf;
    std::snprintf(buf, sizeof(buf), "threshold       : %8.2f dB\n", summary.threshold_db);
    out += buf;
    if (summary.bands.empty()) {
        out += "matched band    :     none\n";
    }
    for (const Band& band : summary.bands) {
        std::snprintf(buf, sizeof(buf),
                      "matched band    : %8.1f - %.1f MHz (width %.1f MHz)\n",
                      band.lo_mhz, band.hi_mhz, band.width_mhz());
        out += buf;
    }
    return out;
}

std::string summary_machine(const AntennaSummary& summary) {
    char buf[96];
    std::string out;
    std::snprintf(buf, sizeof(buf), "min_db=%.6f\n", summary.min_s11_db);
    out += buf;
    std::snprintf(buf, sizeof(buf), "min_mhz=%.6f\n", summary.min_frequency_mhz);
    out += buf;
    for (const Band& band : summary.bands) {
        std::snprintf(buf, sizeof(buf), "band_lo=%.6f\nband_hi=%.6f\nwidth=%.6f\n",
                      band.lo_mhz, band.hi_mhz, band.width_mhz());
        out += buf;
    }
    return out;
}

} // namespace ondr
