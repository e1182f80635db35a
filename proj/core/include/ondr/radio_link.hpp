#pragma once

namespace ondr {

/// Peak read/write rate of the tag IC, in samples per second.
inline constexpr double kPeakReadRateSps = 119.0;

/// Backscatter link parameters. The path-loss model is two-way
/// log-distance:
///
///   rssi(d) = tx_power - fixed_loss - 20 * n * log10(d / reference_distance)
///
/// where n is the one-way exponent (the factor 20 = 10 * 2n folds in the
/// round trip). fixed_loss is normally obtained from calibrate_fixed_loss()
/// so that the floor is hit exactly at a chosen boundary distance.
struct LinkParams {
    double tx_power_dbm = 30.0;
    double frequency_mhz = 915.0; // carried for reporting; does not enter the path-loss formula
    double path_loss_exponent = 2.0;
    double fixed_loss_db = 0.0;
    double rssi_floor_dbm = -60.0;
    double reference_distance_cm = 10.0;

    // Rate and miss-probability ramps saturate at this margin above the floor.
    double margin_knee_db = 6.0;
    // Residual miss probability at full margin.
    double p_base = 0.01;

    bool operator==(const LinkParams&) const = default;
};

/// fixed_loss such that rssi(boundary_distance) == floor exactly.
/// Throws InfeasibleCalibration for non-physical inputs.
double calibrate_fixed_loss(double tx_power_dbm, double boundary_distance_cm,
                            double floor_dbm, double path_loss_exponent,
                            double reference_distance_cm = 10.0);

/// Reader-profile constructor: enforces the reader's operating envelope
/// (tx power 20-30 dBm, frequency 902-928 MHz) and calibrates fixed_loss to
/// the given boundary distance. Throws InvalidLinkProfile out of envelope.
LinkParams reader_profile(double tx_power_dbm, double frequency_mhz,
                          double boundary_distance_cm = 125.0,
                          double path_loss_exponent = 2.0,
                          double floor_dbm = -60.0,
                          double reference_distance_cm = 10.0);

/// Received signal strength at the reader, dBm. Throws NonPositiveDistance.
double rssi_at(const LinkParams& link, double distance_cm);

/// rssi - floor, dB. Negative when the tag is out of range.
double link_margin(const LinkParams& link, double distance_cm);

/// True iff the backscattered reply is at or above the RSSI floor.
bool is_readable(const LinkParams& link, double distance_cm);

/// Identification rate in samples per second: a linear ramp from 0 at the
/// floor to the 119 SPS peak at margin_knee_db of margin.
double read_rate(const LinkParams& link, double distance_cm);

/// Per-read miss probability: p_base at full margin, ramping linearly to
/// 1.0 at the floor; 1.0 beyond range.
double miss_probability(const LinkParams& link, double distance_cm);

} // namespace ondr
