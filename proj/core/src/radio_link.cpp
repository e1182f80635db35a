#include "ondr/radio_link.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ondr/errors.hpp"

namespace ondr {

namespace {

void check_distance(double distance_cm) {
    if (!(distance_cm > 0.0)) {
        throw NonPositiveDistance(std::to_string(distance_cm) + " cm");
    }
}

} // namespace

double calibrate_fixed_loss(double tx_power_dbm, double boundary_distance_cm,
                            double floor_dbm, double path_loss_exponent,
                            double reference_distance_cm) {
    if (!(boundary_distance_cm > 0.0) || !(reference_distance_cm > 0.0)) {
        throw InfeasibleCalibration("non-positive distance");
    }
    if (boundary_distance_cm < reference_distance_cm) {
        throw InfeasibleCalibration("boundary inside reference distance");
    }
    return tx_power_dbm - floor_dbm -
           20.0 * path_loss_exponent *
               std::log10(boundary_distance_cm / reference_distance_cm);
}

LinkParams reader_profile(double tx_power_dbm, double frequency_mhz,
                          double boundary_distance_cm, double path_loss_exponent,
                          double floor_dbm, double reference_distance_cm) {
    if (tx_power_dbm < 20.0 || tx_power_dbm > 30.0) {
        throw InvalidLinkProfile("tx power " + std::to_string(tx_power_dbm) +
                                 " dBm outside the 20-30 dBm envelope");
    }
    if (frequency_mhz < 902.0 || frequency_mhz > 928.0) {
        throw InvalidLinkProfile("frequency " + std::to_string(frequency_mhz) +
                                 " MHz outside the 902-928 MHz band");
    }
    LinkParams link;
    link.tx_power_dbm = tx_power_dbm;
    link.frequency_mhz = frequency_mhz;
    link.path_loss_exponent = path_loss_exponent;
    link.rssi_floor_dbm = floor_dbm;
    link.reference_distance_cm = reference_distance_cm;
    link.fixed_loss_db = calibrate_fixed_loss(tx_power_dbm, boundary_distance_cm,
                                              floor_dbm, path_loss_exponent,
                                              reference_distance_cm);
    return link;
}

double rssi_at(const LinkParams& link, double distance_cm) {
    check_distance(distance_cm);
    return link.tx_power_dbm - link.fixed_loss_db -
           20.0 * link.path_loss_exponent *
               std::log10(distance_cm / link.reference_distance_cm);
}

double link_margin(const LinkParams& link, double distance_cm) {
    return rssi_at(link, distance_cm) - link.rssi_floor_dbm;
}

bool is_readable(const LinkParams& link, double distance_cm) {
    return link_margin(link, distance_cm) >= 0.0;
}

double read_rate(const LinkParams& link, double distance_cm) {
    const double margin = link_margin(link, distance_cm);
    const double ramp = std::clamp(margin / link.margin_knee_db, 0.0, 1.0);
    return kPeakReadRateSps * ramp;
}

double miss_probability(const LinkParams& link, double distance_cm) {
    const double margin = link_margin(link, distance_cm);
    if (margin <= 0.0) return 1.0;
    if (margin >= link.margin_knee_db) return link.p_base;
    const double t = margin / link.margin_knee_db;
    return 1.0 + (link.p_base - 1.0) * t;
}

} // namespace ondr
