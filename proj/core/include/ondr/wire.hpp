#pragma once

#include <string>
#include <string_view>

#include "ondr/inventory.hpp"
#include "ondr/radio_link.hpp"
#include "ondr/store.hpp"

namespace ondr {

/// Simulation defaults used by the VERIFY / INVENTORY / NAVIGATE verbs;
/// individual requests may override the seed and distance.
struct ServiceConfig {
    LinkParams link = reader_profile(30.0, 915.0);
    ProtocolConfig protocol;
    double tag_distance_cm = 30.0;
};

/// Handles one line of the wire protocol and produces exactly one response
/// line (both newline-free JSON). Mutating verbs (REGISTER, CONNECT and the
/// LED/audit effects of NAVIGATE) persist the store before acknowledging.
/// Never throws: every failure maps to {"status":"ERR","code":...}.
std::string handle_request(Store& store, const ServiceConfig& config,
                           std::string_view request_line);

} // namespace ondr
