#pragma once

#include <stdexcept>
#include <string>

namespace ondr {

// Base for all domain errors. Every error carries a stable snake_case code
// that is reused verbatim by the wire protocol and the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message.empty() ? code : code + ": " + message),
          code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define ONDR_DEFINE_ERROR(NAME, CODE)                                \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& message = "")               \
            : Error(CODE, message) {}                                \
    }

// domain-model
ONDR_DEFINE_ERROR(MalformedEpc, "malformed_epc");
ONDR_DEFINE_ERROR(DuplicateEpc, "duplicate_epc");
ONDR_DEFINE_ERROR(InvalidModeForKind, "invalid_mode_for_kind");
ONDR_DEFINE_ERROR(UnknownEpc, "unknown_epc");
ONDR_DEFINE_ERROR(KindMismatch, "kind_mismatch");
ONDR_DEFINE_ERROR(AlreadyConnected, "already_connected");
ONDR_DEFINE_ERROR(InvalidLayout, "invalid_layout");
ONDR_DEFINE_ERROR(ZeroArea, "zero_area");
ONDR_DEFINE_ERROR(InvalidLedState, "invalid_led_state");

// radio-link
ONDR_DEFINE_ERROR(NonPositiveDistance, "non_positive_distance");
ONDR_DEFINE_ERROR(InfeasibleCalibration, "infeasible_calibration");
ONDR_DEFINE_ERROR(InvalidLinkProfile, "invalid_link_profile");

// inventory-protocol
ONDR_DEFINE_ERROR(InvalidProtocolConfig, "invalid_protocol_config");

// pairing-verify
ONDR_DEFINE_ERROR(NotMaster, "not_master");

// navigation
ONDR_DEFINE_ERROR(OutOfRange, "out_of_range");
ONDR_DEFINE_ERROR(WrongKind, "wrong_kind");
ONDR_DEFINE_ERROR(NotInDatabase, "not_in_database");
ONDR_DEFINE_ERROR(TargetNotFound, "target_not_found");
ONDR_DEFINE_ERROR(InvalidSessionState, "invalid_session_state");

// antenna-analysis
ONDR_DEFINE_ERROR(MalformedOptionLine, "malformed_option_line");
ONDR_DEFINE_ERROR(MalformedDataLine, "malformed_data_line");
ONDR_DEFINE_ERROR(NonMonotoneFrequency, "non_monotone_frequency");
ONDR_DEFINE_ERROR(EmptyTrace, "empty_trace");

// datastore-service
ONDR_DEFINE_ERROR(IoFailure, "io_failure");
ONDR_DEFINE_ERROR(CorruptStore, "corrupt_store");
ONDR_DEFINE_ERROR(MissingFile, "missing_file");
ONDR_DEFINE_ERROR(MalformedRequest, "malformed_request");
ONDR_DEFINE_ERROR(UnknownVerb, "unknown_verb");

// cli-harness
ONDR_DEFINE_ERROR(InvalidScenario, "invalid_scenario");

#undef ONDR_DEFINE_ERROR

} // namespace ondr
