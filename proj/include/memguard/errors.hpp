#pragma once

#include <stdexcept>
#include <string>

namespace memguard {

/// Stable machine-readable error codes. The service layer maps these to
/// HTTP statuses; the CLI prints them in its JSON error objects.
enum class ErrorCode {
    // core
    duplicate_id,
    unknown_id,
    non_unit_embedding,
    malformed_atom,
    dimension_mismatch,
    unknown_node,
    unknown_endpoint,
    self_loop,
    // gateway
    unknown_template,
    missing_slot,
    provider_unreachable,
    malformed_json_after_retries,
    missing_key,
    empty_text,
    script_exhausted,
    unscripted_template,
    // write pipeline
    empty_conversation,
    conversation_parse,
    zero_valid_atoms,
    id_collision,
    operation_for_unknown_draft,
    invalid_operation,
    unknown_old_memory_id,
    unknown_existing_id,
    // retrieval
    empty_query,
    negative_weight,
    sum_out_of_tolerance,
    missing_type_key,
    // persistence
    io_failure,
    path_not_writable,
    parse_error,
    version_mismatch,
    integrity_violation,
    // evaluation
    score_out_of_enum,
    label_out_of_enum,
    empty_input,
    dataset_parse_error,
    report_io_failure,
    // service
    bind_failure,
    snapshot_load_failure,
    bad_request,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace memguard
