#include "memguard/errors.hpp"

namespace memguard {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::duplicate_id: return "duplicate-id";
        case ErrorCode::unknown_id: return "unknown-id";
        case ErrorCode::non_unit_embedding: return "non-unit-embedding";
        case ErrorCode::malformed_atom: return "malformed-atom";
        case ErrorCode::dimension_mismatch: return "dimension-mismatch";
        case ErrorCode::unknown_node: return "unknown-node";
        case ErrorCode::unknown_endpoint: return "unknown-endpoint";
        case ErrorCode::self_loop: return "self-loop";
        case ErrorCode::unknown_template: return "unknown-template";
        case ErrorCode::missing_slot: return "missing-slot";
        case ErrorCode::provider_unreachable: return "provider-unreachable";
        case ErrorCode::malformed_json_after_retries: return "malformed-json-after-retries";
        case ErrorCode::missing_key: return "missing-key";
        case ErrorCode::empty_text: return "empty-text";
        case ErrorCode::script_exhausted: return "script-exhausted";
        case ErrorCode::unscripted_template: return "unscripted-template";
        case ErrorCode::empty_conversation: return "empty-conversation";
        case ErrorCode::conversation_parse: return "conversation-parse";
        case ErrorCode::zero_valid_atoms: return "zero-valid-atoms";
        case ErrorCode::id_collision: return "id-collision";
        case ErrorCode::operation_for_unknown_draft: return "operation-for-unknown-draft";
        case ErrorCode::invalid_operation: return "invalid-operation";
        case ErrorCode::unknown_old_memory_id: return "unknown-old-memory-id";
        case ErrorCode::unknown_existing_id: return "unknown-existing-id";
        case ErrorCode::empty_query: return "empty-query";
        case ErrorCode::negative_weight: return "negative-weight";
        case ErrorCode::sum_out_of_tolerance: return "sum-out-of-tolerance";
        case ErrorCode::missing_type_key: return "missing-type-key";
        case ErrorCode::io_failure: return "io-failure";
        case ErrorCode::path_not_writable: return "path-not-writable";
        case ErrorCode::parse_error: return "parse-error";
        case ErrorCode::version_mismatch: return "version-mismatch";
        case ErrorCode::integrity_violation: return "integrity-violation";
        case ErrorCode::score_out_of_enum: return "score-out-of-enum";
        case ErrorCode::label_out_of_enum: return "label-out-of-enum";
        case ErrorCode::empty_input: return "empty-input";
        case ErrorCode::dataset_parse_error: return "dataset-parse-error";
        case ErrorCode::report_io_failure: return "report-io-failure";
        case ErrorCode::bind_failure: return "bind-failure";
        case ErrorCode::snapshot_load_failure: return "snapshot-load-failure";
        case ErrorCode::bad_request: return "bad-request";
    }
    return "unknown-error";
}

}  // namespace memguard
