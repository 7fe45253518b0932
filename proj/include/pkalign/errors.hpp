#ifndef PKALIGN_ERRORS_HPP
#define PKALIGN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pkalign {

enum class Errc {
    index_out_of_range,
    not_increasing,
    shared_endpoint,
    bad_gap,
    wrong_type,
    base_is_paired,
    not_a_pairing,
    arity_mismatch,
    overlapping_intervals,
    out_of_range,
    unknown_pairing,
    half_blank_pairing,
    negative_score,
    nonzero_identity,
    unbounded_ratio,
    type_mismatch,
    unknown_letter,
    too_large,
    missing_records,
    unbalanced,
    length_mismatch,
    unknown_symbol,
    invalid_alignment,
    parse_error,
};

/// Library-wide exception carrying a machine-checkable error code.
struct Error : std::runtime_error {
    Errc code;
    Error(Errc code, const std::string& what) : std::runtime_error(what), code(code) {}
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace pkalign

#endif
