#pragma once

#include <stdexcept>
#include <string>

namespace abscope {

// Every domain error the library raises, one code per condition.
enum class Errc {
    degree_out_of_range,
    reducible_polynomial,
    not_primitive,
    log_of_zero,
    dimension_mismatch,
    length_not_power_of_two,
    odd_linearity,
    exponent_out_of_range,
    even_m,
    zero_alpha,
    not_coprime,
    degenerate_subspace,
    non_integer_result,
    not_almost_bent,
    wrong_cardinality,
    period_mismatch,
    even_period,
    weight_overflow,
    invalid_subvector_query,
    weight_not_power_of_two,
    gold_input,
    not_canonical,
    unknown_command,
    bad_flag,
    unknown_format,
    range_empty,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
          code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
    throw Error(code, detail);
}

} // namespace abscope
