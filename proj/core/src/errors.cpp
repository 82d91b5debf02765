#include "abscope/errors.hpp"

namespace abscope {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::degree_out_of_range:      return "DegreeOutOfRange";
    case Errc::reducible_polynomial:     return "ReduciblePolynomial";
    case Errc::not_primitive:            return "NotPrimitive";
    case Errc::log_of_zero:              return "LogOfZero";
    case Errc::dimension_mismatch:       return "DimensionMismatch";
    case Errc::length_not_power_of_two:  return "LengthNotPowerOfTwo";
    case Errc::odd_linearity:            return "OddLinearity";
    case Errc::exponent_out_of_range:    return "ExponentOutOfRange";
    case Errc::even_m:                   return "EvenM";
    case Errc::zero_alpha:               return "ZeroAlpha";
    case Errc::not_coprime:              return "NotCoprime";
    case Errc::degenerate_subspace:      return "DegenerateSubspace";
    case Errc::non_integer_result:       return "NonIntegerResult";
    case Errc::not_almost_bent:          return "NotAlmostBent";
    case Errc::wrong_cardinality:        return "WrongCardinality";
    case Errc::period_mismatch:          return "PeriodMismatch";
    case Errc::even_period:              return "EvenPeriod";
    case Errc::weight_overflow:          return "WeightOverflow";
    case Errc::invalid_subvector_query:  return "InvalidSubvectorQuery";
    case Errc::weight_not_power_of_two:  return "WeightNotPowerOfTwo";
    case Errc::gold_input:               return "GoldInput";
    case Errc::not_canonical:            return "NotCanonical";
    case Errc::unknown_command:          return "UnknownCommand";
    case Errc::bad_flag:                 return "BadFlag";
    case Errc::unknown_format:           return "UnknownFormat";
    case Errc::range_empty:              return "RangeEmpty";
    }
    return "UnknownError";
}

} // namespace abscope
