#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "abscope/field.hpp"

namespace abscope {

/// Binary sequence of period n; indices are taken modulo n.
struct PeriodicSequence {
    std::uint64_t period = 0;
    std::vector<std::uint8_t> bits; // size == period, values in {0, 1}

    std::uint8_t at(std::uint64_t i) const { return bits[i % period]; }
    std::uint64_t weight() const;
};

/// a_i = tr(zeta^i), period 2^m - 1.
PeriodicSequence m_sequence(const Field& field);

/// The d-decimation a^[d]: output_i = a_{i d mod n}. Decimation by d with
/// gcd(d, n) != 1 still computes but no longer yields an m-sequence.
PeriodicSequence decimate(const PeriodicSequence& a, std::uint64_t d);

/// c_t(a) = sum_i (-1)^{a_i + a_{i+t}}.
std::int64_t autocorrelation(const PeriodicSequence& a, std::uint64_t t);

/// c_t(a, b) = sum_i (-1)^{a_i + b_{i+t}}; periods must agree.
std::int64_t crosscorrelation(const PeriodicSequence& a, const PeriodicSequence& b,
                              std::uint64_t t);

/// All out-of-phase autocorrelations equal -1; period must be odd.
bool is_perfect(const PeriodicSequence& a);

struct BridgeReport {
    bool identity_holds = false;       // c_t(a^[d], a) = W_d(zeta^t) - 1 for all t
    std::int64_t max_crosscorrelation = 0; // max_t c_t(a^[d], a)
    std::int64_t linearity = 0;        // L(x^d) = max_alpha |W_d(alpha)|
    bool linearity_matches = false;    // L == max_t |c_t + 1|
};

/// Verifies the crosscorrelation/Walsh bridge pointwise for every phase
/// shift. Requires gcd(d, 2^m - 1) = 1.
BridgeReport crosscorr_walsh_bridge(std::uint64_t d, const Field& field);

/// "".join of the bits, a_0 first.
std::string to_string(const PeriodicSequence& a);
PeriodicSequence sequence_from_string(std::string_view text);

} // namespace abscope
