#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "abscope/field.hpp"

namespace abscope {

/// Boolean function on GF(2^m) as a table of 2^m bits indexed by the
/// element bitmask.
struct TruthTable {
    int m = 0;
    std::vector<std::uint8_t> bits; // values in {0, 1}, size 2^m
};

/// The 2^m Walsh coefficients W_f(gamma) = sum_x (-1)^{tr(gamma x) + f(x)},
/// indexed by the field element gamma.
struct WalshSpectrum {
    int m = 0;
    std::vector<std::int32_t> coeffs; // size 2^m
};

/// Per-coordinate summary of a vectorial power map x^d.
struct AbReport {
    bool is_ab = false;
    std::int64_t linearity = 0; // L(F) = max over coordinates
    // Walsh value -> count for a single coordinate function (identical across
    // beta when is_ab holds; the beta = 1 coordinate otherwise).
    std::map<std::int64_t, std::uint64_t> value_multiplicities;
    bool sign_rule_ok = false;  // counts match the tr(beta F(0)) rule
    std::uint64_t gcd_with_order = 0; // gcd(d, 2^m - 1); 1 means bijective
};

/// In-place Walsh-Hadamard butterfly: v[u] <- sum_x (-1)^{parity(u & x)} v[x].
/// Length must be a power of two.
void wht_inplace(std::span<std::int32_t> v);

/// Reference transform by the direct double loop. Oracle for walsh_fast.
WalshSpectrum walsh_naive(const TruthTable& f, const Field& field);

/// Butterfly transform plus the dual-basis reindexing; identical output to
/// walsh_naive in O(m 2^m).
WalshSpectrum walsh_fast(const TruthTable& f, const Field& field);

/// max_gamma |W_f(gamma)|. Pairing-independent, so no field is needed.
std::int64_t linearity(const TruthTable& f);

/// 2^{m-1} - linearity/2, the distance to the first-order Reed-Muller code.
std::int64_t nonlinearity(const TruthTable& f);

/// Spectrum of x -> tr(x^d): coeffs[alpha] = sum_x (-1)^{tr(alpha x + x^d)}.
WalshSpectrum power_walsh(std::uint64_t d, const Field& field);

/// Truth table of x -> tr(x^d), built by one multiplicative walk.
TruthTable power_trace_table(std::uint64_t d, const Field& field);

/// max over beta != 0 of linearity(tr(beta F(x))) for a vectorial F given as
/// a full value table.
std::int64_t vector_linearity(std::span<const Element> F, const Field& field,
                              unsigned jobs = 0);

/// Almost-bent classification of x^d from all 2^m - 1 coordinate spectra.
/// Requires odd m.
AbReport classify_ab(std::uint64_t d, const Field& field, unsigned jobs = 0);

/// JSON array of the coefficients indexed by gamma.
std::string to_json(const WalshSpectrum& w);
/// CSV with a "gamma,coefficient" header.
std::string to_csv(const WalshSpectrum& w);

} // namespace abscope
