#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abscope/field.hpp"

namespace abscope {

/// Length-m bit string (z_{m-1}, ..., z_0) with cyclic-shift, run, gap and
/// subvector semantics. Holds exponent vectors d-bar.
class CyclicBitVector {
public:
    CyclicBitVector(int m, std::uint32_t bits);
    static CyclicBitVector from_exponent(std::uint64_t d, int m);
    /// Parses "z_{m-1} ... z_0" (most significant first).
    static CyclicBitVector parse(std::string_view text);

    int length() const noexcept { return m_; }
    std::uint32_t bits() const noexcept { return bits_; }
    int weight() const noexcept;
    std::uint64_t to_exponent() const noexcept { return bits_; }

    /// Cyclic shift left by t positions.
    CyclicBitVector shifted(int t) const noexcept;

    /// Proper subvector: nonzero, not equal to v, ones contained in v's ones.
    bool subvector_of(const CyclicBitVector& v) const noexcept;

    struct Run {
        int start = 0; // cyclic start: the run occupies start, start+1, ... mod m
        int length = 0;
    };
    /// Maximal cyclic runs of ones, ascending by start.
    std::vector<Run> runs() const;
    /// Maximal cyclic runs of zeros, ascending by start.
    std::vector<Run> gaps() const;

    /// z_{m-1} first.
    std::string to_string() const;

    friend bool operator==(const CyclicBitVector&, const CyclicBitVector&) = default;

private:
    int m_ = 0;
    std::uint32_t bits_ = 0;
};

/// The cyclotomic coset {2^i d mod 2^m-1} with its smallest odd member.
struct ExponentCoset {
    std::vector<std::uint64_t> members; // ascending
    std::uint64_t canonical = 0;        // smallest odd member
};

ExponentCoset cyclotomic_coset(std::uint64_t d, int m);

/// Gold / Kasami membership of the coset of d, plus gcd(d, 2^m - 1).
struct ExponentClass {
    bool gold = false;
    int gold_k = 0;   // smallest witnessing k when gold
    bool kasami = false;
    int kasami_k = 0; // smallest witnessing k when kasami
    std::uint64_t gcd_with_order = 0;
    std::uint64_t canonical = 0;
};

ExponentClass classify_exponent(std::uint64_t d, int m);

/// tr(x^d + (x+1)^d + 1) = 0 for all x, by full enumeration. Even d is
/// replaced by its smallest odd coset member first (the identity is
/// coset-invariant).
bool trace_identity(std::uint64_t d, const Field& field);

/// Combinatorial route to the same predicate: expand x^d + (x+1)^d + 1 over
/// the proper nonzero submasks of d and count monomials of tr(p(x)) per
/// cyclotomic class; the trace vanishes everywhere iff every reduced count
/// is even. Independent of the field enumeration.
struct MonomialParity {
    bool even_everywhere = false;
    std::vector<std::uint64_t> odd_class_representatives; // ascending canonical
};

MonomialParity monomial_parity(std::uint64_t d, int m,
                               int weight_cap = 20);

/// Number of shift indices i with s^{(i)} a proper subvector of dbar
/// (multiset semantics: coinciding shifted vectors count once per index).
std::uint64_t subvector_multiset_count(const CyclicBitVector& s,
                                       const CyclicBitVector& dbar);

enum class WitnessPath {
    line4,
    line6,
    line7,
    line8,
    weight_obstruction,
    fallback,
};

const char* witness_path_name(WitnessPath p) noexcept;

struct WitnessResult {
    int m = 0;
    std::uint64_t d = 0;
    CyclicBitVector witness{1, 0};
    std::uint64_t multiset_size = 0;
    WitnessPath path = WitnessPath::line4;
    bool verified = false;

    std::string to_json() const;
};

/// Odd-weight obstruction: when weight(dbar) is not a power of two, some
/// binomial coefficient C(z, i) is odd and a weight-i subvector with odd
/// multiset count exists. Returns nothing when the weight is a power of two.
std::optional<WitnessResult> weight_obstruction_witness(const CyclicBitVector& dbar);

/// The run/gap loop for weight 2^n, n >= 2, odd m, canonical dbar. Every
/// constructed witness is re-verified with subvector_multiset_count; when the
/// construction yields an even count (or reproduces dbar itself), the
/// monomial-parity fallback supplies a witness and the path tag records it.
WitnessResult find_odd_witness(const CyclicBitVector& dbar);

/// Dispatch on the weight of the canonical coset vector: weight 2 has no
/// witness (the identity holds), non-power-of-two weights use the binomial
/// obstruction, and power-of-two weights >= 4 run the full algorithm.
WitnessResult witness_for(std::uint64_t d, int m);

/// Checks that {alpha : W_d(alpha) != 0} is the hyperplane {tr(gamma x) = 1}
/// and returns gamma. Requires x^d almost bent; Gold exponents force
/// gamma = 1.
struct SupportCheck {
    bool matches = false;
    Element gamma = 0;
    std::uint64_t support_size = 0;
};

SupportCheck gold_support_check(std::uint64_t d, const Field& field);

/// sum_y (-1)^{tr(y^d + (y+omega)^d)}. For Gold d and odd m this is 2^m at
/// omega = 0, -2^m at omega = 1 and 0 elsewhere.
std::int64_t dd_correlation(std::uint64_t d, Element omega, const Field& field);

} // namespace abscope
