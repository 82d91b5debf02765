#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "abscope/errors.hpp"

namespace abscope {

/// Elements of GF(2^m) in the polynomial basis: bit i holds the coefficient
/// of x^i, so every element is a bitmask below 2^m.
using Element = std::uint32_t;

/// Immutable description of GF(2^m): modulus polynomial, a fixed primitive
/// element zeta, and (for m <= kTableDegreeLimit) log/antilog tables giving
/// O(1) multiplication. The object is safe to share across threads once
/// constructed; all operations are pure.
class Field {
public:
    /// Hard cap on the extension degree unless ABSCOPE_MAX_M raises it.
    static constexpr int kDefaultMaxDegree = 28;
    /// Largest degree for which full log/antilog tables are precomputed.
    /// Beyond this, mul falls back to shift-and-reduce and dlog to
    /// baby-step/giant-step.
    static constexpr int kTableDegreeLimit = 20;

    /// Builds GF(2^m) with the lexicographically smallest primitive modulus,
    /// so that zeta = x.
    static Field make(int m);

    /// Builds GF(2^m) over a caller-supplied irreducible modulus of exact
    /// degree m. zeta = x when x is primitive, otherwise the smallest
    /// primitive element.
    static Field make(int m, std::uint32_t modulus);

    /// Lexicographically smallest primitive polynomial of the given degree.
    static std::uint32_t default_modulus(int m);

    /// Effective degree cap: ABSCOPE_MAX_M when set to a valid value in
    /// [2, 31], else kDefaultMaxDegree.
    static int max_degree();

    int degree() const noexcept { return m_; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    Element zeta() const noexcept { return zeta_; }
    /// 2^m
    std::uint64_t size() const noexcept { return std::uint64_t{1} << m_; }
    /// 2^m - 1, the multiplicative group order.
    std::uint64_t order() const noexcept { return size() - 1; }

    Element add(Element a, Element b) const noexcept { return a ^ b; }
    Element mul(Element a, Element b) const;
    /// a^e with the exponent reduced mod 2^m-1 for a != 0;
    /// pow(0, e) = 0 for e >= 1 and pow(0, 0) = 1.
    Element pow(Element a, std::uint64_t e) const;
    /// tr(a) in {0, 1}.
    int trace(Element a) const noexcept;
    /// tr(beta * a).
    int trace_beta(Element beta, Element a) const;
    /// The i with zeta^i = a; throws LogOfZero for a = 0.
    std::uint64_t dlog(Element a) const;
    /// zeta^i for any i >= 0.
    Element antilog(std::uint64_t i) const;

    /// The mask u with tr(gamma * x) = parity(u & x) for all x.
    Element dual_mask(Element gamma) const noexcept;

    /// True when the log/antilog tables are resident.
    bool has_tables() const noexcept { return !log_.empty(); }

private:
    Field() = default;

    Element mul_reduce(Element a, Element b) const noexcept;
    void build(int m, std::uint32_t modulus, bool modulus_supplied);
    bool try_tables(Element zeta_candidate);
    void finish_construction();

    int m_ = 0;
    std::uint32_t modulus_ = 0;
    Element zeta_ = 0;
    std::uint64_t order_ = 0;
    std::uint32_t trace_mask_ = 0;        // bit i = tr(x^i)
    std::vector<Element> dual_basis_;     // dual_basis_[i] = dual_mask(x^i)
    std::vector<std::uint32_t> log_;      // size 2^m, log_[0] unused
    std::vector<Element> antilog_;        // size 2^m - 1
    // Baby-step table for dlog when log tables are not resident.
    std::unordered_map<Element, std::uint32_t> baby_;
    std::uint32_t baby_stride_ = 0;
    Element giant_step_ = 0;              // zeta^{-baby_stride_}
};

/// Degree of a GF(2)[x] polynomial given as a bitmask (-1 for the zero poly).
int poly_degree(std::uint64_t p) noexcept;

/// Irreducibility over GF(2) by trial division against every polynomial of
/// degree 1..deg(p)/2.
bool poly_irreducible(std::uint64_t p);

} // namespace abscope
