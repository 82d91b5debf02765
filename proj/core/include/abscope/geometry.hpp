#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abscope/field.hpp"
#include "abscope/walsh.hpp"

namespace abscope {

/// Subset of GF(2^m) as a packed bitset over element bitmasks.
struct SupportSet {
    int m = 0;
    std::vector<std::uint64_t> words;

    bool contains(Element x) const {
        return (words[x >> 6] >> (x & 63)) & 1;
    }
    std::uint64_t size() const;
};

/// Multiset of intersection sizes for a family of subspaces.
struct IntersectionProfile {
    enum class Family { hyperplane, codim2 };
    Family family = Family::hyperplane;
    std::map<std::int64_t, std::uint64_t> counts; // size -> multiplicity

    std::uint64_t family_size() const;
};

/// D_d = {x : tr(x^d) = 1}.
SupportSet support_set(std::uint64_t d, const Field& field);

/// |D cap H^i(alpha)| by direct count; alpha != 0.
std::uint64_t hyperplane_count(const SupportSet& D, Element alpha, int i,
                               const Field& field);

/// Multiset of |D cap H^0(alpha)| over alpha != 0, by direct count.
IntersectionProfile hyperplane_profile_of(const SupportSet& D, const Field& field);

/// hyperplane_profile_of(support_set(d)); requires odd m and gcd(d, 2^m-1) = 1.
IntersectionProfile hyperplane_profile(std::uint64_t d, const Field& field);

/// |H^{i,j}(alpha, beta) cap D| by direct count; alpha, beta nonzero and
/// distinct.
std::uint64_t codim2_count(const SupportSet& D, Element alpha, Element beta,
                           int i, int j, const Field& field);

/// The signed refinement of the seven-value identity:
///   2^{m-3} - ((-1)^i W(alpha) + (-1)^j W(beta) + (-1)^{i+j} W(alpha+beta)) / 8.
/// Valid for spectra of bijective power maps (W(0) = 0); must equal
/// codim2_count on every admissible cell.
std::int64_t codim2_from_walsh(const WalshSpectrum& W, Element alpha,
                               Element beta, int i, int j);

/// Multiset of codim-2 intersection sizes over unordered pairs {alpha, beta}
/// and the four (i, j) cells, via the Walsh identity.
IntersectionProfile codim2_profile(std::uint64_t d, const Field& field,
                                   unsigned jobs = 0);

struct ValueSetCheck {
    bool ok = false;
    std::vector<std::int64_t> observed; // ascending
};

/// Every codim-2 intersection lies in {2^{m-3} + h 2^{(m-5)/2} : |h| <= 3}.
/// Requires x^d almost bent.
ValueSetCheck seven_value_check(std::uint64_t d, const Field& field,
                                unsigned jobs = 0);

/// Every codim-2 intersection lies in {2^{m-3}, 2^{m-3} +- 2^{(m-3)/2}}.
/// True exactly for the Gold coset family among AB power maps.
bool three_value_check(std::uint64_t d, const Field& field, unsigned jobs = 0);

/// Hyperplane profile equals the nondegenerate-quadric profile. Requires
/// |D| = 2^{m-1} and odd m.
bool quasi_quadric_check(const SupportSet& D, const Field& field);

/// The quadric hyperplane profile an AB support must match (alpha != 0, so
/// the middle multiplicity is 2^{m-1} - 1).
IntersectionProfile quadric_hyperplane_profile(int m);

/// JSON object {"size": multiplicity} with keys in ascending numeric order.
std::string to_json(const IntersectionProfile& p);
/// CSV with a "size,multiplicity" header, ascending sizes.
std::string to_csv(const IntersectionProfile& p);

} // namespace abscope
