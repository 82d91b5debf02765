#include "abscope/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abscope/parallel.hpp"

namespace abscope {

namespace {

std::size_t word_count(int m) {
    return std::size_t{1} << (m > 6 ? m - 6 : 0);
}

std::uint64_t tail_mask(int m) {
    return m >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1 << m)) - 1;
}

// Packed indicator of {x : parity(u & x) = 1} for a dot-product functional u.
std::vector<std::uint64_t> functional_ones(std::uint32_t u, int m) {
    const std::size_t nw = word_count(m);
    std::vector<std::uint64_t> out(nw, 0);
    // Base pattern over the low 6 index bits, then a sign flip per word from
    // the high index bits.
    std::uint64_t base = 0;
    const unsigned low_span = m >= 6 ? 64u : (1u << m);
    for (unsigned y = 0; y < low_span; ++y) {
        if (std::popcount(u & y) & 1) base |= std::uint64_t{1} << y;
    }
    const std::uint32_t u_high = u >> 6;
    for (std::size_t w = 0; w < nw; ++w) {
        const bool flip = std::popcount(u_high & static_cast<std::uint32_t>(w)) & 1;
        out[w] = flip ? ~base : base;
    }
    out[nw - 1] &= tail_mask(m);
    if (m < 6) out[0] &= tail_mask(m);
    return out;
}

// Packed indicator of H^i(alpha) = {x : tr(alpha x) = i}.
std::vector<std::uint64_t> hyperplane_mask(const Field& field, Element alpha, int i) {
    auto ones = functional_ones(field.dual_mask(alpha), field.degree());
    if (i == 0) {
        for (auto& w : ones) w = ~w;
        ones[ones.size() - 1] &= tail_mask(field.degree());
        if (field.degree() < 6) ones[0] &= tail_mask(field.degree());
    }
    return ones;
}

std::uint64_t popcount_and(const std::vector<std::uint64_t>& a,
                           const std::vector<std::uint64_t>& b) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
    return c;
}

void require_ab(std::uint64_t d, const Field& field, const char* what) {
    const AbReport report = classify_ab(d, field);
    if (!report.is_ab) {
        fail(Errc::not_almost_bent,
             std::string(what) + " requires an almost bent power map; x^" +
                 std::to_string(d) + " has linearity " + std::to_string(report.linearity));
    }
}

} // namespace

std::uint64_t SupportSet::size() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words) c += std::popcount(w);
    return c;
}

std::uint64_t IntersectionProfile::family_size() const {
    std::uint64_t c = 0;
    for (const auto& [size, mult] : counts) c += mult;
    return c;
}

SupportSet support_set(std::uint64_t d, const Field& field) {
    const TruthTable t = power_trace_table(d, field); // checks the d range
    SupportSet D{field.degree(), std::vector<std::uint64_t>(word_count(field.degree()), 0)};
    for (std::uint32_t x = 0; x < field.size(); ++x) {
        if (t.bits[x]) D.words[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    return D;
}

std::uint64_t hyperplane_count(const SupportSet& D, Element alpha, int i,
                               const Field& field) {
    if (alpha == 0) fail(Errc::zero_alpha, "hyperplane requires alpha != 0");
    return popcount_and(D.words, hyperplane_mask(field, alpha, i));
}

IntersectionProfile hyperplane_profile_of(const SupportSet& D, const Field& field) {
    IntersectionProfile p;
    p.family = IntersectionProfile::Family::hyperplane;
    for (Element alpha = 1; alpha < field.size(); ++alpha) {
        ++p.counts[static_cast<std::int64_t>(hyperplane_count(D, alpha, 0, field))];
    }
    return p;
}

IntersectionProfile hyperplane_profile(std::uint64_t d, const Field& field) {
    if (field.degree() % 2 == 0) {
        fail(Errc::even_m, "hyperplane profile classification requires odd m");
    }
    if (std::gcd(d, field.order()) != 1) {
        fail(Errc::not_coprime,
             "gcd(" + std::to_string(d) + ", 2^m-1) != 1");
    }
    return hyperplane_profile_of(support_set(d, field), field);
}

std::uint64_t codim2_count(const SupportSet& D, Element alpha, Element beta,
                           int i, int j, const Field& field) {
    if (alpha == 0 || beta == 0 || alpha == beta) {
        fail(Errc::degenerate_subspace, "codim-2 cell requires distinct nonzero alpha, beta");
    }
    const auto ha = hyperplane_mask(field, alpha, i);
    const auto hb = hyperplane_mask(field, beta, j);
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < ha.size(); ++w) {
        c += std::popcount(D.words[w] & ha[w] & hb[w]);
    }
    return c;
}

std::int64_t codim2_from_walsh(const WalshSpectrum& W, Element alpha,
                               Element beta, int i, int j) {
    if (alpha == 0 || beta == 0 || alpha == beta) {
        fail(Errc::degenerate_subspace, "codim-2 cell requires distinct nonzero alpha, beta");
    }
    const std::int64_t wa = W.coeffs[alpha];
    const std::int64_t wb = W.coeffs[beta];
    const std::int64_t wab = W.coeffs[alpha ^ beta];
    const std::int64_t sa = i ? -wa : wa;
    const std::int64_t sb = j ? -wb : wb;
    const std::int64_t sab = (i ^ j) ? -wab : wab;
    const std::int64_t numerator = (std::int64_t{1} << W.m) - sa - sb - sab;
    if (numerator % 8 != 0) {
        fail(Errc::non_integer_result,
             "codim-2 identity numerator not divisible by 8; spectrum inconsistent");
    }
    return numerator / 8;
}

IntersectionProfile codim2_profile(std::uint64_t d, const Field& field, unsigned jobs) {
    const WalshSpectrum W = power_walsh(d, field);
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    std::vector<std::map<std::int64_t, std::uint64_t>> partial(n - 1);
    parallel_for(n - 1, jobs, [&](std::size_t idx) {
        const Element alpha = static_cast<Element>(idx + 1);
        auto& local = partial[idx];
        for (Element beta = alpha + 1; beta < n; ++beta) {
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    ++local[codim2_from_walsh(W, alpha, beta, i, j)];
                }
            }
        }
    });
    IntersectionProfile p;
    p.family = IntersectionProfile::Family::codim2;
    for (const auto& local : partial) {
        for (const auto& [size, mult] : local) p.counts[size] += mult;
    }
    return p;
}

ValueSetCheck seven_value_check(std::uint64_t d, const Field& field, unsigned jobs) {
    const int m = field.degree();
    require_ab(d, field, "seven_value_check");
    const IntersectionProfile p = codim2_profile(d, field, jobs);
    // Envelope in doubled units: 2v = 2^{m-2} + h 2^{(m-3)/2}, |h| <= 3;
    // this form stays integral down to m = 3.
    const std::int64_t center2 = std::int64_t{1} << (m - 2);
    const std::int64_t step2 = std::int64_t{1} << ((m - 3) / 2);
    ValueSetCheck result;
    result.ok = true;
    for (const auto& [v, mult] : p.counts) {
        result.observed.push_back(v);
        const std::int64_t num = 2 * v - center2;
        if (num % step2 != 0 || std::abs(num / step2) > 3) result.ok = false;
    }
    return result;
}

bool three_value_check(std::uint64_t d, const Field& field, unsigned jobs) {
    const int m = field.degree();
    require_ab(d, field, "three_value_check");
    const IntersectionProfile p = codim2_profile(d, field, jobs);
    const std::int64_t center = std::int64_t{1} << (m - 3);
    const std::int64_t step = std::int64_t{1} << ((m - 3) / 2);
    for (const auto& [v, mult] : p.counts) {
        if (v != center && v != center - step && v != center + step) return false;
    }
    return true;
}

IntersectionProfile quadric_hyperplane_profile(int m) {
    IntersectionProfile p;
    p.family = IntersectionProfile::Family::hyperplane;
    const std::int64_t mid = std::int64_t{1} << (m - 2);
    const std::int64_t skew = std::int64_t{1} << ((m - 3) / 2);
    p.counts[mid] = (std::uint64_t{1} << (m - 1)) - 1;
    p.counts[mid - skew] = (std::uint64_t{1} << (m - 2)) + skew;
    p.counts[mid + skew] = (std::uint64_t{1} << (m - 2)) - skew;
    return p;
}

bool quasi_quadric_check(const SupportSet& D, const Field& field) {
    const int m = field.degree();
    if (m % 2 == 0) fail(Errc::even_m, "quasi-quadric check requires odd m");
    if (D.size() != std::uint64_t{1} << (m - 1)) {
        fail(Errc::wrong_cardinality,
             "|D| = " + std::to_string(D.size()) + " != 2^{m-1}");
    }
    const IntersectionProfile p = hyperplane_profile_of(D, field);
    return p.counts == quadric_hyperplane_profile(m).counts;
}

std::string to_json(const IntersectionProfile& p) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (const auto& [size, mult] : p.counts) {
        obj[std::to_string(size)] = mult;
    }
    return obj.dump();
}

std::string to_csv(const IntersectionProfile& p) {
    std::ostringstream out;
    out << "size,multiplicity\n";
    for (const auto& [size, mult] : p.counts) {
        out << size << ',' << mult << '\n';
    }
    return out.str();
}

} // namespace abscope
