#include "abscope/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "abscope/walsh.hpp"

namespace abscope {

std::uint64_t PeriodicSequence::weight() const {
    return static_cast<std::uint64_t>(std::count(bits.begin(), bits.end(), 1));
}

PeriodicSequence m_sequence(const Field& field) {
    const std::uint64_t n = field.order();
    PeriodicSequence a{n, std::vector<std::uint8_t>(n)};
    Element e = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        a.bits[i] = static_cast<std::uint8_t>(field.trace(e));
        e = field.mul(e, field.zeta());
    }
    return a;
}

PeriodicSequence decimate(const PeriodicSequence& a, std::uint64_t d) {
    const std::uint64_t n = a.period;
    if (n == 0) fail(Errc::dimension_mismatch, "empty sequence");
    PeriodicSequence out{n, std::vector<std::uint8_t>(n)};
    std::uint64_t idx = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        out.bits[i] = a.bits[idx];
        idx += d % n;
        if (idx >= n) idx -= n;
    }
    return out;
}

std::int64_t autocorrelation(const PeriodicSequence& a, std::uint64_t t) {
    return crosscorrelation(a, a, t);
}

std::int64_t crosscorrelation(const PeriodicSequence& a, const PeriodicSequence& b,
                              std::uint64_t t) {
    if (a.period != b.period) {
        fail(Errc::period_mismatch,
             std::to_string(a.period) + " vs " + std::to_string(b.period));
    }
    if (a.period == 0) fail(Errc::dimension_mismatch, "empty sequence");
    const std::uint64_t n = a.period;
    std::uint64_t j = t % n;
    std::int64_t acc = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        acc += (a.bits[i] ^ b.bits[j]) ? -1 : 1;
        if (++j == n) j = 0;
    }
    return acc;
}

bool is_perfect(const PeriodicSequence& a) {
    if (a.period % 2 == 0) {
        fail(Errc::even_period, "perfection is defined for odd periods");
    }
    for (std::uint64_t t = 1; t < a.period; ++t) {
        if (autocorrelation(a, t) != -1) return false;
    }
    return true;
}

BridgeReport crosscorr_walsh_bridge(std::uint64_t d, const Field& field) {
    if (std::gcd(d, field.order()) != 1) {
        fail(Errc::not_coprime, "gcd(" + std::to_string(d) + ", 2^m-1) != 1");
    }
    const PeriodicSequence a = m_sequence(field);
    const PeriodicSequence b = decimate(a, d);
    const WalshSpectrum W = power_walsh(d, field);

    BridgeReport report;
    report.identity_holds = true;
    std::int64_t max_corr = std::numeric_limits<std::int64_t>::min();
    std::int64_t max_shifted = 0;
    Element zt = 1; // zeta^t
    for (std::uint64_t t = 0; t < field.order(); ++t) {
        const std::int64_t c = crosscorrelation(b, a, t);
        if (c != std::int64_t{W.coeffs[zt]} - 1) report.identity_holds = false;
        max_corr = std::max(max_corr, c);
        max_shifted = std::max(max_shifted, std::abs(c + 1));
        zt = field.mul(zt, field.zeta());
    }
    report.max_crosscorrelation = max_corr;
    std::int64_t lin = 0;
    for (std::int32_t w : W.coeffs) lin = std::max<std::int64_t>(lin, std::abs(std::int64_t{w}));
    report.linearity = lin;
    report.linearity_matches = lin == max_shifted;
    return report;
}

std::string to_string(const PeriodicSequence& a) {
    std::string s;
    s.reserve(a.bits.size());
    for (std::uint8_t b : a.bits) s.push_back(b ? '1' : '0');
    return s;
}

PeriodicSequence sequence_from_string(std::string_view text) {
    PeriodicSequence a{text.size(), {}};
    a.bits.reserve(text.size());
    for (char c : text) a.bits.push_back(c == '1' ? 1 : 0);
    return a;
}

} // namespace abscope
