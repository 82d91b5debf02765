#include "abscope/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abscope/parallel.hpp"

namespace abscope {

void wht_inplace(std::span<std::int32_t> v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        fail(Errc::length_not_power_of_two,
             "transform length " + std::to_string(n) + " is not a power of two");
    }
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t a = v[j];
                const std::int32_t b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

WalshSpectrum walsh_naive(const TruthTable& f, const Field& field) {
    if (f.m != field.degree() || f.bits.size() != field.size()) {
        fail(Errc::dimension_mismatch, "truth table does not match the field degree");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    WalshSpectrum w{f.m, std::vector<std::int32_t>(n, 0)};
    for (std::uint32_t gamma = 0; gamma < n; ++gamma) {
        std::int32_t acc = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
            const int sign = field.trace_beta(gamma, x) ^ f.bits[x];
            acc += sign ? -1 : 1;
        }
        w.coeffs[gamma] = acc;
    }
    return w;
}

namespace {

// dual_of[gamma] = u with tr(gamma x) = parity(u & x), for all gamma at once.
std::vector<std::uint32_t> dual_index_map(const Field& field) {
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    std::vector<std::uint32_t> dual(n, 0);
    for (std::uint32_t gamma = 1; gamma < n; ++gamma) {
        const std::uint32_t rest = gamma & (gamma - 1);
        const int low = std::countr_zero(gamma);
        dual[gamma] = dual[rest] ^ field.dual_mask(std::uint32_t{1} << low);
    }
    return dual;
}

std::int64_t max_abs_wht(const TruthTable& f) {
    const std::size_t n = f.bits.size();
    std::vector<std::int32_t> v(n);
    for (std::size_t x = 0; x < n; ++x) v[x] = f.bits[x] ? -1 : 1;
    wht_inplace(v);
    std::int64_t best = 0;
    for (std::int32_t c : v) best = std::max<std::int64_t>(best, std::abs(std::int64_t{c}));
    return best;
}

} // namespace

WalshSpectrum walsh_fast(const TruthTable& f, const Field& field) {
    if (f.m != field.degree() || f.bits.size() != field.size()) {
        fail(Errc::dimension_mismatch, "truth table does not match the field degree");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    std::vector<std::int32_t> v(n);
    for (std::uint32_t x = 0; x < n; ++x) v[x] = f.bits[x] ? -1 : 1;
    wht_inplace(v);
    const auto dual = dual_index_map(field);
    WalshSpectrum w{f.m, std::vector<std::int32_t>(n)};
    for (std::uint32_t gamma = 0; gamma < n; ++gamma) {
        w.coeffs[gamma] = v[dual[gamma]];
    }
    return w;
}

std::int64_t linearity(const TruthTable& f) {
    return max_abs_wht(f);
}

std::int64_t nonlinearity(const TruthTable& f) {
    const std::int64_t lin = linearity(f);
    if (lin & 1) {
        fail(Errc::odd_linearity, "linearity " + std::to_string(lin) + " is odd; table corrupted");
    }
    return (std::int64_t{1} << (f.m - 1)) - lin / 2;
}

TruthTable power_trace_table(std::uint64_t d, const Field& field) {
    if (d < 1 || d > field.order() - 1) {
        fail(Errc::exponent_out_of_range,
             "d=" + std::to_string(d) + " outside [1, 2^m-2]");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    TruthTable t{field.degree(), std::vector<std::uint8_t>(n, 0)};
    // Walk x = zeta^i and x^d = (zeta^d)^i together: two multiplications per
    // element instead of a discrete log per element.
    const Element zd = field.pow(field.zeta(), d);
    Element x = 1;
    Element xd = 1;
    for (std::uint64_t i = 0; i < field.order(); ++i) {
        t.bits[x] = static_cast<std::uint8_t>(field.trace(xd));
        x = field.mul(x, field.zeta());
        xd = field.mul(xd, zd);
    }
    t.bits[0] = 0; // 0^d = 0 for d >= 1
    return t;
}

WalshSpectrum power_walsh(std::uint64_t d, const Field& field) {
    return walsh_fast(power_trace_table(d, field), field);
}

std::int64_t vector_linearity(std::span<const Element> F, const Field& field,
                              unsigned jobs) {
    if (F.size() != field.size()) {
        fail(Errc::dimension_mismatch, "value table does not match the field size");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    std::vector<std::int64_t> per_beta(n - 1, 0);
    parallel_for(n - 1, jobs, [&](std::size_t idx) {
        const Element beta = static_cast<Element>(idx + 1);
        TruthTable t{field.degree(), std::vector<std::uint8_t>(n)};
        for (std::uint32_t x = 0; x < n; ++x) {
            t.bits[x] = static_cast<std::uint8_t>(field.trace_beta(beta, F[x]));
        }
        per_beta[idx] = max_abs_wht(t);
    });
    return *std::max_element(per_beta.begin(), per_beta.end());
}

AbReport classify_ab(std::uint64_t d, const Field& field, unsigned jobs) {
    const int m = field.degree();
    if (m % 2 == 0) {
        fail(Errc::even_m, "AB classification requested for even m=" + std::to_string(m));
    }
    if (d < 1 || d > field.order() - 1) {
        fail(Errc::exponent_out_of_range,
             "d=" + std::to_string(d) + " outside [1, 2^m-2]");
    }
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    const std::int64_t ab_value = std::int64_t{1} << ((m + 1) / 2);

    // F(x) = x^d evaluated once; coordinate tables reuse it.
    std::vector<Element> F(n);
    {
        const Element zd = field.pow(field.zeta(), d);
        Element x = 1, xd = 1;
        for (std::uint64_t i = 0; i < field.order(); ++i) {
            F[x] = xd;
            x = field.mul(x, field.zeta());
            xd = field.mul(xd, zd);
        }
        F[0] = 0;
    }

    struct PerBeta {
        std::int64_t max_abs = 0;
        bool three_valued = true;
        std::map<std::int64_t, std::uint64_t> counts;
    };
    std::vector<PerBeta> rows(n - 1);
    parallel_for(n - 1, jobs, [&](std::size_t idx) {
        const Element beta = static_cast<Element>(idx + 1);
        std::vector<std::int32_t> v(n);
        for (std::uint32_t x = 0; x < n; ++x) {
            v[x] = field.trace_beta(beta, F[x]) ? -1 : 1;
        }
        wht_inplace(v);
        PerBeta row;
        for (std::int32_t c : v) {
            row.max_abs = std::max<std::int64_t>(row.max_abs, std::abs(std::int64_t{c}));
            if (c != 0 && std::abs(std::int64_t{c}) != ab_value) row.three_valued = false;
            ++row.counts[c];
        }
        rows[idx] = std::move(row);
    });

    AbReport report;
    report.gcd_with_order = std::gcd(d, field.order());
    report.linearity = 0;
    bool all_three_valued = true;
    for (const auto& row : rows) {
        report.linearity = std::max(report.linearity, row.max_abs);
        all_three_valued = all_three_valued && row.three_valued;
    }
    report.is_ab = all_three_valued && report.linearity == ab_value;
    report.value_multiplicities = rows.front().counts;
    if (report.is_ab) {
        for (const auto& row : rows) {
            if (row.counts != report.value_multiplicities) {
                report.is_ab = false; // cannot happen for F(0) = 0; recorded anyway
                break;
            }
        }
    }

    // Multiplicity law: with t = tr(beta F(0)), +2^{(m+1)/2} occurs
    // 2^{m-2} + (-1)^t 2^{(m-3)/2} times and the negative value the rest.
    if (report.is_ab) {
        const std::int64_t half = std::int64_t{1} << (m - 1);
        const std::int64_t base = std::int64_t{1} << (m - 2);
        const std::int64_t skew = std::int64_t{1} << ((m - 3) / 2);
        report.sign_rule_ok = true;
        for (std::uint32_t idx = 0; idx < n - 1; ++idx) {
            const Element beta = idx + 1;
            const int t = field.trace_beta(beta, F[0]);
            const auto& counts = rows[idx].counts;
            auto count_of = [&](std::int64_t v) -> std::int64_t {
                auto it = counts.find(v);
                return it == counts.end() ? 0 : static_cast<std::int64_t>(it->second);
            };
            const std::int64_t plus = t == 0 ? base + skew : base - skew;
            if (count_of(0) != half || count_of(ab_value) != plus ||
                count_of(-ab_value) != (2 * base - plus)) {
                report.sign_rule_ok = false;
                break;
            }
        }
    }
    return report;
}

std::string to_json(const WalshSpectrum& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::int32_t c : w.coeffs) arr.push_back(c);
    return arr.dump();
}

std::string to_csv(const WalshSpectrum& w) {
    std::ostringstream out;
    out << "gamma,coefficient\n";
    for (std::size_t gamma = 0; gamma < w.coeffs.size(); ++gamma) {
        out << gamma << ',' << w.coeffs[gamma] << '\n';
    }
    return out.str();
}

} // namespace abscope
