#include "abscope/gold.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abscope/walsh.hpp"

namespace abscope {

namespace {

std::uint32_t rotl_m(std::uint32_t v, int t, int m) noexcept {
    t %= m;
    if (t == 0) return v;
    const std::uint32_t mask = (m == 32) ? ~0u : (std::uint32_t{1} << m) - 1;
    return ((v << t) | (v >> (m - t))) & mask;
}

} // namespace

CyclicBitVector::CyclicBitVector(int m, std::uint32_t bits) : m_(m), bits_(bits) {
    if (m < 1 || m > 31) {
        fail(Errc::degree_out_of_range, "vector length " + std::to_string(m));
    }
    if (bits >> m) {
        fail(Errc::dimension_mismatch, "bits exceed the declared length");
    }
}

CyclicBitVector CyclicBitVector::from_exponent(std::uint64_t d, int m) {
    if (m < 1 || m > 31 || (d >> m) != 0) {
        fail(Errc::exponent_out_of_range,
             "exponent " + std::to_string(d) + " does not fit in " + std::to_string(m) + " bits");
    }
    return CyclicBitVector(m, static_cast<std::uint32_t>(d));
}

CyclicBitVector CyclicBitVector::parse(std::string_view text) {
    std::uint32_t bits = 0;
    for (char c : text) {
        bits = (bits << 1) | (c == '1' ? 1u : 0u);
    }
    return CyclicBitVector(static_cast<int>(text.size()), bits);
}

int CyclicBitVector::weight() const noexcept {
    return std::popcount(bits_);
}

CyclicBitVector CyclicBitVector::shifted(int t) const noexcept {
    const int r = ((t % m_) + m_) % m_;
    return CyclicBitVector(m_, rotl_m(bits_, r, m_));
}

bool CyclicBitVector::subvector_of(const CyclicBitVector& v) const noexcept {
    return m_ == v.m_ && bits_ != 0 && bits_ != v.bits_ && (bits_ & ~v.bits_) == 0;
}

std::vector<CyclicBitVector::Run> CyclicBitVector::runs() const {
    std::vector<Run> out;
    if (bits_ == 0) return out;
    const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
    if (bits_ == full) {
        out.push_back({0, m_});
        return out;
    }
    // Anchor at a zero so no run is split by the wraparound.
    int z = 0;
    while ((bits_ >> z) & 1) ++z;
    int start = -1;
    int len = 0;
    for (int k = 1; k <= m_; ++k) {
        const int i = (z + k) % m_;
        if ((bits_ >> i) & 1) {
            if (start < 0) { start = i; len = 1; }
            else ++len;
        } else if (start >= 0) {
            out.push_back({start, len});
            start = -1;
            len = 0;
        }
    }
    if (start >= 0) out.push_back({start, len});
    std::sort(out.begin(), out.end(),
              [](const Run& a, const Run& b) { return a.start < b.start; });
    return out;
}

std::vector<CyclicBitVector::Run> CyclicBitVector::gaps() const {
    const std::uint32_t full = (std::uint32_t{1} << m_) - 1;
    return CyclicBitVector(m_, bits_ ^ full).runs();
}

std::string CyclicBitVector::to_string() const {
    std::string s;
    s.reserve(static_cast<std::size_t>(m_));
    for (int i = m_ - 1; i >= 0; --i) {
        s.push_back(((bits_ >> i) & 1) ? '1' : '0');
    }
    return s;
}

ExponentCoset cyclotomic_coset(std::uint64_t d, int m) {
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    if (d < 1 || d > n - 1) {
        fail(Errc::exponent_out_of_range,
             "d=" + std::to_string(d) + " outside [1, 2^m-2]");
    }
    ExponentCoset coset;
    std::uint64_t e = d;
    do {
        coset.members.push_back(e);
        e = (e << 1) % n;
    } while (e != d);
    std::sort(coset.members.begin(), coset.members.end());
    coset.canonical = 0;
    for (std::uint64_t v : coset.members) {
        if (v & 1) { coset.canonical = v; break; }
    }
    return coset;
}

ExponentClass classify_exponent(std::uint64_t d, int m) {
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    const ExponentCoset coset = cyclotomic_coset(d, m);
    ExponentClass cls;
    cls.canonical = coset.canonical;
    cls.gcd_with_order = std::gcd(d, n);
    auto member = [&](std::uint64_t v) {
        return std::binary_search(coset.members.begin(), coset.members.end(), v);
    };
    for (int k = 1; k < m; ++k) {
        if (std::gcd(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(m)) != 1) continue;
        const std::uint64_t gold_d = ((std::uint64_t{1} << k) + 1) % n;
        if (!cls.gold && gold_d != 0 && member(gold_d)) {
            cls.gold = true;
            cls.gold_k = k;
        }
        // 2^{2k} - 2^k + 1 mod n, computed without underflow
        const std::uint64_t t1 = (std::uint64_t{1} << (2 * k)) % n;
        const std::uint64_t t2 = (std::uint64_t{1} << k) % n;
        const std::uint64_t kasami_d = (t1 + n - t2 + 1) % n;
        if (!cls.kasami && kasami_d != 0 && member(kasami_d)) {
            cls.kasami = true;
            cls.kasami_k = k;
        }
    }
    return cls;
}

bool trace_identity(std::uint64_t d, const Field& field) {
    const std::uint64_t n = field.order();
    if (d < 2 || d > n - 1) {
        fail(Errc::exponent_out_of_range,
             "d=" + std::to_string(d) + " outside [2, 2^m-2]");
    }
    std::uint64_t e = d;
    if ((e & 1) == 0) {
        e = cyclotomic_coset(e, field.degree()).canonical; // tr(y^2) = tr(y)
    }
    const TruthTable t = power_trace_table(e, field);
    const int tr_one = field.trace(1);
    const std::uint32_t size = static_cast<std::uint32_t>(field.size());
    for (std::uint32_t x = 0; x < size; ++x) {
        if ((t.bits[x] ^ t.bits[x ^ 1u] ^ tr_one) != 0) return false;
    }
    return true;
}

MonomialParity monomial_parity(std::uint64_t d, int m, int weight_cap) {
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    if (d < 2 || d > n - 1 || (d & 1) == 0) {
        fail(Errc::exponent_out_of_range,
             "d=" + std::to_string(d) + " must be odd and in [2, 2^m-2]");
    }
    const int z = std::popcount(d);
    if (z > weight_cap) {
        fail(Errc::weight_overflow,
             "weight " + std::to_string(z) + " exceeds the 2^" + std::to_string(weight_cap) +
                 " submask enumeration cap");
    }
    // p(x) = x^d + (x+1)^d + 1 expands over GF(2) to the proper nonzero
    // submasks of d (Lucas). Group them by cyclotomic class; the exponent
    // count of tr(p) at each class member is N_C * (m / |C|).
    struct ClassInfo {
        std::uint64_t count = 0;
        int size = 0;
    };
    std::map<std::uint64_t, ClassInfo> classes;
    for (std::uint64_t t = (d - 1) & d; t != 0; t = (t - 1) & d) {
        std::uint64_t canon = t;
        int size = 0;
        std::uint64_t e = t;
        do {
            canon = std::min(canon, e);
            e = (e << 1) % n;
            ++size;
        } while (e != t);
        auto& info = classes[canon];
        ++info.count;
        info.size = size;
    }
    MonomialParity result;
    result.even_everywhere = true;
    for (const auto& [canon, info] : classes) {
        const std::uint64_t reduced = info.count * static_cast<std::uint64_t>(m / info.size);
        if (reduced % 2 == 1) {
            result.even_everywhere = false;
            result.odd_class_representatives.push_back(canon);
        }
    }
    return result;
}

std::uint64_t subvector_multiset_count(const CyclicBitVector& s,
                                       const CyclicBitVector& dbar) {
    if (s.length() != dbar.length()) {
        fail(Errc::dimension_mismatch, "vector lengths differ");
    }
    if (s.bits() == 0 || s.bits() == dbar.bits()) {
        fail(Errc::invalid_subvector_query, "s must be neither 0 nor dbar");
    }
    const int m = s.length();
    std::uint64_t count = 0;
    for (int t = 0; t < m; ++t) {
        const std::uint32_t r = rotl_m(s.bits(), t, m);
        if (r != dbar.bits() && (r & ~dbar.bits()) == 0) ++count;
    }
    return count;
}

const char* witness_path_name(WitnessPath p) noexcept {
    switch (p) {
    case WitnessPath::line4: return "line4";
    case WitnessPath::line6: return "line6";
    case WitnessPath::line7: return "line7";
    case WitnessPath::line8: return "line8";
    case WitnessPath::weight_obstruction: return "weight-obstruction";
    case WitnessPath::fallback: return "fallback";
    }
    return "unknown";
}

std::string WitnessResult::to_json() const {
    nlohmann::ordered_json obj;
    obj["d"] = d;
    obj["m"] = m;
    obj["witness_bits"] = witness.to_string();
    obj["multiset_size"] = multiset_size;
    obj["path"] = witness_path_name(path);
    obj["verified"] = verified;
    return obj.dump();
}

namespace {

bool is_canonical(std::uint64_t d, int m) {
    return (d & 1) && cyclotomic_coset(d, m).canonical == d;
}

WitnessResult fallback_witness(const CyclicBitVector& dbar) {
    const int m = dbar.length();
    const std::uint64_t d = dbar.to_exponent();
    const MonomialParity parity = monomial_parity(d, m, 31);
    if (parity.odd_class_representatives.empty()) {
        // weight >= 3 canonical exponents always fail the identity, so an odd
        // class must exist; reaching this line means a broken invariant.
        throw std::logic_error("fallback: no odd monomial class for d=" + std::to_string(d));
    }
    const std::uint64_t rep = parity.odd_class_representatives.front();
    // Smallest rotation of the class that fits inside dbar.
    std::uint32_t best = 0;
    for (int t = 0; t < m; ++t) {
        const std::uint32_t r = rotl_m(static_cast<std::uint32_t>(rep), t, m);
        if (r != dbar.bits() && (r & ~dbar.bits()) == 0) {
            if (best == 0 || r < best) best = r;
        }
    }
    if (best == 0) {
        throw std::logic_error("fallback: odd class has no rotation inside dbar");
    }
    WitnessResult result;
    result.m = m;
    result.d = d;
    result.witness = CyclicBitVector(m, best);
    result.multiset_size = subvector_multiset_count(result.witness, dbar);
    result.path = WitnessPath::fallback;
    result.verified = (result.multiset_size % 2) == 1;
    if (!result.verified) {
        throw std::logic_error("fallback witness count is even for d=" + std::to_string(d));
    }
    return result;
}

WitnessResult verify_or_fallback(const CyclicBitVector& dbar, std::uint32_t w,
                                 WitnessPath path) {
    WitnessResult result;
    result.m = dbar.length();
    result.d = dbar.to_exponent();
    if (w == 0 || w == dbar.bits()) {
        // The construction degenerated (line 8 with the minimum gap always
        // reproduces dbar itself); fall through to the parity witness.
        return fallback_witness(dbar);
    }
    result.witness = CyclicBitVector(dbar.length(), w);
    result.multiset_size = subvector_multiset_count(result.witness, dbar);
    if (result.multiset_size % 2 == 0) {
        return fallback_witness(dbar);
    }
    result.path = path;
    result.verified = true;
    return result;
}

} // namespace

std::optional<WitnessResult> weight_obstruction_witness(const CyclicBitVector& dbar) {
    const int z = dbar.weight();
    if (z < 2) {
        fail(Errc::exponent_out_of_range, "weight must be at least 2");
    }
    if ((z & (z - 1)) == 0) return std::nullopt;
    // Smallest i with C(z, i) odd: the lowest set bit of z (Lucas).
    const int i = z & -z;
    // Enumerate weight-i submasks of dbar; the total count C(z, i) is odd, so
    // some shift class has an odd multiset count.
    const int m = dbar.length();
    std::vector<int> positions;
    for (int b = 0; b < m; ++b) {
        if ((dbar.bits() >> b) & 1) positions.push_back(b);
    }
    std::vector<int> idx(static_cast<std::size_t>(i));
    for (int k = 0; k < i; ++k) idx[static_cast<std::size_t>(k)] = k;
    for (;;) {
        std::uint32_t w = 0;
        for (int k = 0; k < i; ++k) w |= std::uint32_t{1} << positions[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
        const CyclicBitVector cand(m, w);
        const std::uint64_t count = subvector_multiset_count(cand, dbar);
        if (count % 2 == 1) {
            WitnessResult result;
            result.m = m;
            result.d = dbar.to_exponent();
            result.witness = cand;
            result.multiset_size = count;
            result.path = WitnessPath::weight_obstruction;
            result.verified = true;
            return result;
        }
        // next combination
        int k = i - 1;
        while (k >= 0 && idx[static_cast<std::size_t>(k)] == z - i + k) --k;
        if (k < 0) break;
        ++idx[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < i; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    throw std::logic_error("no odd weight-" + std::to_string(i) + " witness found");
}

WitnessResult find_odd_witness(const CyclicBitVector& dbar) {
    const int m = dbar.length();
    const std::uint64_t d = dbar.to_exponent();
    if (m % 2 == 0) {
        fail(Errc::even_m, "the witness algorithm requires odd m");
    }
    if (!is_canonical(d, m)) {
        fail(Errc::not_canonical,
             "d=" + std::to_string(d) + " is not the smallest odd coset member");
    }
    const int z = dbar.weight();
    if (z <= 2) {
        fail(Errc::gold_input,
             "weight " + std::to_string(z) + ": the trace identity holds, no witness exists");
    }
    if ((z & (z - 1)) != 0) {
        fail(Errc::weight_not_power_of_two,
             "weight " + std::to_string(z) + " is not a power of two");
    }

    // Block state: the current pattern v (anchored at bit 0), its occurrence
    // start positions, and the previous stage for line (7).
    std::uint32_t pattern;
    int width;
    int ones;
    std::vector<int> starts;
    {
        const auto rs = dbar.runs();
        int max_len = 0;
        for (const auto& r : rs) max_len = std::max(max_len, r.length);
        for (const auto& r : rs) {
            if (r.length == max_len) starts.push_back(r.start);
        }
        pattern = (std::uint32_t{1} << max_len) - 1;
        width = max_len;
        ones = max_len;
    }
    bool first_pass = true;
    std::uint32_t prev_pattern = 0;
    int prev_width = 0;
    int prev_gap = 0;

    for (;;) {
        const int s = static_cast<int>(starts.size());
        // line (3): ones covered by the occurrences of the current block
        std::uint32_t y = 0;
        for (int st : starts) y |= rotl_m(pattern, st, m);

        // line (4)
        if (z != ones * s) {
            return verify_or_fallback(dbar, y, WitnessPath::line4);
        }

        // line (5): gap structure between cyclically consecutive occurrences
        std::vector<int> gap_after(static_cast<std::size_t>(s));
        int min_gap = m;
        for (int k = 0; k < s; ++k) {
            const int a = starts[static_cast<std::size_t>(k)];
            const int b = starts[static_cast<std::size_t>((k + 1) % s)];
            gap_after[static_cast<std::size_t>(k)] = ((b - a - width) % m + m) % m;
            min_gap = std::min(min_gap, gap_after[static_cast<std::size_t>(k)]);
        }

        if (s == 1) {
            if (first_pass) {
                // line (6): dbar = (0...0 1...1); drop the second-lowest one
                return verify_or_fallback(dbar, dbar.bits() ^ 0b10u, WitnessPath::line6);
            }
            // line (7): two adjacent previous blocks, anchored at the chain base
            const int base = starts.front();
            const std::uint32_t w = rotl_m(prev_pattern, base, m) |
                                    rotl_m(prev_pattern, (base + prev_width + prev_gap) % m, m);
            return verify_or_fallback(dbar, w, WitnessPath::line7);
        }

        if (s == 2) {
            // line (8): the two occurrences joined across the minimum gap,
            // anchored at the matching pair
            int anchor = starts.front();
            for (int k = 0; k < s; ++k) {
                if (gap_after[static_cast<std::size_t>(k)] == min_gap) {
                    anchor = starts[static_cast<std::size_t>(k)];
                    break;
                }
            }
            const std::uint32_t w = rotl_m(pattern, anchor, m) |
                                    rotl_m(pattern, (anchor + width + min_gap) % m, m);
            return verify_or_fallback(dbar, w, WitnessPath::line8);
        }

        // line (9): regroup maximal chains of blocks joined by minimum gaps
        first_pass = false;
        prev_pattern = pattern;
        prev_width = width;
        prev_gap = min_gap;

        std::vector<bool> joined(static_cast<std::size_t>(s));
        bool all_joined = true;
        for (int k = 0; k < s; ++k) {
            joined[static_cast<std::size_t>(k)] = gap_after[static_cast<std::size_t>(k)] == min_gap;
            all_joined = all_joined && joined[static_cast<std::size_t>(k)];
        }
        if (all_joined) {
            // m odd forces gaps of both parities, so a non-minimal gap exists.
            throw std::logic_error("all inter-block gaps equal; impossible for odd m");
        }
        int i0 = 0;
        while (joined[static_cast<std::size_t>(i0)]) ++i0;
        std::vector<std::vector<int>> chains;
        std::vector<int> current;
        for (int k = 0; k < s; ++k) {
            const int at = (i0 + 1 + k) % s;
            current.push_back(starts[static_cast<std::size_t>(at)]);
            if (!joined[static_cast<std::size_t>(at)]) {
                chains.push_back(std::move(current));
                current.clear();
            }
        }
        std::size_t max_blocks = 0;
        for (const auto& c : chains) max_blocks = std::max(max_blocks, c.size());
        std::uint32_t new_pattern = 0;
        for (std::size_t k = 0; k < max_blocks; ++k) {
            new_pattern |= pattern << (k * static_cast<std::size_t>(width + min_gap));
        }
        std::vector<int> new_starts;
        for (const auto& c : chains) {
            if (c.size() == max_blocks) new_starts.push_back(c.front());
        }
        std::sort(new_starts.begin(), new_starts.end());
        pattern = new_pattern;
        width = static_cast<int>(max_blocks) * width + (static_cast<int>(max_blocks) - 1) * min_gap;
        ones = static_cast<int>(max_blocks) * ones;
        starts = std::move(new_starts);
    }
}

WitnessResult witness_for(std::uint64_t d, int m) {
    const std::uint64_t canon = cyclotomic_coset(d, m).canonical;
    const CyclicBitVector dbar = CyclicBitVector::from_exponent(canon, m);
    const int z = dbar.weight();
    if (z <= 2) {
        fail(Errc::gold_input,
             "canonical weight " + std::to_string(z) + ": the trace identity holds");
    }
    if ((z & (z - 1)) != 0) {
        auto w = weight_obstruction_witness(dbar);
        return *w; // non-power-of-two weight always yields one
    }
    return find_odd_witness(dbar);
}

SupportCheck gold_support_check(std::uint64_t d, const Field& field) {
    const AbReport report = classify_ab(d, field);
    if (!report.is_ab) {
        fail(Errc::not_almost_bent,
             "x^" + std::to_string(d) + " has linearity " + std::to_string(report.linearity));
    }
    const WalshSpectrum W = power_walsh(d, field);
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    SupportCheck check;
    for (std::uint32_t alpha = 0; alpha < n; ++alpha) {
        if (W.coeffs[alpha] != 0) ++check.support_size;
    }
    // If the support is a hyperplane {tr(gamma x) = 1}, gamma is determined
    // by the support values on the basis; verify the candidate everywhere.
    std::uint32_t b_mask = 0;
    for (int i = 0; i < field.degree(); ++i) {
        if (W.coeffs[std::uint32_t{1} << i] != 0) b_mask |= std::uint32_t{1} << i;
    }
    // Solve dual_mask(gamma) = b_mask by GF(2) elimination over the dual basis.
    const int m = field.degree();
    std::vector<std::uint32_t> cols(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cols[static_cast<std::size_t>(i)] = field.dual_mask(std::uint32_t{1} << i);
    // rows of the system: bit j of dual_mask(gamma) = parity over i of gamma_i * cols[i]_j
    std::vector<std::uint32_t> aug(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < m; ++j) {
        std::uint32_t row = 0;
        for (int i = 0; i < m; ++i) {
            if ((cols[static_cast<std::size_t>(i)] >> j) & 1) row |= std::uint32_t{1} << i;
        }
        aug[static_cast<std::size_t>(j)] = row | (((b_mask >> j) & 1u) << m);
    }
    // Gaussian elimination
    int rank = 0;
    for (int col = 0; col < m && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r) {
            if ((aug[static_cast<std::size_t>(r)] >> col) & 1) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        std::swap(aug[static_cast<std::size_t>(pivot)], aug[static_cast<std::size_t>(rank)]);
        for (int r = 0; r < m; ++r) {
            if (r != rank && ((aug[static_cast<std::size_t>(r)] >> col) & 1)) {
                aug[static_cast<std::size_t>(r)] ^= aug[static_cast<std::size_t>(rank)];
            }
        }
        ++rank;
    }
    Element gamma = 0;
    for (int r = 0; r < m; ++r) {
        const std::uint32_t row = aug[static_cast<std::size_t>(r)];
        if ((row & ((std::uint32_t{1} << m) - 1)) != 0 && ((row >> m) & 1)) {
            const int col = std::countr_zero(row);
            gamma |= std::uint32_t{1} << col;
        }
    }
    // Exhaustive verification of the candidate.
    bool matches = true;
    for (std::uint32_t alpha = 0; alpha < n; ++alpha) {
        const bool in_support = W.coeffs[alpha] != 0;
        if (in_support != (field.trace_beta(gamma, alpha) == 1)) {
            matches = false;
            break;
        }
    }
    check.matches = matches;
    check.gamma = matches ? gamma : 0;
    return check;
}

std::int64_t dd_correlation(std::uint64_t d, Element omega, const Field& field) {
    const TruthTable t = power_trace_table(d, field);
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    std::int64_t acc = 0;
    for (std::uint32_t y = 0; y < n; ++y) {
        acc += (t.bits[y] ^ t.bits[y ^ omega]) ? -1 : 1;
    }
    return acc;
}

} // namespace abscope
