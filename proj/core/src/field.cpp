#include "abscope/field.hpp"

#include <bit>
#include <cstdlib>
#include <string>

namespace abscope {

int poly_degree(std::uint64_t p) noexcept {
    return std::bit_width(p) - 1;
}

namespace {

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t p) noexcept {
    const int dp = poly_degree(p);
    int da;
    while (a != 0 && (da = poly_degree(a)) >= dp) {
        a ^= p << (da - dp);
    }
    return a;
}

// Carry-less product; operands must stay below degree 32.
std::uint64_t poly_clmul(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t r = 0;
    while (b != 0) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
    }
    return r;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
    return poly_mod(poly_clmul(a, b), p);
}

std::uint64_t poly_powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) noexcept {
    std::uint64_t r = 1;
    a = poly_mod(a, p);
    while (e != 0) {
        if (e & 1) r = poly_mulmod(r, a, p);
        a = poly_mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Prime factors of n (without multiplicities), n <= 2^31.
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> factors;
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            factors.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

} // namespace

bool poly_irreducible(std::uint64_t p) {
    const int deg = poly_degree(p);
    if (deg < 1) return false;
    for (int d = 1; d <= deg / 2; ++d) {
        for (std::uint64_t q = std::uint64_t{1} << d; q < (std::uint64_t{2} << d); ++q) {
            if (poly_mod(p, q) == 0) return false;
        }
    }
    return true;
}

int Field::max_degree() {
    if (const char* env = std::getenv("ABSCOPE_MAX_M")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 2 && v <= 31) {
            return static_cast<int>(v);
        }
    }
    return kDefaultMaxDegree;
}

Element Field::mul_reduce(Element a, Element b) const noexcept {
    std::uint32_t r = 0;
    const std::uint32_t top = std::uint32_t{1} << m_;
    while (b != 0) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
        if (a & top) a ^= modulus_;
    }
    return r;
}

Element Field::mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
        const std::uint64_t e = log_[a] + log_[b];
        return antilog_[e >= order_ ? e - order_ : e];
    }
    return mul_reduce(a, b);
}

Element Field::pow(Element a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t r = e % order_;
    if (!log_.empty()) {
        return antilog_[(log_[a] * r) % order_];
    }
    Element result = 1;
    Element base = a;
    std::uint64_t k = r;
    while (k != 0) {
        if (k & 1) result = mul_reduce(result, base);
        base = mul_reduce(base, base);
        k >>= 1;
    }
    return result;
}

int Field::trace(Element a) const noexcept {
    return std::popcount(a & trace_mask_) & 1;
}

int Field::trace_beta(Element beta, Element a) const {
    return trace(mul(beta, a));
}

std::uint64_t Field::dlog(Element a) const {
    if (a == 0) fail(Errc::log_of_zero, "dlog(0) is undefined");
    if (!log_.empty()) return log_[a];
    // Baby-step/giant-step: a * (zeta^-s)^j hits the baby table for some j.
    Element y = a;
    for (std::uint64_t j = 0; j * baby_stride_ <= order_; ++j) {
        auto it = baby_.find(y);
        if (it != baby_.end()) {
            return (j * baby_stride_ + it->second) % order_;
        }
        y = mul_reduce(y, giant_step_);
    }
    fail(Errc::not_primitive, "dlog search exhausted; zeta does not generate the group");
}

Element Field::antilog(std::uint64_t i) const {
    if (!antilog_.empty()) return antilog_[i % order_];
    return pow(zeta_, i);
}

Element Field::dual_mask(Element gamma) const noexcept {
    Element u = 0;
    std::uint32_t g = gamma;
    while (g != 0) {
        const int i = std::countr_zero(g);
        u ^= dual_basis_[static_cast<std::size_t>(i)];
        g &= g - 1;
    }
    return u;
}

bool Field::try_tables(Element zeta_candidate) {
    const std::uint64_t n = order_;
    log_.assign(size(), 0);
    antilog_.assign(n, 0);
    Element e = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        if (e == 1 && i != 0) {
            // order of the candidate divides i < n: not primitive
            log_.clear();
            antilog_.clear();
            return false;
        }
        log_[e] = static_cast<std::uint32_t>(i);
        antilog_[i] = e;
        e = mul_reduce(e, zeta_candidate);
    }
    if (e != 1) {
        log_.clear();
        antilog_.clear();
        return false;
    }
    zeta_ = zeta_candidate;
    return true;
}

void Field::finish_construction() {
    // trace mask: bit i = tr(x^i), computed by the Frobenius sum.
    trace_mask_ = 0;
    for (int i = 0; i < m_; ++i) {
        Element s = 0;
        Element t = Element{1} << i;
        for (int k = 0; k < m_; ++k) {
            s ^= t;
            t = mul_reduce(t, t);
        }
        // tr maps into the prime subfield {0, 1}
        if (s == 1) trace_mask_ |= std::uint32_t{1} << i;
    }
    dual_basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
        Element u = 0;
        for (int j = 0; j < m_; ++j) {
            const Element prod = mul_reduce(Element{1} << i, Element{1} << j);
            if (std::popcount(prod & trace_mask_) & 1) u |= Element{1} << j;
        }
        dual_basis_[static_cast<std::size_t>(i)] = u;
    }
}

void Field::build(int m, std::uint32_t modulus, bool modulus_supplied) {
    if (m < 2 || m > max_degree()) {
        fail(Errc::degree_out_of_range,
             "m=" + std::to_string(m) + " outside [2, " + std::to_string(max_degree()) + "]");
    }
    if (poly_degree(modulus) != m) {
        fail(Errc::degree_out_of_range,
             "modulus does not have degree " + std::to_string(m));
    }
    if (!poly_irreducible(modulus)) {
        fail(Errc::reducible_polynomial, "modulus is reducible over GF(2)");
    }
    m_ = m;
    modulus_ = modulus;
    order_ = (std::uint64_t{1} << m) - 1;

    if (m <= kTableDegreeLimit) {
        bool found = try_tables(2);
        if (!found && modulus_supplied) {
            for (Element c = 3; c < size(); ++c) {
                if (try_tables(c)) { found = true; break; }
            }
        }
        if (!found) {
            fail(Errc::not_primitive, "no primitive element found for the supplied modulus");
        }
    } else {
        // No tables: certify the candidate's order against the factored
        // group order instead.
        const auto factors = prime_factors(order_);
        // a^(2^m-1) = 1 for every nonzero a since the modulus is irreducible,
        // so the order of c is full iff no proper quotient exponent fixes 1.
        auto is_primitive = [&](Element c) {
            for (std::uint64_t q : factors) {
                if (pow(c, order_ / q) == 1) return false;
            }
            return true;
        };
        Element found = 0;
        if (is_primitive(2)) {
            found = 2;
        } else if (modulus_supplied) {
            for (Element c = 3; c < size(); ++c) {
                if (is_primitive(c)) { found = c; break; }
            }
        }
        if (found == 0) {
            fail(Errc::not_primitive, "no primitive element found for the supplied modulus");
        }
        zeta_ = found;
        // Baby-step table for dlog.
        baby_stride_ = static_cast<std::uint32_t>(1) << ((m + 1) / 2);
        baby_.reserve(baby_stride_);
        Element e = 1;
        for (std::uint32_t i = 0; i < baby_stride_; ++i) {
            baby_.emplace(e, i);
            e = mul_reduce(e, zeta_);
        }
        giant_step_ = pow(zeta_, order_ - baby_stride_);
    }
    finish_construction();
}

Field Field::make(int m) {
    Field f;
    f.build(m, default_modulus(m), false);
    return f;
}

Field Field::make(int m, std::uint32_t modulus) {
    Field f;
    f.build(m, modulus, true);
    return f;
}

std::uint32_t Field::default_modulus(int m) {
    if (m < 2 || m > 31) {
        fail(Errc::degree_out_of_range, "m=" + std::to_string(m) + " outside [2, 31]");
    }
    const std::uint64_t lo = std::uint64_t{1} << m;
    const auto factors = prime_factors(lo - 1);
    for (std::uint64_t t = lo + 1; t < 2 * lo; t += 2) {
        // A primitive polynomial has odd weight apart from x itself.
        if ((std::popcount(t) & 1) == 0) continue;
        if (!poly_irreducible(t)) continue;
        // x must generate the full multiplicative group.
        bool primitive = poly_powmod(2, lo - 1, t) == 1;
        for (std::uint64_t q : factors) {
            if (!primitive) break;
            if (poly_powmod(2, (lo - 1) / q, t) == 1) primitive = false;
        }
        if (primitive) return static_cast<std::uint32_t>(t);
    }
    fail(Errc::not_primitive, "no primitive polynomial of degree " + std::to_string(m));
}

} // namespace abscope
