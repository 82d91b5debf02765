#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>

#include "abscope/walsh.hpp"

using namespace abscope;

namespace {

TruthTable random_table(int m, std::mt19937_64& rng) {
    TruthTable f{m, std::vector<std::uint8_t>(std::size_t{1} << m)};
    for (auto& b : f.bits) b = static_cast<std::uint8_t>(rng() & 1);
    return f;
}

TruthTable affine_table(const Field& field, Element gamma, int c) {
    TruthTable f{field.degree(), std::vector<std::uint8_t>(field.size())};
    for (std::uint32_t x = 0; x < field.size(); ++x) {
        f.bits[x] = static_cast<std::uint8_t>(field.trace_beta(gamma, x) ^ c);
    }
    return f;
}

std::map<std::int32_t, int> multiset(const WalshSpectrum& w) {
    std::map<std::int32_t, int> counts;
    for (std::int32_t c : w.coeffs) ++counts[c];
    return counts;
}

} // namespace

TEST_CASE("butterfly length validation") {
    std::vector<std::int32_t> v(6, 1);
    CHECK_THROWS_WITH_AS(wht_inplace(v), doctest::Contains("LengthNotPowerOfTwo"), Error);
}

TEST_CASE("naive transform on constant and linear tables") {
    for (int m : {3, 4, 5}) {
        const Field f = Field::make(m);
        const std::int32_t full = std::int32_t{1} << m;

        TruthTable zero{m, std::vector<std::uint8_t>(f.size(), 0)};
        const WalshSpectrum wz = walsh_naive(zero, f);
        CHECK(wz.coeffs[0] == full);
        for (std::uint32_t g = 1; g < f.size(); ++g) CHECK(wz.coeffs[g] == 0);

        // f(x) = tr(x) correlates perfectly with gamma = 1 under the trace pairing
        const WalshSpectrum wt = walsh_naive(affine_table(f, 1, 0), f);
        CHECK(wt.coeffs[1] == full);
        for (std::uint32_t g = 0; g < f.size(); ++g) {
            if (g != 1) CHECK(wt.coeffs[g] == 0);
        }

        TruthTable one{m, std::vector<std::uint8_t>(f.size(), 1)};
        CHECK(walsh_naive(one, f).coeffs[0] == -full);
    }
}

TEST_CASE("gold coordinate spectrum at m=3") {
    const Field f = Field::make(3);
    const WalshSpectrum w = walsh_naive(power_trace_table(3, f), f);
    const std::map<std::int32_t, int> expected{{0, 4}, {4, 3}, {-4, 1}};
    CHECK(multiset(w) == expected);
    CHECK(w.coeffs[1] == -4);
}

TEST_CASE("fast transform equals the naive reference") {
    SUBCASE("all affine tables, m = 3..6") {
        for (int m = 3; m <= 6; ++m) {
            const Field f = Field::make(m);
            for (std::uint32_t gamma = 0; gamma < f.size(); ++gamma) {
                for (int c = 0; c < 2; ++c) {
                    const TruthTable t = affine_table(f, gamma, c);
                    REQUIRE(walsh_fast(t, f).coeffs == walsh_naive(t, f).coeffs);
                }
            }
        }
    }
    SUBCASE("all power-map coordinate tables, m = 5") {
        const Field f = Field::make(5);
        for (std::uint64_t d = 1; d <= 30; ++d) {
            const TruthTable base = power_trace_table(d, f);
            for (Element beta = 1; beta < 32; ++beta) {
                TruthTable t{5, std::vector<std::uint8_t>(32)};
                for (std::uint32_t x = 0; x < 32; ++x) {
                    t.bits[x] = static_cast<std::uint8_t>(
                        f.trace_beta(beta, f.pow(x, d)));
                }
                REQUIRE(walsh_fast(t, f).coeffs == walsh_naive(t, f).coeffs);
            }
            (void)base;
        }
    }
    SUBCASE("random tables, m = 8") {
        const Field f = Field::make(8);
        std::mt19937_64 rng(101);
        for (int i = 0; i < 100; ++i) {
            const TruthTable t = random_table(8, rng);
            REQUIRE(walsh_fast(t, f).coeffs == walsh_naive(t, f).coeffs);
        }
    }
    SUBCASE("random tables up to m = 12") {
        std::mt19937_64 rng(103);
        for (int m : {11, 12}) {
            const Field f = Field::make(m);
            for (int i = 0; i < 3; ++i) {
                const TruthTable t = random_table(m, rng);
                REQUIRE(walsh_fast(t, f).coeffs == walsh_naive(t, f).coeffs);
            }
        }
    }
    SUBCASE("dimension mismatch is rejected") {
        const Field f = Field::make(4);
        TruthTable t{3, std::vector<std::uint8_t>(8, 0)};
        CHECK_THROWS_WITH_AS(walsh_fast(t, f), doctest::Contains("DimensionMismatch"), Error);
        CHECK_THROWS_AS(walsh_naive(t, f), Error);
    }
}

TEST_CASE("parseval") {
    std::mt19937_64 rng(5);
    for (int m : {6, 10}) {
        const Field f = Field::make(m);
        for (int i = 0; i < 20; ++i) {
            const WalshSpectrum w = walsh_fast(random_table(m, rng), f);
            std::int64_t sum = 0;
            for (std::int32_t c : w.coeffs) sum += std::int64_t{c} * c;
            REQUIRE(sum == std::int64_t{1} << (2 * m));
        }
    }
}

TEST_CASE("linearity") {
    const Field f3 = Field::make(3);
    for (std::uint32_t gamma = 0; gamma < 8; ++gamma) {
        CHECK(linearity(affine_table(f3, gamma, 1)) == 8);
    }
    CHECK(linearity(power_trace_table(3, f3)) == 4); // 2^{(m+1)/2}

    // lower bound L >= 2^{m/2}, i.e. L^2 >= 2^m
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        const std::int64_t lin = linearity(random_table(8, rng));
        CHECK(lin * lin >= 256);
    }
}

TEST_CASE("nonlinearity") {
    const Field f3 = Field::make(3);
    CHECK(nonlinearity(affine_table(f3, 3, 0)) == 0);
    CHECK(nonlinearity(power_trace_table(3, f3)) == 2);

    const Field f5 = Field::make(5);
    CHECK(nonlinearity(power_trace_table(3, f5)) == 12);
}

TEST_CASE("power spectra") {
    const Field f5 = Field::make(5);
    CHECK(power_walsh(3, f5).coeffs[0] == 0);

    const Field f3 = Field::make(3);
    CHECK(power_walsh(3, f3).coeffs[1] == -4);

    const WalshSpectrum w1 = power_walsh(1, f3);
    CHECK(w1.coeffs[1] == 8);
    for (std::uint32_t g = 0; g < 8; ++g) {
        if (g != 1) CHECK(w1.coeffs[g] == 0);
    }

    CHECK_THROWS_WITH_AS(power_walsh(0, f3), doctest::Contains("ExponentOutOfRange"), Error);
    CHECK_THROWS_AS(power_walsh(7, f3), Error);
}

TEST_CASE("power trace table walk matches per-element exponentiation") {
    const Field f = Field::make(6);
    for (std::uint64_t d = 1; d <= 62; ++d) {
        const TruthTable t = power_trace_table(d, f);
        for (std::uint32_t x = 0; x < 64; ++x) {
            REQUIRE(t.bits[x] == f.trace(f.pow(x, d)));
        }
    }
}

TEST_CASE("vector linearity") {
    const Field f = Field::make(5);
    const std::uint32_t n = 32;

    SUBCASE("linear maps saturate") {
        std::vector<Element> F(n);
        for (std::uint32_t x = 0; x < n; ++x) F[x] = f.mul(5, x);
        CHECK(vector_linearity(F, f) == 32);
    }

    SUBCASE("the power shortcut (single spectrum) matches the full beta scan") {
        for (std::uint64_t d : {3ULL, 5ULL, 13ULL}) {
            std::vector<Element> F(n);
            for (std::uint32_t x = 0; x < n; ++x) F[x] = f.pow(x, d);
            const std::int64_t full = vector_linearity(F, f);
            const WalshSpectrum w = power_walsh(d, f);
            std::int64_t shortcut = 0;
            for (std::int32_t c : w.coeffs) {
                shortcut = std::max<std::int64_t>(shortcut, std::abs(std::int64_t{c}));
            }
            CHECK(full == shortcut);
            if (d == 3) CHECK(full == 8);
        }
    }
}

TEST_CASE("almost bent classification") {
    const Field f3 = Field::make(3);
    const AbReport r3 = classify_ab(3, f3);
    CHECK(r3.is_ab);
    CHECK(r3.linearity == 4);
    CHECK(r3.sign_rule_ok);
    const std::map<std::int64_t, std::uint64_t> expected3{{0, 4}, {4, 3}, {-4, 1}};
    CHECK(r3.value_multiplicities == expected3);

    const Field f5 = Field::make(5);
    const AbReport r5 = classify_ab(3, f5);
    CHECK(r5.is_ab);
    const std::map<std::int64_t, std::uint64_t> expected5{{0, 16}, {8, 10}, {-8, 6}};
    CHECK(r5.value_multiplicities == expected5);

    CHECK(classify_ab(13, f5).is_ab);         // kasami k=2
    CHECK_FALSE(classify_ab(15, f5).is_ab);   // not in the AB set at m=5
    const AbReport r1 = classify_ab(1, f5);
    CHECK_FALSE(r1.is_ab);
    CHECK(r1.linearity == 32);

    CHECK_THROWS_WITH_AS(classify_ab(3, Field::make(4)), doctest::Contains("EvenM"), Error);
}

TEST_CASE("spectrum serialization") {
    const Field f = Field::make(3);
    const WalshSpectrum w = power_walsh(3, f);
    CHECK(to_json(w) == "[0,-4,0,4,0,4,0,4]");
    const std::string csv = to_csv(w);
    CHECK(csv.rfind("gamma,coefficient\n0,0\n1,-4\n", 0) == 0);
}
