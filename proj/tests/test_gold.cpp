#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <vector>

#include "abscope/gold.hpp"
#include "abscope/walsh.hpp"

using namespace abscope;

namespace {

// Independent enumeration oracle for |S(s)|: try every shift explicitly with
// local bit arithmetic.
std::uint64_t oracle_subvector_count(std::uint32_t s, std::uint32_t dbar, int m) {
    const std::uint32_t mask = (std::uint32_t{1} << m) - 1;
    std::uint64_t count = 0;
    for (int t = 0; t < m; ++t) {
        const std::uint32_t r = ((s << t) | (s >> (m - t))) & mask;
        const std::uint32_t rr = t == 0 ? s : r;
        if (rr != dbar && (rr & ~dbar) == 0) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("cyclic bit vectors") {
    const CyclicBitVector v = CyclicBitVector::parse("0010111");
    CHECK(v.length() == 7);
    CHECK(v.bits() == 0b0010111);
    CHECK(v.weight() == 4);
    CHECK(v.to_string() == "0010111");
    CHECK(v.shifted(1).to_string() == "0101110");
    CHECK(v.shifted(7).bits() == v.bits());
    CHECK(v.shifted(-1).to_string() == "1001011");

    const auto runs = v.runs();
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].start == 0);
    CHECK(runs[0].length == 3);
    CHECK(runs[1].start == 4);
    CHECK(runs[1].length == 1);

    const auto gaps = v.gaps();
    REQUIRE(gaps.size() == 2);
    CHECK(gaps[0].start == 3);
    CHECK(gaps[0].length == 1);
    CHECK(gaps[1].start == 5);
    CHECK(gaps[1].length == 2);

    SUBCASE("wraparound run") {
        // ones at positions {6, 0, 1} form one cyclic run starting at 6
        const CyclicBitVector w = CyclicBitVector::parse("1000011");
        const auto r = w.runs();
        REQUIRE(r.size() == 1);
        CHECK(r[0].start == 6);
        CHECK(r[0].length == 3);
    }

    CHECK(CyclicBitVector::parse("00011").subvector_of(CyclicBitVector::parse("01111")));
    CHECK_FALSE(CyclicBitVector::parse("01111").subvector_of(CyclicBitVector::parse("01111")));
    CHECK_FALSE(CyclicBitVector::parse("00000").subvector_of(CyclicBitVector::parse("01111")));
    CHECK_THROWS_AS(CyclicBitVector::from_exponent(32, 5), Error);
}

TEST_CASE("trace identity") {
    const Field f5 = Field::make(5);
    CHECK(trace_identity(3, f5));
    CHECK(trace_identity(5, f5));
    CHECK_FALSE(trace_identity(13, f5));
    CHECK_FALSE(trace_identity(15, f5));

    SUBCASE("even exponents reduce to the odd coset member") {
        CHECK(trace_identity(6, f5));   // coset of 3
        CHECK(trace_identity(12, f5));  // coset of 3
        CHECK_FALSE(trace_identity(22, f5)); // coset of 11
    }

    SUBCASE("the even-m counterexample m=8, d=51") {
        const Field f8 = Field::make(8);
        CHECK(trace_identity(51, f8));
        // yet 51 is not of Gold form: its canonical coset member has weight 4
        CHECK(cyclotomic_coset(51, 8).canonical == 51);
        CHECK(std::popcount(51u) == 4);
    }

    CHECK_THROWS_WITH_AS(trace_identity(1, f5), doctest::Contains("ExponentOutOfRange"), Error);
    CHECK_THROWS_AS(trace_identity(31, f5), Error);
}

TEST_CASE("monomial parity") {
    SUBCASE("d = 15, m = 5: the class of 3 receives {3, 6, 12}") {
        const MonomialParity p = monomial_parity(15, 5);
        CHECK_FALSE(p.even_everywhere);
        REQUIRE(!p.odd_class_representatives.empty());
        CHECK(p.odd_class_representatives.front() == 3);
        CHECK(std::find(p.odd_class_representatives.begin(),
                        p.odd_class_representatives.end(),
                        5) != p.odd_class_representatives.end());
    }

    SUBCASE("gold exponents pass") {
        CHECK(monomial_parity(3, 5).even_everywhere);
        CHECK(monomial_parity(5, 7).even_everywhere);
        CHECK(monomial_parity(9, 7).even_everywhere);
    }

    SUBCASE("agreement with the field enumeration for every odd d, m = 7") {
        const Field f = Field::make(7);
        for (std::uint64_t d = 3; d < 127; d += 2) {
            CAPTURE(d);
            REQUIRE(monomial_parity(d, 7).even_everywhere == trace_identity(d, f));
        }
    }

    SUBCASE("even-m counterexample passes the parity route as well") {
        CHECK(monomial_parity(51, 8).even_everywhere);
    }

    SUBCASE("weight cap") {
        // weight 21 exceeds the default cap of 20
        const std::uint64_t heavy = (std::uint64_t{1} << 21) - 1;
        CHECK_THROWS_WITH_AS(monomial_parity(heavy, 23), doctest::Contains("WeightOverflow"),
                             Error);
        CHECK_NOTHROW(monomial_parity(heavy, 23, 21));
    }

    CHECK_THROWS_AS(monomial_parity(4, 5), Error); // even d is not accepted here
}

TEST_CASE("cyclotomic cosets") {
    const ExponentCoset c3 = cyclotomic_coset(3, 5);
    CHECK(c3.members == std::vector<std::uint64_t>{3, 6, 12, 17, 24});
    CHECK(c3.canonical == 3);

    const ExponentCoset c1 = cyclotomic_coset(1, 6);
    CHECK(c1.members == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 32});
    CHECK(c1.canonical == 1);

    const ExponentCoset c15 = cyclotomic_coset(15, 5);
    CHECK(c15.members == std::vector<std::uint64_t>{15, 23, 27, 29, 30});
    CHECK(c15.canonical == 15);

    CHECK(cyclotomic_coset(13, 5).canonical == 11);
    CHECK_THROWS_AS(cyclotomic_coset(0, 5), Error);
}

TEST_CASE("exponent classification") {
    SUBCASE("12 at m=5 is gold via the coset of 3") {
        const ExponentClass c = classify_exponent(12, 5);
        CHECK(c.gold);
        CHECK(c.gold_k == 1);
        CHECK(c.canonical == 3);
        CHECK(c.gcd_with_order == 1);
    }

    SUBCASE("13 at m=5 is kasami but not gold") {
        const ExponentClass c = classify_exponent(13, 5);
        CHECK_FALSE(c.gold);
        CHECK(c.kasami);
        CHECK(c.kasami_k == 2);
    }

    SUBCASE("9 at m=9 fails the gcd condition") {
        const ExponentClass c = classify_exponent(9, 9);
        CHECK_FALSE(c.gold); // 9 = 2^3 + 1 but gcd(3, 9) = 3
    }

    SUBCASE("3 is both gold and kasami with k=1") {
        const ExponentClass c = classify_exponent(3, 7);
        CHECK(c.gold);
        CHECK(c.gold_k == 1);
        CHECK(c.kasami);
        CHECK(c.kasami_k == 1);
    }

    SUBCASE("gcd is reported") {
        CHECK(classify_exponent(7, 9).gcd_with_order == 7);
    }
}

TEST_CASE("subvector multiset counts") {
    const CyclicBitVector dbar = CyclicBitVector::parse("01111");
    CHECK(subvector_multiset_count(CyclicBitVector::parse("00011"), dbar) == 3);
    CHECK(subvector_multiset_count(CyclicBitVector::parse("10000"), dbar) == 4);
    CHECK(subvector_multiset_count(CyclicBitVector::parse("01101"), dbar) == 2);

    SUBCASE("shift invariance") {
        const CyclicBitVector d23 = CyclicBitVector::from_exponent(0b0010111, 7);
        for (std::uint32_t s : {0b0000011u, 0b0000101u, 0b0010011u}) {
            const CyclicBitVector sv(7, s);
            const std::uint64_t base = subvector_multiset_count(sv, d23);
            for (int t = 1; t < 7; ++t) {
                CHECK(subvector_multiset_count(sv.shifted(t), d23) == base);
            }
            CHECK(base == oracle_subvector_count(s, 0b0010111, 7));
        }
    }

    CHECK_THROWS_WITH_AS(subvector_multiset_count(CyclicBitVector(5, 0), dbar),
                         doctest::Contains("InvalidSubvectorQuery"), Error);
    CHECK_THROWS_AS(subvector_multiset_count(dbar, dbar), Error);
}

TEST_CASE("weight obstruction witnesses") {
    SUBCASE("weight 3: a single one fits once per set bit") {
        const auto w = weight_obstruction_witness(CyclicBitVector::parse("00111"));
        REQUIRE(w.has_value());
        CHECK(w->witness.weight() == 1);
        CHECK(w->multiset_size == 3);
        CHECK(w->path == WitnessPath::weight_obstruction);
        CHECK(w->verified);
    }

    SUBCASE("powers of two give nothing") {
        CHECK_FALSE(weight_obstruction_witness(CyclicBitVector::parse("01111")).has_value());
        CHECK_FALSE(weight_obstruction_witness(CyclicBitVector::parse("0011011")).has_value());
    }

    SUBCASE("weight 6 finds a weight-2 witness") {
        const auto w = weight_obstruction_witness(CyclicBitVector::parse("0111111"));
        REQUIRE(w.has_value());
        CHECK(w->witness.weight() == 2);
        CHECK(w->multiset_size % 2 == 1);
        CHECK(subvector_multiset_count(w->witness, CyclicBitVector::parse("0111111")) ==
              w->multiset_size);
    }
}

TEST_CASE("witness algorithm") {
    SUBCASE("worked example: m = 23") {
        const std::uint64_t d = 1 + 4 + 16 + 128 + 512 + 2048 + 32768 + 131072;
        CHECK(d == 166549);
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(d, 23));
        CHECK(w.path == WitnessPath::line4);
        CHECK(w.witness.to_string() == "00000000000101010010101");
        CHECK(w.multiset_size == 1);
        CHECK(w.verified);
        CHECK(w.to_json() ==
              "{\"d\":166549,\"m\":23,\"witness_bits\":\"00000000000101010010101\","
              "\"multiset_size\":1,\"path\":\"line4\",\"verified\":true}");
    }

    SUBCASE("line 4: m=7, d=23") {
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(23, 7));
        CHECK(w.path == WitnessPath::line4);
        CHECK(w.witness.to_string() == "0000111");
        CHECK(w.multiset_size == 1);
    }

    SUBCASE("line 6: m=7, d=15") {
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(15, 7));
        CHECK(w.path == WitnessPath::line6);
        CHECK(w.witness.to_string() == "0001101");
        CHECK(w.multiset_size == 1);
    }

    SUBCASE("line 6 wraparound defect: m=5, d=15 falls back") {
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(15, 5));
        CHECK(w.path == WitnessPath::fallback);
        CHECK(w.witness.to_string() == "00011");
        CHECK(w.multiset_size == 3);
        CHECK(w.verified);
        // the direct construction really is even here
        CHECK(subvector_multiset_count(CyclicBitVector::parse("01101"),
                                       CyclicBitVector::parse("01111")) == 2);
    }

    SUBCASE("line 7: m=9, d=85 regroups into a single chain") {
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(85, 9));
        CHECK(w.path == WitnessPath::line7);
        CHECK(w.witness.to_string() == "000000101");
        CHECK(w.multiset_size == 3);
    }

    SUBCASE("line 8 construction degenerates and falls back: m=7, d=27") {
        const WitnessResult w = find_odd_witness(CyclicBitVector::from_exponent(27, 7));
        CHECK(w.path == WitnessPath::fallback);
        CHECK(w.witness.to_string() == "0001010");
        CHECK(w.multiset_size == 1);
        CHECK(w.verified);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_WITH_AS(find_odd_witness(CyclicBitVector::from_exponent(3, 5)),
                             doctest::Contains("GoldInput"), Error);
        CHECK_THROWS_WITH_AS(find_odd_witness(CyclicBitVector::from_exponent(7, 5)),
                             doctest::Contains("WeightNotPowerOfTwo"), Error);
        // 29 has weight 4 but its coset canonicalizes to 15
        CHECK_THROWS_WITH_AS(find_odd_witness(CyclicBitVector::from_exponent(29, 5)),
                             doctest::Contains("NotCanonical"), Error);
        CHECK_THROWS_WITH_AS(find_odd_witness(CyclicBitVector::from_exponent(15, 6)),
                             doctest::Contains("EvenM"), Error);
    }
}

TEST_CASE("witness dispatch") {
    SUBCASE("weight 2 canonical forms are rejected as gold") {
        CHECK_THROWS_WITH_AS(witness_for(3, 5), doctest::Contains("GoldInput"), Error);
        CHECK_THROWS_AS(witness_for(6, 5), Error); // canonicalizes to 3
    }
    SUBCASE("non-power-of-two weights go through the obstruction") {
        const WitnessResult w = witness_for(7, 5);
        CHECK(w.path == WitnessPath::weight_obstruction);
        CHECK(w.multiset_size == 3);
    }
    SUBCASE("even exponents canonicalize first") {
        const WitnessResult w = witness_for(30, 5); // coset of 15
        CHECK(w.d == 15);
        CHECK(w.path == WitnessPath::fallback);
    }
}

TEST_CASE("every witness over m = 5..11 verifies with an odd count") {
    for (int m : {5, 7, 9, 11}) {
        const Field f = Field::make(m);
        const std::uint64_t n = f.order();
        std::set<std::uint64_t> reps;
        for (std::uint64_t d = 3; d < n; d += 2) {
            reps.insert(cyclotomic_coset(d, m).canonical);
        }
        for (std::uint64_t d : reps) {
            const int z = std::popcount(d);
            if (z < 3) continue;
            if (trace_identity(d, f)) continue;
            const WitnessResult w = witness_for(d, m);
            CAPTURE(m);
            CAPTURE(d);
            REQUIRE(w.verified);
            REQUIRE(w.multiset_size % 2 == 1);
            REQUIRE(w.witness.subvector_of(CyclicBitVector::from_exponent(d, m)));
            REQUIRE(oracle_subvector_count(w.witness.bits(), static_cast<std::uint32_t>(d), m) ==
                    w.multiset_size);
        }
    }
}

TEST_CASE("gold support check") {
    const Field f5 = Field::make(5);
    const SupportCheck s3 = gold_support_check(3, f5);
    CHECK(s3.matches);
    CHECK(s3.gamma == 1);
    CHECK(s3.support_size == 16);

    const Field f7 = Field::make(7);
    const SupportCheck s9 = gold_support_check(9, f7);
    CHECK(s9.matches);
    CHECK(s9.gamma == 1);

    CHECK_THROWS_WITH_AS(gold_support_check(1, f5), doctest::Contains("NotAlmostBent"), Error);
}

TEST_CASE("decimation-difference correlation") {
    const Field f = Field::make(5);
    CHECK(dd_correlation(3, 0, f) == 32);
    CHECK(dd_correlation(3, 1, f) == -32);
    CHECK(dd_correlation(3, f.zeta(), f) == 0);
    for (Element omega = 2; omega < 32; ++omega) {
        CHECK(dd_correlation(3, omega, f) == 0);
    }

    SUBCASE("summing over omega squares the zero coefficient") {
        for (std::uint64_t d : {3ULL, 7ULL, 13ULL}) {
            std::int64_t total = 0;
            for (Element omega = 0; omega < 32; ++omega) {
                total += dd_correlation(d, omega, f);
            }
            const WalshSpectrum w = power_walsh(d, f);
            CHECK(total == std::int64_t{w.coeffs[0]} * w.coeffs[0]);
        }
        const Field f9 = Field::make(9);
        std::int64_t total = 0;
        for (Element omega = 0; omega < 512; ++omega) {
            total += dd_correlation(7, omega, f9); // gcd(7, 511) = 7
        }
        const WalshSpectrum w = power_walsh(7, f9);
        CHECK(total == std::int64_t{w.coeffs[0]} * w.coeffs[0]);
        CHECK(total >= 0);
    }
}
