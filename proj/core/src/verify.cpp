#include "abscope/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "abscope/geometry.hpp"
#include "abscope/gold.hpp"
#include "abscope/parallel.hpp"
#include "abscope/scan.hpp"
#include "abscope/sequence.hpp"
#include "abscope/walsh.hpp"

namespace abscope {

namespace {

// Schoolbook product with explicit reduction; written independently of
// Field::mul so the two routes stay comparable.
Element schoolbook_mul(Element a, Element b, int m, std::uint32_t modulus) {
    std::uint64_t prod = 0;
    for (int i = 0; i < m; ++i) {
        if ((b >> i) & 1) prod ^= std::uint64_t{a} << i;
    }
    for (int deg = 2 * m - 2; deg >= m; --deg) {
        if ((prod >> deg) & 1) prod ^= std::uint64_t{modulus} << (deg - m);
    }
    return static_cast<Element>(prod);
}

struct Reporter {
    std::ostream& out;
    bool all_ok = true;

    void report(const char* name, bool ok, const std::string& note = {}) {
        out << (ok ? "ok   " : "FAIL ") << name;
        if (!note.empty()) out << " (" << note << ')';
        out << '\n';
        all_ok = all_ok && ok;
    }
};

std::vector<std::uint64_t> canonical_reps(int m) {
    const std::uint64_t n = (std::uint64_t{1} << m) - 1;
    std::set<std::uint64_t> reps;
    for (std::uint64_t d = 1; d < n; ++d) {
        reps.insert(cyclotomic_coset(d, m).canonical);
    }
    return {reps.begin(), reps.end()};
}

} // namespace

bool verify_all(const Field& field, std::ostream& out, unsigned jobs) {
    const int m = field.degree();
    const std::uint32_t n = static_cast<std::uint32_t>(field.size());
    Reporter rep{out};
    std::mt19937_64 rng(0x5eed5eedULL + static_cast<std::uint64_t>(m));

    // field: table round trip, trace balance, Frobenius, additivity
    {
        bool ok = true;
        for (int i = 0; i < 1000; ++i) {
            const Element a = static_cast<Element>(rng() % (n - 1)) + 1;
            if (field.antilog(field.dlog(a)) != a) { ok = false; break; }
        }
        rep.report("field-log-roundtrip", ok);

        std::uint64_t ones = 0;
        for (std::uint32_t x = 0; x < n; ++x) ones += field.trace(x);
        rep.report("field-trace-balance", ones == field.size() / 2);

        ok = true;
        for (std::uint32_t x = 0; x < n && ok; ++x) {
            ok = field.trace(field.mul(x, x)) == field.trace(x);
        }
        rep.report("field-frobenius", ok);

        ok = true;
        const int pairs = m <= 12 ? -1 : 20000;
        if (pairs < 0) {
            for (std::uint32_t a = 0; a < n && ok; ++a) {
                for (std::uint32_t b = 0; b < n && ok; ++b) {
                    ok = field.trace(a ^ b) == (field.trace(a) ^ field.trace(b));
                }
            }
        } else {
            for (int i = 0; i < pairs && ok; ++i) {
                const Element a = static_cast<Element>(rng() % n);
                const Element b = static_cast<Element>(rng() % n);
                ok = field.trace(a ^ b) == (field.trace(a) ^ field.trace(b));
            }
        }
        rep.report("field-trace-additivity", ok, pairs < 0 ? "exhaustive" : "sampled");

        ok = true;
        if (m <= 8) {
            for (std::uint32_t a = 0; a < n && ok; ++a) {
                for (std::uint32_t b = 0; b < n && ok; ++b) {
                    ok = field.mul(a, b) == schoolbook_mul(a, b, m, field.modulus());
                }
            }
        } else {
            for (int i = 0; i < 100000 && ok; ++i) {
                const Element a = static_cast<Element>(rng() % n);
                const Element b = static_cast<Element>(rng() % n);
                ok = field.mul(a, b) == schoolbook_mul(a, b, m, field.modulus());
            }
        }
        rep.report("field-mul-oracle", ok, m <= 8 ? "exhaustive" : "sampled");
    }

    const auto reps = canonical_reps(m);
    std::vector<std::uint64_t> coprime_reps;
    for (std::uint64_t d : reps) {
        if (std::gcd(d, field.order()) == 1) coprime_reps.push_back(d);
    }

    // spectrum: fast == naive, Parseval
    {
        bool ok = true;
        if (m <= 10) {
            std::uniform_int_distribution<int> bit(0, 1);
            for (int t = 0; t < 25 && ok; ++t) {
                TruthTable f{m, std::vector<std::uint8_t>(n)};
                for (auto& b : f.bits) b = static_cast<std::uint8_t>(bit(rng));
                ok = walsh_fast(f, field).coeffs == walsh_naive(f, field).coeffs;
            }
            rep.report("walsh-fast-vs-naive", ok, "25 random tables");
        } else {
            // Direct evaluation of sampled coefficients instead of the full
            // quadratic reference.
            TruthTable f{m, std::vector<std::uint8_t>(n)};
            std::uniform_int_distribution<int> bit(0, 1);
            for (auto& b : f.bits) b = static_cast<std::uint8_t>(bit(rng));
            const WalshSpectrum w = walsh_fast(f, field);
            for (int t = 0; t < 40 && ok; ++t) {
                const Element gamma = static_cast<Element>(rng() % n);
                std::int64_t acc = 0;
                for (std::uint32_t x = 0; x < n; ++x) {
                    acc += (field.trace_beta(gamma, x) ^ f.bits[x]) ? -1 : 1;
                }
                ok = acc == w.coeffs[gamma];
            }
            rep.report("walsh-fast-vs-naive", ok, "40 sampled coefficients");
        }

        bool parseval = true;
        for (std::uint64_t d : coprime_reps) {
            const WalshSpectrum w = power_walsh(d, field);
            std::uint64_t sum = 0;
            for (std::int32_t c : w.coeffs) {
                sum += static_cast<std::uint64_t>(std::int64_t{c} * std::int64_t{c});
            }
            if (sum != std::uint64_t{1} << (2 * m)) { parseval = false; break; }
        }
        rep.report("walsh-parseval", parseval, "all coprime coset reps");
    }

    // geometry: hyperplane duality, codim-2 dual route
    {
        bool dual = true;
        for (std::uint64_t d : coprime_reps) {
            const SupportSet D = support_set(d, field);
            const WalshSpectrum W = power_walsh(d, field);
            for (Element alpha = 1; alpha < n && dual; ++alpha) {
                const std::int64_t lhs = std::int64_t{W.coeffs[alpha]};
                const std::int64_t rhs =
                    (std::int64_t{1} << m) -
                    4 * static_cast<std::int64_t>(hyperplane_count(D, alpha, 0, field));
                dual = lhs == rhs;
            }
            if (!dual) break;
        }
        rep.report("hyperplane-walsh-duality", dual, "all alpha, all coprime reps");

        // The signed identity only needs W(0) = 0, which gcd(d, 2^m-1) = 1
        // provides at every parity of m.
        bool codim2 = true;
        for (std::uint64_t d : coprime_reps) {
            const SupportSet D = support_set(d, field);
            const WalshSpectrum W = power_walsh(d, field);
            if (m <= 7) {
                for (Element a = 1; a < n && codim2; ++a) {
                    for (Element b = static_cast<Element>(a + 1); b < n && codim2; ++b) {
                        for (int i = 0; i < 2 && codim2; ++i) {
                            for (int j = 0; j < 2 && codim2; ++j) {
                                codim2 = codim2_from_walsh(W, a, b, i, j) ==
                                         static_cast<std::int64_t>(
                                             codim2_count(D, a, b, i, j, field));
                            }
                        }
                    }
                }
            } else {
                for (int t = 0; t < 4000 && codim2; ++t) {
                    const Element a = static_cast<Element>(rng() % (n - 1)) + 1;
                    Element b = static_cast<Element>(rng() % (n - 1)) + 1;
                    if (a == b) continue;
                    const int i = static_cast<int>(rng() & 1);
                    const int j = static_cast<int>(rng() & 1);
                    codim2 = codim2_from_walsh(W, a, b, i, j) ==
                             static_cast<std::int64_t>(codim2_count(D, a, b, i, j, field));
                }
            }
            if (!codim2) break;
        }
        rep.report("codim2-formula-vs-count", codim2,
                   m <= 7 ? "exhaustive cells" : "sampled cells");
    }

    // AB structure, the gold/three-value equivalence, quasi-quadrics (odd m only)
    if (m % 2 == 1) {
        std::vector<std::uint64_t> ab_reps;
        bool mult_ok = true;
        for (std::uint64_t d : reps) {
            const AbReport ab = classify_ab(d, field, jobs);
            if (ab.is_ab) {
                ab_reps.push_back(d);
                mult_ok = mult_ok && ab.sign_rule_ok;
            }
        }
        rep.report("ab-multiplicities", mult_ok,
                   std::to_string(ab_reps.size()) + " AB classes");

        bool thm1 = true;
        for (std::uint64_t d : ab_reps) {
            const bool three = three_value_check(d, field, jobs);
            const bool gold = classify_exponent(d, m).gold;
            if (three != gold) { thm1 = false; break; }
        }
        rep.report("gold-iff-three-valued-codim2", thm1);

        bool envelope = true;
        for (std::uint64_t d : ab_reps) {
            if (!seven_value_check(d, field, jobs).ok) { envelope = false; break; }
        }
        rep.report("seven-value-envelope", envelope);

        bool quadric = true;
        for (std::uint64_t d : ab_reps) {
            if (!quasi_quadric_check(support_set(d, field), field)) { quadric = false; break; }
        }
        rep.report("ab-quasi-quadrics", quadric);

        bool profile = true;
        for (std::uint64_t d : ab_reps) {
            if (hyperplane_profile(d, field).counts != quadric_hyperplane_profile(m).counts) {
                profile = false;
                break;
            }
        }
        rep.report("ab-hyperplane-profile", profile);
    } else {
        rep.report("ab-checks", true, "skipped: odd m only");
    }

    // trace identity == monomial parity == weight-2 canonical form
    {
        bool agree = true;
        bool form = true;
        const std::uint64_t order = field.order();
        for (std::uint64_t d = 3; d < order; d += 2) {
            const bool identity = trace_identity(d, field);
            if (identity != monomial_parity(d, m).even_everywhere) { agree = false; break; }
            if (m % 2 == 1) {
                const std::uint64_t canon = cyclotomic_coset(d, m).canonical;
                const bool gold_form = std::popcount(canon) == 2;
                if (identity != gold_form) { form = false; break; }
            }
        }
        rep.report("identity-vs-monomial-parity", agree, "all odd d");
        if (m % 2 == 1) {
            rep.report("identity-iff-gold-form", form, "all odd d");
        } else {
            rep.report("identity-iff-gold-form", true, "skipped: odd m only");
        }
    }

    // witness completeness (odd m)
    if (m % 2 == 1) {
        bool ok = true;
        std::uint64_t cases = 0;
        for (std::uint64_t d : reps) {
            if ((d & 1) == 0) continue;
            const int z = std::popcount(d);
            if (z < 4 || (z & (z - 1)) != 0) continue;
            if (trace_identity(d, field)) continue;
            const WitnessResult w = witness_for(d, m);
            ++cases;
            if (!w.verified || w.multiset_size % 2 == 0) { ok = false; break; }
        }
        rep.report("witness-completeness", ok, std::to_string(cases) + " cases");
    } else {
        rep.report("witness-completeness", true, "skipped: odd m only");
    }

    // sequences: perfection and the crosscorrelation bridge
    {
        const PeriodicSequence a = m_sequence(field);
        rep.report("m-sequence-perfect", is_perfect(a));

        bool bridge = true;
        for (std::uint64_t d : coprime_reps) {
            if (!crosscorr_walsh_bridge(d, field).identity_holds) { bridge = false; break; }
        }
        rep.report("crosscorrelation-bridge", bridge, "all coprime reps, all shifts");
    }

    // Gold support / dd-correlation pipeline (odd m)
    if (m % 2 == 1) {
        bool ok = true;
        for (std::uint64_t d : reps) {
            const ExponentClass cls = classify_exponent(d, m);
            if (!cls.gold) continue;
            const SupportCheck sc = gold_support_check(d, field);
            if (!sc.matches || sc.gamma != 1) { ok = false; break; }
            const std::int64_t full = std::int64_t{1} << m;
            if (dd_correlation(d, 0, field) != full) { ok = false; break; }
            if (dd_correlation(d, 1, field) != -full) { ok = false; break; }
            const Element probe = field.zeta() == 1 ? 2 : field.zeta();
            if (dd_correlation(d, probe, field) != 0) { ok = false; break; }
        }
        rep.report("gold-support-pipeline", ok);
    } else {
        rep.report("gold-support-pipeline", true, "skipped: odd m only");
    }

    return rep.all_ok;
}

} // namespace abscope
