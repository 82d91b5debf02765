#include "abscope/scan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "abscope/geometry.hpp"
#include "abscope/parallel.hpp"
#include "abscope/walsh.hpp"

namespace abscope {

using ordered_json = nlohmann::ordered_json;

CheckSet parse_checks(std::string_view text) {
    CheckSet checks;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item =
            text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
        if (item == "ab") checks.insert(Check::ab);
        else if (item == "gold") checks.insert(Check::gold);
        else if (item == "three-value") checks.insert(Check::three_value);
        else if (item == "seven-value") checks.insert(Check::seven_value);
        else if (item == "trace-identity") checks.insert(Check::trace_identity);
        else if (item == "witness") checks.insert(Check::witness);
        else if (!item.empty()) {
            fail(Errc::bad_flag, "unknown check '" + std::string(item) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (checks.empty()) fail(Errc::bad_flag, "empty check list");
    return checks;
}

CheckSet all_checks() {
    return {Check::ab, Check::gold, Check::three_value, Check::seven_value,
            Check::trace_identity, Check::witness};
}

std::string validate_record(const ScanRecord& r) {
    if (r.gold.value_or(false) && r.trace_identity && !*r.trace_identity) {
        return "gold exponent without the trace identity";
    }
    if (r.three_value.value_or(false) && r.gold && !*r.gold) {
        return "three-valued codim-2 profile on a non-Gold AB exponent";
    }
    if (r.three_value.value_or(false) && r.trace_identity && !*r.trace_identity) {
        return "three-valued codim-2 profile without the trace identity";
    }
    if (r.ab.value_or(false) && r.linearity && r.m % 2 == 1 &&
        *r.linearity != (std::int64_t{1} << ((r.m + 1) / 2))) {
        return "ab flag with linearity != 2^{(m+1)/2}";
    }
    if (r.witness && !r.witness->verified) {
        return "unverified witness attached";
    }
    return {};
}

ScanRecord scan_one(std::uint64_t d, const Field& field, const CheckSet& checks) {
    const int m = field.degree();
    ScanRecord r;
    r.m = m;
    r.d = d;
    r.canonical_d = cyclotomic_coset(d, m).canonical;
    r.gcd = std::gcd(d, field.order());

    if (checks.count(Check::gold)) {
        const ExponentClass cls = classify_exponent(d, m);
        r.gold = cls.gold;
        if (cls.gold) r.gold_k = cls.gold_k;
        r.kasami = cls.kasami;
        if (cls.kasami) r.kasami_k = cls.kasami_k;
    }
    const bool want_codim2 = checks.count(Check::three_value) || checks.count(Check::seven_value);
    if (checks.count(Check::ab) || want_codim2) {
        if (m % 2 == 1) {
            const AbReport report = classify_ab(d, field);
            r.linearity = report.linearity;
            r.ab = report.is_ab;
            if (report.is_ab && want_codim2) {
                if (checks.count(Check::three_value)) {
                    r.three_value = three_value_check(d, field);
                }
                if (checks.count(Check::seven_value)) {
                    r.seven_value_set = seven_value_check(d, field).observed;
                }
            }
        } else {
            // AB classification is an odd-m notion; report the linearity only.
            std::vector<Element> F(field.size());
            const Element zd = field.pow(field.zeta(), d);
            Element x = 1, xd = 1;
            for (std::uint64_t i = 0; i < field.order(); ++i) {
                F[x] = xd;
                x = field.mul(x, field.zeta());
                xd = field.mul(xd, zd);
            }
            F[0] = 0;
            r.linearity = vector_linearity(F, field);
            r.ab = false;
        }
    }
    if (checks.count(Check::trace_identity) || checks.count(Check::witness)) {
        // d = 1 is the linear map; the identity is trivial there.
        const bool identity = d == 1 || trace_identity(d, field);
        r.trace_identity = identity;
        if (checks.count(Check::witness) && !identity) {
            const int z = CyclicBitVector::from_exponent(r.canonical_d, m).weight();
            if (m % 2 == 1 && z >= 3) {
                r.witness = witness_for(d, m);
            }
        }
    }
    return r;
}

std::vector<ScanRecord> scan_range(const Field& field, std::uint64_t d_lo,
                                   std::uint64_t d_hi, const CheckSet& checks,
                                   unsigned jobs) {
    const std::uint64_t max_d = field.order() - 1;
    d_hi = std::min(d_hi, max_d);
    if (d_lo < 1) d_lo = 1;
    if (d_lo > d_hi) {
        fail(Errc::range_empty,
             "no exponents in [" + std::to_string(d_lo) + ", " + std::to_string(d_hi) + "]");
    }
    std::set<std::uint64_t> reps;
    for (std::uint64_t d = d_lo; d <= d_hi; ++d) {
        reps.insert(cyclotomic_coset(d, field.degree()).canonical);
    }
    const std::vector<std::uint64_t> ordered(reps.begin(), reps.end());
    std::vector<ScanRecord> records(ordered.size());
    parallel_for(ordered.size(), jobs, [&](std::size_t i) {
        records[i] = scan_one(ordered[i], field, checks);
    });
    return records;
}

namespace {

ordered_json record_to_json(const ScanRecord& r) {
    ordered_json row;
    row["m"] = r.m;
    row["d"] = r.d;
    row["canonical_d"] = r.canonical_d;
    row["gcd"] = r.gcd;
    auto put = [&row](const char* key, const auto& opt) {
        if (opt) row[key] = *opt;
        else row[key] = nullptr;
    };
    put("linearity", r.linearity);
    put("ab", r.ab);
    put("gold", r.gold);
    put("gold_k", r.gold_k);
    put("kasami", r.kasami);
    put("kasami_k", r.kasami_k);
    put("three_value", r.three_value);
    if (r.seven_value_set) row["seven_value_set"] = *r.seven_value_set;
    else row["seven_value_set"] = nullptr;
    put("trace_identity", r.trace_identity);
    if (r.witness) {
        row["witness"] = ordered_json::parse(r.witness->to_json());
    } else {
        row["witness"] = nullptr;
    }
    return row;
}

// Fixed CSV column set; unset checks serialize as empty cells.
constexpr const char* kCsvHeader =
    "m,d,canonical_d,gcd,linearity,ab,gold,gold_k,kasami,kasami_k,"
    "three_value,seven_value_set,trace_identity,witness_bits,witness_count,"
    "witness_path,witness_verified";

std::string bool_cell(const std::optional<bool>& v) {
    if (!v) return {};
    return *v ? "true" : "false";
}

std::string record_to_csv_row(const ScanRecord& r) {
    std::ostringstream out;
    out << r.m << ',' << r.d << ',' << r.canonical_d << ',' << r.gcd << ',';
    if (r.linearity) out << *r.linearity;
    out << ',' << bool_cell(r.ab) << ',' << bool_cell(r.gold) << ',';
    if (r.gold_k) out << *r.gold_k;
    out << ',' << bool_cell(r.kasami) << ',';
    if (r.kasami_k) out << *r.kasami_k;
    out << ',' << bool_cell(r.three_value) << ',';
    if (r.seven_value_set) {
        bool first = true;
        for (std::int64_t v : *r.seven_value_set) {
            if (!first) out << ';';
            out << v;
            first = false;
        }
    }
    out << ',' << bool_cell(r.trace_identity) << ',';
    if (r.witness) {
        out << r.witness->witness.to_string() << ',' << r.witness->multiset_size << ','
            << witness_path_name(r.witness->path) << ','
            << (r.witness->verified ? "true" : "false");
    } else {
        out << ",,,";
    }
    return out.str();
}

std::string records_to_table(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    out << "  d(canonical)  gcd  linearity  ab     gold      kasami    3-val  tr-id  witness\n";
    for (const auto& r : records) {
        out << "  " << r.canonical_d << "  " << r.gcd << "  ";
        if (r.linearity) out << *r.linearity;
        else out << '-';
        auto flag = [&](const std::optional<bool>& v) {
            return !v ? "-" : (*v ? "yes" : "no");
        };
        out << "  " << flag(r.ab);
        out << "  " << flag(r.gold);
        if (r.gold_k) out << "(k=" << *r.gold_k << ")";
        out << "  " << flag(r.kasami);
        if (r.kasami_k) out << "(k=" << *r.kasami_k << ")";
        out << "  " << flag(r.three_value);
        out << "  " << flag(r.trace_identity);
        if (r.witness) {
            out << "  " << r.witness->witness.to_string() << "/"
                << witness_path_name(r.witness->path);
        }
        out << '\n';
    }
    return out.str();
}

} // namespace

ReportFormat parse_format(std::string_view text) {
    if (text == "json") return ReportFormat::json;
    if (text == "csv") return ReportFormat::csv;
    if (text == "table") return ReportFormat::table;
    fail(Errc::unknown_format, "format '" + std::string(text) + "'");
}

std::string emit_report(const std::vector<ScanRecord>& records, ReportFormat format) {
    switch (format) {
    case ReportFormat::json: {
        ordered_json arr = ordered_json::array();
        for (const auto& r : records) arr.push_back(record_to_json(r));
        return arr.dump();
    }
    case ReportFormat::csv: {
        std::ostringstream out;
        out << kCsvHeader << '\n';
        for (const auto& r : records) out << record_to_csv_row(r) << '\n';
        return out.str();
    }
    case ReportFormat::table:
        return records_to_table(records);
    }
    fail(Errc::unknown_format, "unhandled format");
}

std::vector<ScanRecord> records_from_json(std::string_view text) {
    const ordered_json arr = ordered_json::parse(text);
    std::vector<ScanRecord> records;
    records.reserve(arr.size());
    for (const auto& row : arr) {
        ScanRecord r;
        r.m = row.at("m").get<int>();
        r.d = row.at("d").get<std::uint64_t>();
        r.canonical_d = row.at("canonical_d").get<std::uint64_t>();
        r.gcd = row.at("gcd").get<std::uint64_t>();
        auto opt_i64 = [&row](const char* key) -> std::optional<std::int64_t> {
            if (row.at(key).is_null()) return std::nullopt;
            return row.at(key).get<std::int64_t>();
        };
        auto opt_bool = [&row](const char* key) -> std::optional<bool> {
            if (row.at(key).is_null()) return std::nullopt;
            return row.at(key).get<bool>();
        };
        r.linearity = opt_i64("linearity");
        r.ab = opt_bool("ab");
        r.gold = opt_bool("gold");
        if (!row.at("gold_k").is_null()) r.gold_k = row.at("gold_k").get<int>();
        r.kasami = opt_bool("kasami");
        if (!row.at("kasami_k").is_null()) r.kasami_k = row.at("kasami_k").get<int>();
        r.three_value = opt_bool("three_value");
        if (!row.at("seven_value_set").is_null()) {
            r.seven_value_set = row.at("seven_value_set").get<std::vector<std::int64_t>>();
        }
        r.trace_identity = opt_bool("trace_identity");
        if (!row.at("witness").is_null()) {
            const auto& w = row.at("witness");
            WitnessResult wr;
            wr.m = w.at("m").get<int>();
            wr.d = w.at("d").get<std::uint64_t>();
            wr.witness = CyclicBitVector::parse(w.at("witness_bits").get<std::string>());
            wr.multiset_size = w.at("multiset_size").get<std::uint64_t>();
            const std::string path = w.at("path").get<std::string>();
            if (path == "line4") wr.path = WitnessPath::line4;
            else if (path == "line6") wr.path = WitnessPath::line6;
            else if (path == "line7") wr.path = WitnessPath::line7;
            else if (path == "line8") wr.path = WitnessPath::line8;
            else if (path == "weight-obstruction") wr.path = WitnessPath::weight_obstruction;
            else wr.path = WitnessPath::fallback;
            wr.verified = w.at("verified").get<bool>();
            r.witness = wr;
        }
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace abscope
