#include "cli.hpp"

#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "abscope/abscope.hpp"
#include "abscope/verify.hpp"

namespace abscope::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint32_t parse_poly(const std::string& text) {
    std::string body = text;
    if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) body = body.substr(2);
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, 16);
    if (ec != std::errc{} || ptr != body.data() + body.size() || value == 0) {
        fail(Errc::bad_flag, "--poly expects a hexadecimal bitmask, got '" + text + "'");
    }
    return value;
}

Field make_field(int m, const std::string& poly) {
    return poly.empty() ? Field::make(m) : Field::make(m, parse_poly(poly));
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
    const std::size_t dots = text.find("..");
    if (dots == std::string::npos) {
        fail(Errc::bad_flag, "--d-range expects A..B, got '" + text + "'");
    }
    try {
        const std::uint64_t lo = std::stoull(text.substr(0, dots));
        const std::uint64_t hi = std::stoull(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        fail(Errc::bad_flag, "--d-range expects numeric bounds, got '" + text + "'");
    }
}

int cmd_field(int m, const std::string& poly, ReportFormat format, std::ostream& out) {
    const Field field = make_field(m, poly);
    std::uint64_t trace_ones = 0;
    for (std::uint32_t x = 0; x < field.size(); ++x) trace_ones += field.trace(x);
    if (format == ReportFormat::json) {
        ordered_json obj;
        std::ostringstream hex;
        hex << "0x" << std::hex << std::uppercase << field.modulus();
        obj["m"] = field.degree();
        obj["modulus"] = hex.str();
        obj["zeta"] = field.zeta();
        obj["order"] = field.order();
        obj["trace_ones"] = trace_ones;
        out << obj.dump() << '\n';
    } else {
        out << "m:          " << field.degree() << '\n'
            << "modulus:    0x" << std::hex << std::uppercase << field.modulus() << std::dec
            << '\n'
            << "zeta:       " << field.zeta() << '\n'
            << "order:      " << field.order() << '\n'
            << "trace ones: " << trace_ones << '\n';
    }
    return 0;
}

int cmd_spectrum(int m, std::uint64_t d, const std::string& poly, ReportFormat format,
                 std::ostream& out) {
    const Field field = make_field(m, poly);
    const WalshSpectrum w = power_walsh(d, field);
    switch (format) {
    case ReportFormat::json:
        out << to_json(w) << '\n';
        break;
    case ReportFormat::csv:
        out << to_csv(w);
        break;
    case ReportFormat::table: {
        std::int64_t lin = 0;
        for (std::int32_t c : w.coeffs) lin = std::max<std::int64_t>(lin, std::abs(std::int64_t{c}));
        out << "linearity:    " << lin << '\n'
            << "nonlinearity: " << ((std::int64_t{1} << (m - 1)) - lin / 2) << '\n';
        if (m % 2 == 0) {
            out << "bent:         " << (lin == (std::int64_t{1} << (m / 2)) ? "yes" : "no")
                << '\n';
        }
        out << "gamma coefficient\n";
        for (std::size_t gamma = 0; gamma < w.coeffs.size(); ++gamma) {
            out << gamma << ' ' << w.coeffs[gamma] << '\n';
        }
        break;
    }
    }
    return 0;
}

int cmd_intersections(int m, std::uint64_t d, const std::string& poly,
                      const std::string& family, ReportFormat format, unsigned jobs,
                      std::ostream& out) {
    const Field field = make_field(m, poly);
    IntersectionProfile profile;
    if (family == "hyperplane") {
        profile = hyperplane_profile(d, field);
    } else if (family == "codim2") {
        if (std::gcd(d, field.order()) != 1) {
            fail(Errc::not_coprime, "codim-2 profile needs gcd(d, 2^m-1) = 1");
        }
        profile = codim2_profile(d, field, jobs);
    } else {
        fail(Errc::bad_flag, "--family must be hyperplane or codim2");
    }
    switch (format) {
    case ReportFormat::json:
        out << to_json(profile) << '\n';
        break;
    case ReportFormat::csv:
        out << to_csv(profile);
        break;
    case ReportFormat::table:
        out << "size multiplicity\n";
        for (const auto& [size, mult] : profile.counts) {
            out << size << ' ' << mult << '\n';
        }
        break;
    }
    return 0;
}

int emit_records(const std::vector<ScanRecord>& records, ReportFormat format,
                 std::ostream& out, std::ostream& err) {
    for (const auto& r : records) {
        const std::string violation = validate_record(r);
        if (!violation.empty()) {
            err << "invariant violated for d=" << r.d << ": " << violation << '\n';
            return 2;
        }
    }
    out << emit_report(records, format);
    if (format == ReportFormat::json) out << '\n';
    return 0;
}

int cmd_scan(int m, const std::string& poly, const std::string& range,
             const std::string& checks_text, unsigned jobs, ReportFormat format,
             std::ostream& out, std::ostream& err) {
    const Field field = make_field(m, poly);
    std::uint64_t lo = 1;
    std::uint64_t hi = field.order() - 1;
    if (!range.empty()) std::tie(lo, hi) = parse_range(range);
    const CheckSet checks = checks_text.empty() ? all_checks() : parse_checks(checks_text);
    const auto records = scan_range(field, lo, hi, checks, jobs);
    return emit_records(records, format, out, err);
}

int cmd_gold_check(int m, std::uint64_t d, const std::string& poly, ReportFormat format,
                   std::ostream& out, std::ostream& err) {
    const Field field = make_field(m, poly);
    const std::vector<ScanRecord> records{scan_one(d, field, all_checks())};
    return emit_records(records, format, out, err);
}

int cmd_witness(int m, std::uint64_t d, ReportFormat format, std::ostream& out) {
    const std::uint64_t canonical = cyclotomic_coset(d, m).canonical;
    const int weight = CyclicBitVector::from_exponent(canonical, m).weight();
    if (weight <= 2) {
        if (format == ReportFormat::json) {
            ordered_json obj;
            obj["d"] = d;
            obj["m"] = m;
            obj["canonical_d"] = canonical;
            obj["trace_identity"] = true;
            obj["witness"] = nullptr;
            out << obj.dump() << '\n';
        } else {
            out << "canonical form " << canonical
                << " has weight <= 2: the trace identity holds, no witness exists\n";
        }
        return 0;
    }
    const WitnessResult w = witness_for(d, m);
    if (format == ReportFormat::json) {
        out << w.to_json() << '\n';
    } else {
        out << "canonical d:   " << w.d << '\n'
            << "witness:       " << w.witness.to_string() << '\n'
            << "multiset size: " << w.multiset_size << '\n'
            << "path:          " << witness_path_name(w.path) << '\n'
            << "verified:      " << (w.verified ? "yes" : "no") << '\n';
    }
    return 0;
}

int cmd_crosscorr(int m, std::uint64_t d, const std::string& poly, ReportFormat format,
                  std::ostream& out) {
    const Field field = make_field(m, poly);
    const BridgeReport report = crosscorr_walsh_bridge(d, field);
    const PeriodicSequence a = m_sequence(field);
    const PeriodicSequence b = decimate(a, d);
    switch (format) {
    case ReportFormat::json: {
        ordered_json obj;
        obj["m"] = m;
        obj["d"] = d;
        obj["identity_holds"] = report.identity_holds;
        obj["max_crosscorrelation"] = report.max_crosscorrelation;
        obj["linearity"] = report.linearity;
        obj["linearity_matches"] = report.linearity_matches;
        ordered_json values = ordered_json::array();
        for (std::uint64_t t = 0; t < a.period; ++t) {
            values.push_back(crosscorrelation(b, a, t));
        }
        obj["values"] = values;
        out << obj.dump() << '\n';
        break;
    }
    case ReportFormat::csv:
        out << "t,value\n";
        for (std::uint64_t t = 0; t < a.period; ++t) {
            out << t << ',' << crosscorrelation(b, a, t) << '\n';
        }
        break;
    case ReportFormat::table:
        out << "identity holds:        " << (report.identity_holds ? "yes" : "no") << '\n'
            << "max crosscorrelation:  " << report.max_crosscorrelation << '\n'
            << "linearity:             " << report.linearity << '\n'
            << "max |c_t + 1| matches: " << (report.linearity_matches ? "yes" : "no") << '\n';
        break;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"walsh spectra, almost-bent classification and gold-exponent analysis "
                 "of power functions over GF(2^m)"};
    app.require_subcommand(1);

    int m = 0;
    std::uint64_t d = 0;
    std::string poly;
    std::string format_text = "table";
    std::string range_text;
    std::string checks_text;
    std::string family = "hyperplane";
    unsigned jobs = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_d) {
        cmd->add_option("--m", m, "extension degree")->required();
        if (needs_d) cmd->add_option("--d", d, "power-map exponent")->required();
        cmd->add_option("--poly", poly, "modulus override as a hex bitmask (e.g. 0xB)");
        cmd->add_option("--format", format_text, "output format: json, csv or table");
        cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
        return cmd;
    };

    auto* field_cmd = add_common(app.add_subcommand("field", "field construction summary"), false);
    auto* spectrum_cmd =
        add_common(app.add_subcommand("spectrum", "walsh spectrum of x^d"), true);
    auto* scan_cmd =
        add_common(app.add_subcommand("ab-scan", "scan coset representatives"), false);
    scan_cmd->add_option("--d-range", range_text, "exponent range A..B (default: all)");
    scan_cmd->add_option("--checks", checks_text,
                         "comma list: ab,gold,three-value,seven-value,trace-identity,witness");
    auto* inter_cmd = add_common(
        app.add_subcommand("intersections", "hyperplane / codim-2 intersection profile"), true);
    inter_cmd->add_option("--family", family, "hyperplane (default) or codim2");
    auto* gold_cmd =
        add_common(app.add_subcommand("gold-check", "full record for one exponent"), true);
    auto* witness_cmd = app.add_subcommand("witness", "odd-multiset witness for the trace identity");
    witness_cmd->add_option("--m", m, "vector length (odd)")->required();
    witness_cmd->add_option("--d", d, "exponent")->required();
    witness_cmd->add_option("--format", format_text, "output format: json or table");
    auto* cross_cmd = add_common(
        app.add_subcommand("crosscorr", "m-sequence crosscorrelation and the walsh bridge"), true);
    auto* verify_cmd =
        add_common(app.add_subcommand("verify-all", "run every cross-module invariant"), false);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("abscope");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    try {
        const ReportFormat format = parse_format(format_text);
        if (app.got_subcommand(field_cmd)) return cmd_field(m, poly, format, out);
        if (app.got_subcommand(spectrum_cmd)) return cmd_spectrum(m, d, poly, format, out);
        if (app.got_subcommand(scan_cmd))
            return cmd_scan(m, poly, range_text, checks_text, jobs, format, out, err);
        if (app.got_subcommand(inter_cmd))
            return cmd_intersections(m, d, poly, family, format, jobs, out);
        if (app.got_subcommand(gold_cmd)) return cmd_gold_check(m, d, poly, format, out, err);
        if (app.got_subcommand(witness_cmd)) return cmd_witness(m, d, format, out);
        if (app.got_subcommand(cross_cmd)) return cmd_crosscorr(m, d, poly, format, out);
        if (app.got_subcommand(verify_cmd)) {
            const Field field = make_field(m, poly);
            return verify_all(field, out, jobs) ? 0 : 2;
        }
        fail(Errc::unknown_command, "no subcommand selected");
    } catch (const Error& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace abscope::cli
