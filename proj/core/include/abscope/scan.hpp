#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "abscope/field.hpp"
#include "abscope/gold.hpp"

namespace abscope {

enum class Check {
    ab,
    gold,
    three_value,
    seven_value,
    trace_identity,
    witness,
};

using CheckSet = std::set<Check>;

/// Parses a comma-separated list like "ab,gold,trace-identity".
CheckSet parse_checks(std::string_view text);
CheckSet all_checks();

/// One row of a scan: everything the requested checks computed for a
/// canonical coset representative. Unset optionals mean the check was not
/// requested (or not applicable, e.g. codim-2 checks on non-AB maps).
struct ScanRecord {
    int m = 0;
    std::uint64_t d = 0;
    std::uint64_t canonical_d = 0;
    std::uint64_t gcd = 0;
    std::optional<std::int64_t> linearity;
    std::optional<bool> ab;
    std::optional<bool> gold;
    std::optional<int> gold_k;
    std::optional<bool> kasami;
    std::optional<int> kasami_k;
    std::optional<bool> three_value;
    std::optional<std::vector<std::int64_t>> seven_value_set;
    std::optional<bool> trace_identity;
    std::optional<WitnessResult> witness;
};

/// Cross-record implications that must hold on every row; returns a
/// description of the first violation, empty when consistent.
std::string validate_record(const ScanRecord& record);

/// Evaluates the requested checks for one exponent.
ScanRecord scan_one(std::uint64_t d, const Field& field, const CheckSet& checks);

/// One record per canonical coset representative met by [d_lo, d_hi],
/// ascending; work is distributed over the job count without affecting the
/// output.
std::vector<ScanRecord> scan_range(const Field& field, std::uint64_t d_lo,
                                   std::uint64_t d_hi, const CheckSet& checks,
                                   unsigned jobs = 0);

enum class ReportFormat { json, csv, table };

ReportFormat parse_format(std::string_view text);

/// Serializes records with stable key names and deterministic ordering.
std::string emit_report(const std::vector<ScanRecord>& records, ReportFormat format);

/// Inverse of the JSON emitter, for round-trip checks.
std::vector<ScanRecord> records_from_json(std::string_view text);

} // namespace abscope
