#pragma once

#include "mbfm/date.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mbfm {

enum class Severity : std::uint8_t { Critical, High, Medium, Low };

enum class ProgramVariant : std::uint8_t {
    InviteOnly,
    FuzzingCompetition,
    OpenEnded,
    ShortTimeframe,
};

enum class Validity : std::uint8_t { Valid, Invalid, Duplicate };

std::string_view to_string(Severity s);
std::string_view to_string(ProgramVariant v);
std::string_view to_string(Validity v);
std::optional<Severity> severity_from_string(std::string_view name);
std::optional<ProgramVariant> variant_from_string(std::string_view name);
std::optional<Validity> validity_from_string(std::string_view name);

// One triaged bug-bounty submission. Invalid/Duplicate findings are parsed
// and retained (they carry triage statistics) but excluded from metrics.
struct Finding {
    std::string finding_id;
    Date submitted;
    Severity severity = Severity::Low;
    std::string title;
    ProgramVariant program_variant = ProgramVariant::OpenEnded;
    Validity validity = Validity::Valid;
    std::vector<std::string> swc_tags;
    std::vector<std::string> scsvs_tags;
    std::vector<std::string> linked_subjects; // element/flow IDs in the model
    std::string team;     // owning team label, may be empty
    std::string reporter; // may be empty

    bool operator==(const Finding&) const = default;
};

// Findings JSONL: one JSON object per line, keys exactly the Finding field
// names, dates ISO-8601. Record order is preserved. SyntaxError/SchemaError
// carry the 1-based line number.
std::vector<Finding> parse_findings_jsonl(const std::string& raw);

// Findings CSV: header row required, same field names, list fields
// ';'-separated within a cell. RFC-4180-style quoting for cells containing
// commas or quotes; multiline cells are not supported.
std::vector<Finding> parse_findings_csv(const std::string& raw);

// One object per line, keys sorted, no inner whitespace; the exact format
// parse_findings_jsonl consumes.
std::string serialize_findings_jsonl(const std::vector<Finding>& findings);

enum class PeriodScheme : std::uint8_t { Quarterly, SemiAnnual };

std::string_view to_string(PeriodScheme s);
std::optional<PeriodScheme> scheme_from_string(std::string_view name);

// One analysis window: [start, end), exactly 3 or 6 calendar months.
// Labels derive from the start month: "2021-Q3" / "2021-H1".
struct Period {
    std::string label;
    Date start;
    Date end; // exclusive
    PeriodScheme scheme = PeriodScheme::Quarterly;

    bool operator==(const Period&) const = default;
    bool contains(const Date& d) const { return start <= d && d < end; }
};

// The period of `scheme` length that contains `d`, on the grid anchored at
// `anchor` (anchor must be the first day of a month).
Period period_containing(const Date& d, PeriodScheme scheme, const Date& anchor);

// Buckets findings into consecutive periods covering min..max submitted
// dates; empty periods inside the range are present with empty lists (gaps
// matter for chronic-issue streaks). Throws EmptyInput when `findings` is
// empty, ConfigError when anchor is not a first-of-month.
std::vector<std::pair<Period, std::vector<Finding>>>
assign_periods(const std::vector<Finding>& findings, PeriodScheme scheme, const Date& anchor);

} // namespace mbfm
