#include "mbfm/findings.hpp"

#include "mbfm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace mbfm {

namespace {

using nlohmann::json;

constexpr const char* kFieldNames[] = {
    "finding_id", "submitted",  "severity",        "title", "program_variant", "validity",
    "swc_tags",   "scsvs_tags", "linked_subjects", "team",  "reporter",
};

} // namespace

std::string_view to_string(Severity s) {
    switch (s) {
    case Severity::Critical: return "Critical";
    case Severity::High: return "High";
    case Severity::Medium: return "Medium";
    case Severity::Low: return "Low";
    }
    return {};
}

std::string_view to_string(ProgramVariant v) {
    switch (v) {
    case ProgramVariant::InviteOnly: return "InviteOnly";
    case ProgramVariant::FuzzingCompetition: return "FuzzingCompetition";
    case ProgramVariant::OpenEnded: return "OpenEnded";
    case ProgramVariant::ShortTimeframe: return "ShortTimeframe";
    }
    return {};
}

std::string_view to_string(Validity v) {
    switch (v) {
    case Validity::Valid: return "Valid";
    case Validity::Invalid: return "Invalid";
    case Validity::Duplicate: return "Duplicate";
    }
    return {};
}

std::optional<Severity> severity_from_string(std::string_view name) {
    if (name == "Critical") return Severity::Critical;
    if (name == "High") return Severity::High;
    if (name == "Medium") return Severity::Medium;
    if (name == "Low") return Severity::Low;
    return std::nullopt;
}

std::optional<ProgramVariant> variant_from_string(std::string_view name) {
    if (name == "InviteOnly") return ProgramVariant::InviteOnly;
    if (name == "FuzzingCompetition") return ProgramVariant::FuzzingCompetition;
    if (name == "OpenEnded") return ProgramVariant::OpenEnded;
    if (name == "ShortTimeframe") return ProgramVariant::ShortTimeframe;
    return std::nullopt;
}

std::optional<Validity> validity_from_string(std::string_view name) {
    if (name == "Valid") return Validity::Valid;
    if (name == "Invalid") return Validity::Invalid;
    if (name == "Duplicate") return Validity::Duplicate;
    return std::nullopt;
}

std::string_view to_string(PeriodScheme s) {
    return s == PeriodScheme::Quarterly ? "Quarterly" : "SemiAnnual";
}

std::optional<PeriodScheme> scheme_from_string(std::string_view name) {
    if (name == "Quarterly") return PeriodScheme::Quarterly;
    if (name == "SemiAnnual") return PeriodScheme::SemiAnnual;
    return std::nullopt;
}

namespace {

Finding finding_from_fields(const std::map<std::string, json>& fields, std::size_t line) {
    auto str = [&](const char* key) {
        const json& v = fields.at(key);
        if (!v.is_string()) {
            throw SchemaError(std::string("field '") + key + "' must be a string", key, line);
        }
        return v.get<std::string>();
    };
    auto str_list = [&](const char* key) {
        const json& v = fields.at(key);
        if (!v.is_array()) {
            throw SchemaError(std::string("field '") + key + "' must be an array", key, line);
        }
        std::vector<std::string> out;
        for (const auto& item : v) {
            if (!item.is_string()) {
                throw SchemaError(std::string("field '") + key + "' must hold strings", key, line);
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    };

    Finding f;
    f.finding_id = str("finding_id");
    try {
        f.submitted = Date::parse(str("submitted"));
    } catch (const SyntaxError& e) {
        throw SchemaError(e.what(), "submitted", line);
    }
    const std::string severity = str("severity");
    if (auto s = severity_from_string(severity)) {
        f.severity = *s;
    } else {
        throw SchemaError("unknown severity '" + severity + "'", "severity", line);
    }
    f.title = str("title");
    const std::string variant = str("program_variant");
    if (auto v = variant_from_string(variant)) {
        f.program_variant = *v;
    } else {
        throw SchemaError("unknown program_variant '" + variant + "'", "program_variant", line);
    }
    const std::string validity = str("validity");
    if (auto v = validity_from_string(validity)) {
        f.validity = *v;
    } else {
        throw SchemaError("unknown validity '" + validity + "'", "validity", line);
    }
    f.swc_tags = str_list("swc_tags");
    f.scsvs_tags = str_list("scsvs_tags");
    f.linked_subjects = str_list("linked_subjects");
    f.team = str("team");
    f.reporter = str("reporter");
    return f;
}

} // namespace

std::vector<Finding> parse_findings_jsonl(const std::string& raw) {
    std::vector<Finding> out;
    std::istringstream stream(raw);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error& e) {
            throw SyntaxError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")",
                              e.byte, line_no);
        }
        if (!doc.is_object()) {
            throw SchemaError("each JSONL record must be an object", "$", line_no);
        }
        std::map<std::string, json> fields;
        for (const auto& [key, value] : doc.items()) {
            bool known = false;
            for (const char* k : kFieldNames) {
                if (key == k) known = true;
            }
            if (!known) {
                throw SchemaError("unknown field '" + key + "'", key, line_no);
            }
            fields.emplace(key, value);
        }
        for (const char* k : kFieldNames) {
            if (fields.count(k) == 0) {
                throw SchemaError(std::string("missing required field '") + k + "'", k, line_no);
            }
        }
        out.push_back(finding_from_fields(fields, line_no));
    }
    return out;
}

namespace {

// One CSV row; quotes handle embedded commas/semicolons/quotes.
std::vector<std::string> split_csv_row(const std::string& line, std::size_t line_no) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            if (!cell.empty()) {
                throw SyntaxError("quote inside unquoted cell (line " + std::to_string(line_no) +
                                      ")",
                                  i, line_no);
            }
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    if (quoted) {
        throw SyntaxError("unterminated quote (line " + std::to_string(line_no) + ")",
                          line.size(), line_no);
    }
    cells.push_back(std::move(cell));
    return cells;
}

json csv_cell_to_json(const std::string& field, const std::string& cell) {
    // list fields are ';'-separated within the cell
    if (field == "swc_tags" || field == "scsvs_tags" || field == "linked_subjects") {
        json arr = json::array();
        if (cell.empty()) {
            return arr;
        }
        std::string item;
        std::istringstream stream(cell);
        while (std::getline(stream, item, ';')) {
            if (!item.empty()) {
                arr.push_back(item);
            }
        }
        return arr;
    }
    return json(cell);
}

} // namespace

std::vector<Finding> parse_findings_csv(const std::string& raw) {
    std::vector<Finding> out;
    std::istringstream stream(raw);
    std::string line;
    std::size_t line_no = 0;

    std::vector<std::string> header;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        if (header.empty()) {
            header = split_csv_row(line, line_no);
            for (const auto& field : header) {
                bool known = false;
                for (const char* k : kFieldNames) {
                    if (field == k) known = true;
                }
                if (!known) {
                    throw SchemaError("unknown column '" + field + "'", field, line_no);
                }
            }
            for (const char* k : kFieldNames) {
                if (std::find(header.begin(), header.end(), k) == header.end()) {
                    throw SchemaError(std::string("missing column '") + k + "'", k, line_no);
                }
            }
            continue;
        }
        const auto cells = split_csv_row(line, line_no);
        if (cells.size() != header.size()) {
            throw SchemaError("row has " + std::to_string(cells.size()) + " cells, header has " +
                                  std::to_string(header.size()),
                              "$", line_no);
        }
        std::map<std::string, json> fields;
        for (std::size_t i = 0; i < header.size(); ++i) {
            fields.emplace(header[i], csv_cell_to_json(header[i], cells[i]));
        }
        out.push_back(finding_from_fields(fields, line_no));
    }
    if (header.empty() && line_no > 0) {
        throw SchemaError("missing header row", "$", 1);
    }
    return out;
}

std::string serialize_findings_jsonl(const std::vector<Finding>& findings) {
    std::string out;
    for (const Finding& f : findings) {
        const json doc{{"finding_id", f.finding_id},
                       {"submitted", f.submitted.iso()},
                       {"severity", std::string(to_string(f.severity))},
                       {"title", f.title},
                       {"program_variant", std::string(to_string(f.program_variant))},
                       {"validity", std::string(to_string(f.validity))},
                       {"swc_tags", f.swc_tags},
                       {"scsvs_tags", f.scsvs_tags},
                       {"linked_subjects", f.linked_subjects},
                       {"team", f.team},
                       {"reporter", f.reporter}};
        out += doc.dump();
        out += '\n';
    }
    return out;
}

namespace {

std::string period_label(const Date& start, PeriodScheme scheme) {
    char buf[16];
    if (scheme == PeriodScheme::Quarterly) {
        std::snprintf(buf, sizeof buf, "%04d-Q%d", start.year, (start.month - 1) / 3 + 1);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-H%d", start.year, (start.month - 1) / 6 + 1);
    }
    return buf;
}

} // namespace

Period period_containing(const Date& d, PeriodScheme scheme, const Date& anchor) {
    const int stride = scheme == PeriodScheme::Quarterly ? 3 : 6;
    const int months = month_diff(anchor, d);
    // floor division; dates before the anchor land in negative slots
    int slot = months / stride;
    if (months % stride < 0) {
        slot -= 1;
    }
    Period p;
    p.start = anchor.add_months_first_day(slot * stride);
    p.end = anchor.add_months_first_day((slot + 1) * stride);
    p.scheme = scheme;
    p.label = period_label(p.start, scheme);
    return p;
}

std::vector<std::pair<Period, std::vector<Finding>>>
assign_periods(const std::vector<Finding>& findings, PeriodScheme scheme, const Date& anchor) {
    if (findings.empty()) {
        throw EmptyInput("no findings to assign to periods");
    }
    if (!anchor.first_of_month() || !anchor.ok()) {
        throw ConfigError("anchor must be the first day of a month, got " + anchor.iso());
    }

    Date min_date = findings.front().submitted;
    Date max_date = findings.front().submitted;
    for (const Finding& f : findings) {
        min_date = std::min(min_date, f.submitted);
        max_date = std::max(max_date, f.submitted);
    }

    const Period first = period_containing(min_date, scheme, anchor);
    const Period last = period_containing(max_date, scheme, anchor);

    std::vector<std::pair<Period, std::vector<Finding>>> out;
    for (Date start = first.start; start <= last.start;
         start = period_containing(start, scheme, anchor).end) {
        out.emplace_back(period_containing(start, scheme, anchor), std::vector<Finding>{});
    }
    for (const Finding& f : findings) {
        for (auto& [period, bucket] : out) {
            if (period.contains(f.submitted)) {
                bucket.push_back(f);
                break;
            }
        }
    }
    return out;
}

} // namespace mbfm
