#include "mbfm/report_io.hpp"

#include "mbfm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <initializer_list>
#include <sstream>

namespace mbfm {

std::string_view to_string(RenderFormat f) {
    switch (f) {
    case RenderFormat::Json: return "json";
    case RenderFormat::Markdown: return "md";
    case RenderFormat::Dot: return "dot";
    }
    return {};
}

std::optional<RenderFormat> render_format_from_string(std::string_view name) {
    if (name == "json") return RenderFormat::Json;
    if (name == "md" || name == "markdown") return RenderFormat::Markdown;
    if (name == "dot") return RenderFormat::Dot;
    return std::nullopt;
}

namespace {

using nlohmann::json;

// "21" not "21.000000"; six significant digits otherwise.
std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- JSON rendering ---

json period_to_json(const Period& p) {
    return json{{"label", p.label},
                {"start", p.start.iso()},
                {"end", p.end.iso()},
                {"scheme", std::string(to_string(p.scheme))}};
}

json accuracy_to_json(const AccuracyStats& a) {
    return json{{"predicted", a.predicted},
                {"confirmed_by_findings", a.confirmed_by_findings},
                {"uncovered_findings", a.uncovered_findings},
                {"precision", a.precision},
                {"recall", a.recall},
                {"overlooked_subjects", a.overlooked_subjects}};
}

json rows_to_json(const std::vector<IdTableRow>& rows) {
    json arr = json::array();
    for (const IdTableRow& row : rows) {
        arr.push_back(json{{"id", row.id}, {"description", row.description}});
    }
    return arr;
}

json chronic_to_json(const std::vector<ChronicIssue>& issues) {
    json arr = json::array();
    for (const ChronicIssue& c : issues) {
        arr.push_back(json{{"swc_id", c.swc_id},
                           {"streak_length", c.streak_length},
                           {"periods", c.periods}});
    }
    return arr;
}

// --- strict JSON parsing (mirrors model_io) ---

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> required) {
    if (!obj.is_object()) {
        throw SchemaError("expected a JSON object", path);
    }
    for (const char* key : required) {
        if (!obj.contains(key)) {
            throw SchemaError(std::string("missing required field '") + key + "'",
                              path + "." + key);
        }
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : required) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaError("unknown field '" + key + "'", path + "." + key);
        }
    }
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw SchemaError("expected a string", path + "." + key);
    }
    return v.get<std::string>();
}

long get_long(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw SchemaError("expected an integer", path + "." + key);
    }
    return v.get<long>();
}

double get_double(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw SchemaError("expected a number", path + "." + key);
    }
    return v.get<double>();
}

std::vector<std::string> get_string_list(const json& obj, const char* key,
                                         const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_array()) {
        throw SchemaError("expected an array of strings", path + "." + key);
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw SchemaError("expected an array of strings", path + "." + key);
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::map<std::string, long> get_count_map(const json& obj, const char* key,
                                          const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_object()) {
        throw SchemaError("expected an object of integers", path + "." + key);
    }
    std::map<std::string, long> out;
    for (const auto& [k, val] : v.items()) {
        if (!val.is_number_integer()) {
            throw SchemaError("expected an integer", path + "." + key + "." + k);
        }
        out[k] = val.get<long>();
    }
    return out;
}

Date parse_date_field(const json& obj, const char* key, const std::string& path) {
    const std::string raw = get_string(obj, key, path);
    try {
        return Date::parse(raw);
    } catch (const Error&) {
        throw SchemaError("invalid ISO-8601 date '" + raw + "'", path + "." + key);
    }
}

Period parse_period(const json& obj, const std::string& path) {
    check_keys(obj, path, {"label", "start", "end", "scheme"});
    Period p;
    p.label = get_string(obj, "label", path);
    p.start = parse_date_field(obj, "start", path);
    p.end = parse_date_field(obj, "end", path);
    const std::string scheme = get_string(obj, "scheme", path);
    auto parsed = scheme_from_string(scheme);
    if (!parsed) {
        throw SchemaError("unknown period scheme '" + scheme + "'", path + ".scheme");
    }
    p.scheme = *parsed;
    return p;
}

AccuracyStats parse_accuracy(const json& obj, const std::string& path) {
    check_keys(obj, path,
               {"predicted", "confirmed_by_findings", "uncovered_findings", "precision",
                "recall", "overlooked_subjects"});
    AccuracyStats a;
    a.predicted = get_long(obj, "predicted", path);
    a.confirmed_by_findings = get_long(obj, "confirmed_by_findings", path);
    a.uncovered_findings = get_long(obj, "uncovered_findings", path);
    a.precision = get_double(obj, "precision", path);
    a.recall = get_double(obj, "recall", path);
    a.overlooked_subjects = get_string_list(obj, "overlooked_subjects", path);
    return a;
}

std::vector<IdTableRow> parse_rows(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_array()) {
        throw SchemaError("expected an array", path + "." + key);
    }
    std::vector<IdTableRow> rows;
    std::size_t i = 0;
    for (const auto& item : v) {
        const std::string row_path = path + "." + key + "[" + std::to_string(i++) + "]";
        check_keys(item, row_path, {"id", "description"});
        rows.push_back({get_string(item, "id", row_path), get_string(item, "description", row_path)});
    }
    return rows;
}

json parse_document(const std::string& raw) {
    try {
        return json::parse(raw);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
}

// --- Markdown helpers ---

std::string md_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

void md_id_table(std::ostringstream& os, const char* title, const std::vector<IdTableRow>& rows) {
    os << "## " << title << "\n\n";
    os << "| ID | Description |\n";
    os << "| --- | --- |\n";
    for (const IdTableRow& row : rows) {
        os << "| " << md_escape(row.id) << " | " << md_escape(row.description) << " |\n";
    }
    os << "\n";
}

// --- DOT helpers ---

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == '"') out += '\\';
        out += c;
    }
    return out;
}

const char* kind_shape(ElementKind k) {
    switch (k) {
    case ElementKind::ExternalEntity: return "box";
    case ElementKind::Process: return "ellipse";
    case ElementKind::DataStore: return "cylinder";
    }
    return "box";
}

struct FindingMark {
    long count = 0;
    double score = 0.0;
    bool present = false;
};

FindingMark mark_for(const PeriodReport& report, const std::string& subject) {
    FindingMark m;
    auto c = report.asset_counts.find(subject);
    auto s = report.asset_scores.find(subject);
    if (c != report.asset_counts.end()) {
        m.count = c->second;
        m.score = s != report.asset_scores.end() ? s->second : 0.0;
        m.present = true;
    }
    return m;
}

// Gold / orange / red by score thirds over the period's maximum.
const char* score_color(double score, double max_score) {
    if (max_score <= 0.0) return "#d4a017";
    if (score * 3.0 <= max_score) return "#d4a017";
    if (score * 3.0 <= max_score * 2.0) return "#e67e22";
    return "#c0392b";
}

std::string annotation(const FindingMark& m) {
    return "[" + std::to_string(m.count) + " findings | score " + fmt_num(m.score) + "]";
}

} // namespace

std::string render_json(const PeriodReport& report) {
    json scsvs = json::object();
    for (const auto& [section, count] : report.category_freq_scsvs_section) {
        scsvs[std::to_string(section)] = count;
    }
    json quarantine = json::array();
    for (const QuarantineRecord& q : report.quarantine) {
        quarantine.push_back(json{{"finding_id", q.finding_id}, {"reasons", q.reasons}});
    }
    const json j{
        {"period", period_to_json(report.period)},
        {"asset_counts", report.asset_counts},
        {"asset_scores", report.asset_scores},
        {"category_freq_swc", report.category_freq_swc},
        {"category_freq_scsvs_section", scsvs},
        {"model_accuracy", accuracy_to_json(report.model_accuracy)},
        {"control_gaps", report.control_gaps},
        {"team_breakdown", report.team_breakdown},
        {"priority_ranking", report.priority_ranking},
        {"id_tables",
         json{{"assets", rows_to_json(report.id_tables.assets)},
              {"threat_actors", rows_to_json(report.id_tables.threat_actors)},
              {"security_controls", rows_to_json(report.id_tables.security_controls)},
              {"swc_registry", rows_to_json(report.id_tables.swc_registry)},
              {"scsvs", rows_to_json(report.id_tables.scsvs)}}},
        {"triage",
         json{{"total", report.triage.total},
              {"valid", report.triage.valid},
              {"invalid", report.triage.invalid},
              {"duplicate", report.triage.duplicate},
              {"quarantined", report.triage.quarantined}}},
        {"actor_observations",
         json{{"findings_on_targets", report.actor_observations.findings_on_targets},
              {"findings_elsewhere", report.actor_observations.findings_elsewhere}}},
        {"quarantine", quarantine},
        {"catalog_version", report.catalog_version},
    };
    return j.dump(2) + "\n";
}

std::string render_json(const TrendReport& report) {
    const json j{
        {"period_labels", report.period_labels},
        {"findings_per_period", report.findings_per_period},
        {"precision_series", report.precision_series},
        {"recall_series", report.recall_series},
        {"chronic_k", report.chronic_k},
        {"chronic_issues", chronic_to_json(report.chronic_issues)},
        {"catalog_version", report.catalog_version},
    };
    return j.dump(2) + "\n";
}

PeriodReport parse_report(const std::string& raw) {
    const json j = parse_document(raw);
    const std::string path = "$";
    check_keys(j, path,
               {"period", "asset_counts", "asset_scores", "category_freq_swc",
                "category_freq_scsvs_section", "model_accuracy", "control_gaps",
                "team_breakdown", "priority_ranking", "id_tables", "triage",
                "actor_observations", "quarantine", "catalog_version"});

    PeriodReport report;
    report.period = parse_period(j.at("period"), path + ".period");
    report.asset_counts = get_count_map(j, "asset_counts", path);

    const json& scores = j.at("asset_scores");
    if (!scores.is_object()) {
        throw SchemaError("expected an object of numbers", path + ".asset_scores");
    }
    for (const auto& [k, v] : scores.items()) {
        if (!v.is_number()) {
            throw SchemaError("expected a number", path + ".asset_scores." + k);
        }
        report.asset_scores[k] = v.get<double>();
    }

    report.category_freq_swc = get_count_map(j, "category_freq_swc", path);

    const json& scsvs = j.at("category_freq_scsvs_section");
    if (!scsvs.is_object()) {
        throw SchemaError("expected an object of integers", path + ".category_freq_scsvs_section");
    }
    for (const auto& [k, v] : scsvs.items()) {
        const std::string item_path = path + ".category_freq_scsvs_section." + k;
        std::size_t used = 0;
        int section = 0;
        try {
            section = std::stoi(k, &used);
        } catch (const std::exception&) {
            throw SchemaError("section key must be an integer", item_path);
        }
        if (used != k.size() || !v.is_number_integer()) {
            throw SchemaError("section key must be an integer", item_path);
        }
        report.category_freq_scsvs_section[section] = v.get<long>();
    }

    report.model_accuracy = parse_accuracy(j.at("model_accuracy"), path + ".model_accuracy");
    report.control_gaps = get_count_map(j, "control_gaps", path);

    const json& teams = j.at("team_breakdown");
    if (!teams.is_object()) {
        throw SchemaError("expected an object", path + ".team_breakdown");
    }
    for (const auto& [team, histogram] : teams.items()) {
        const std::string team_path = path + ".team_breakdown." + team;
        if (!histogram.is_object()) {
            throw SchemaError("expected an object of integers", team_path);
        }
        auto& out = report.team_breakdown[team];
        for (const auto& [swc, count] : histogram.items()) {
            if (!count.is_number_integer()) {
                throw SchemaError("expected an integer", team_path + "." + swc);
            }
            out[swc] = count.get<long>();
        }
    }

    report.priority_ranking = get_string_list(j, "priority_ranking", path);

    const json& tables = j.at("id_tables");
    const std::string tables_path = path + ".id_tables";
    check_keys(tables, tables_path,
               {"assets", "threat_actors", "security_controls", "swc_registry", "scsvs"});
    report.id_tables.assets = parse_rows(tables, "assets", tables_path);
    report.id_tables.threat_actors = parse_rows(tables, "threat_actors", tables_path);
    report.id_tables.security_controls = parse_rows(tables, "security_controls", tables_path);
    report.id_tables.swc_registry = parse_rows(tables, "swc_registry", tables_path);
    report.id_tables.scsvs = parse_rows(tables, "scsvs", tables_path);

    const json& triage = j.at("triage");
    const std::string triage_path = path + ".triage";
    check_keys(triage, triage_path, {"total", "valid", "invalid", "duplicate", "quarantined"});
    report.triage.total = get_long(triage, "total", triage_path);
    report.triage.valid = get_long(triage, "valid", triage_path);
    report.triage.invalid = get_long(triage, "invalid", triage_path);
    report.triage.duplicate = get_long(triage, "duplicate", triage_path);
    report.triage.quarantined = get_long(triage, "quarantined", triage_path);

    const json& actors = j.at("actor_observations");
    const std::string actors_path = path + ".actor_observations";
    check_keys(actors, actors_path, {"findings_on_targets", "findings_elsewhere"});
    report.actor_observations.findings_on_targets =
        get_count_map(actors, "findings_on_targets", actors_path);
    report.actor_observations.findings_elsewhere =
        get_long(actors, "findings_elsewhere", actors_path);

    const json& quarantine = j.at("quarantine");
    if (!quarantine.is_array()) {
        throw SchemaError("expected an array", path + ".quarantine");
    }
    std::size_t qi = 0;
    for (const auto& item : quarantine) {
        const std::string q_path = path + ".quarantine[" + std::to_string(qi++) + "]";
        check_keys(item, q_path, {"finding_id", "reasons"});
        report.quarantine.push_back({get_string(item, "finding_id", q_path),
                                     get_string_list(item, "reasons", q_path)});
    }

    report.catalog_version = get_string(j, "catalog_version", path);
    return report;
}

TrendReport parse_trend(const std::string& raw) {
    const json j = parse_document(raw);
    const std::string path = "$";
    check_keys(j, path,
               {"period_labels", "findings_per_period", "precision_series", "recall_series",
                "chronic_k", "chronic_issues", "catalog_version"});

    TrendReport trend;
    trend.period_labels = get_string_list(j, "period_labels", path);

    const json& counts = j.at("findings_per_period");
    if (!counts.is_array()) {
        throw SchemaError("expected an array of integers", path + ".findings_per_period");
    }
    for (const auto& v : counts) {
        if (!v.is_number_integer()) {
            throw SchemaError("expected an array of integers", path + ".findings_per_period");
        }
        trend.findings_per_period.push_back(v.get<long>());
    }

    auto number_series = [&](const char* key) {
        const json& arr = j.at(key);
        if (!arr.is_array()) {
            throw SchemaError("expected an array of numbers", path + "." + key);
        }
        std::vector<double> out;
        for (const auto& v : arr) {
            if (!v.is_number()) {
                throw SchemaError("expected an array of numbers", path + "." + key);
            }
            out.push_back(v.get<double>());
        }
        return out;
    };
    trend.precision_series = number_series("precision_series");
    trend.recall_series = number_series("recall_series");
    trend.chronic_k = get_long(j, "chronic_k", path);

    const json& issues = j.at("chronic_issues");
    if (!issues.is_array()) {
        throw SchemaError("expected an array", path + ".chronic_issues");
    }
    std::size_t ci = 0;
    for (const auto& item : issues) {
        const std::string c_path = path + ".chronic_issues[" + std::to_string(ci++) + "]";
        check_keys(item, c_path, {"swc_id", "streak_length", "periods"});
        ChronicIssue issue;
        issue.swc_id = get_string(item, "swc_id", c_path);
        issue.streak_length = get_long(item, "streak_length", c_path);
        issue.periods = get_string_list(item, "periods", c_path);
        trend.chronic_issues.push_back(std::move(issue));
    }

    trend.catalog_version = get_string(j, "catalog_version", path);
    return trend;
}

std::string render_markdown(const PeriodReport& report, const RenderOptions& options,
                            const TrendReport* trend) {
    std::ostringstream os;
    os << "# Threat model feedback report: " << report.period.label << "\n\n";
    os << "Period " << report.period.start.iso() << " to " << report.period.end.iso()
       << " (exclusive), " << to_string(report.period.scheme) << " scheme. Catalog "
       << report.catalog_version << ".\n\n";

    os << "Triage: " << report.triage.total << " submissions, " << report.triage.valid
       << " valid, " << report.triage.invalid << " invalid, " << report.triage.duplicate
       << " duplicate, " << report.triage.quarantined << " quarantined.\n\n";

    if (options.id_tables) {
        md_id_table(os, "Assets", report.id_tables.assets);
        md_id_table(os, "Threat Actors", report.id_tables.threat_actors);
        md_id_table(os, "Security Controls", report.id_tables.security_controls);
        md_id_table(os, "SWC Registry", report.id_tables.swc_registry);
        md_id_table(os, "SCSVS", report.id_tables.scsvs);
    }

    os << "## Priority ranking\n\n";
    os << "| Rank | Subject | Findings | Score |\n";
    os << "| --- | --- | --- | --- |\n";
    for (std::size_t i = 0; i < report.priority_ranking.size(); ++i) {
        const std::string& subject = report.priority_ranking[i];
        const auto count = report.asset_counts.find(subject);
        const auto score = report.asset_scores.find(subject);
        os << "| " << i + 1 << " | " << md_escape(subject) << " | "
           << (count != report.asset_counts.end() ? count->second : 0) << " | "
           << fmt_num(score != report.asset_scores.end() ? score->second : 0.0) << " |\n";
    }
    os << "\n";

    const AccuracyStats& a = report.model_accuracy;
    os << "## Model accuracy\n\n";
    os << "- Predicted threats: " << a.predicted << "\n";
    os << "- Confirmed by findings: " << a.confirmed_by_findings << "\n";
    os << "- Uncovered finding pairs: " << a.uncovered_findings << "\n";
    os << "- Precision: " << fmt_num(a.precision) << "\n";
    os << "- Recall: " << fmt_num(a.recall) << "\n";
    os << "- Overlooked subjects: ";
    if (a.overlooked_subjects.empty()) {
        os << "none";
    } else {
        for (std::size_t i = 0; i < a.overlooked_subjects.size(); ++i) {
            if (i > 0) os << ", ";
            os << md_escape(a.overlooked_subjects[i]);
        }
    }
    os << "\n\n";

    os << "## Control gaps\n\n";
    os << "| Control | Findings it should have stopped |\n";
    os << "| --- | --- |\n";
    for (const auto& [control, count] : report.control_gaps) {
        os << "| " << md_escape(control) << " | " << count << " |\n";
    }
    os << "\n";

    os << "## Chronic issues\n\n";
    if (trend == nullptr) {
        os << "n/a for a single period; produce a trend report over two or more periods.\n\n";
    } else if (trend->chronic_issues.empty()) {
        os << "None at k=" << trend->chronic_k << ".\n\n";
    } else {
        os << "| SWC ID | Streak | Periods |\n";
        os << "| --- | --- | --- |\n";
        for (const ChronicIssue& c : trend->chronic_issues) {
            os << "| " << md_escape(c.swc_id) << " | " << c.streak_length << " | ";
            for (std::size_t i = 0; i < c.periods.size(); ++i) {
                if (i > 0) os << ", ";
                os << md_escape(c.periods[i]);
            }
            os << " |\n";
        }
        os << "\n";
    }

    os << "## Team breakdown\n\n";
    os << "| Team | SWC ID | Count |\n";
    os << "| --- | --- | --- |\n";
    for (const auto& [team, histogram] : report.team_breakdown) {
        if (histogram.empty()) {
            os << "| " << md_escape(team) << " | (no SWC tags) | 0 |\n";
            continue;
        }
        for (const auto& [swc, count] : histogram) {
            os << "| " << md_escape(team) << " | " << md_escape(swc) << " | " << count << " |\n";
        }
    }
    os << "\n";

    if (options.include_quarantine) {
        os << "## Quarantined findings\n\n";
        if (report.quarantine.empty()) {
            os << "None.\n";
        } else {
            for (const QuarantineRecord& q : report.quarantine) {
                os << "- " << md_escape(q.finding_id) << ": ";
                for (std::size_t i = 0; i < q.reasons.size(); ++i) {
                    if (i > 0) os << "; ";
                    os << md_escape(q.reasons[i]);
                }
                os << "\n";
            }
        }
        os << "\n";
    }

    return os.str();
}

std::string render_dot(const ThreatModel& model, const PeriodReport& report,
                       const RenderOptions& options) {
    (void)options;
    if (has_errors(validate_model(model))) {
        throw InvalidModel("cannot render an invalid model");
    }

    double max_score = 0.0;
    for (const auto& [_, score] : report.asset_scores) {
        max_score = std::max(max_score, score);
    }

    std::ostringstream os;
    os << "// " << (model.name.empty() ? std::string("data flow diagram") : model.name)
       << ", findings from " << (report.period.label.empty() ? "(no period)"
                                                             : report.period.label)
       << "\n";
    os << "digraph mbfm {\n";
    if (model.elements.empty() && model.flows.empty()) {
        os << "}\n";
        return os.str();
    }
    os << "  rankdir=LR;\n";
    os << "  node [fontname=\"Helvetica\"];\n";
    os << "  edge [fontname=\"Helvetica\"];\n";

    auto node_line = [&](const Element& e, const std::string& indent) {
        const FindingMark m = mark_for(report, e.id);
        std::string label = dot_escape(e.name) + "\\n(" + dot_escape(e.id) + ")";
        os << indent << "\"" << dot_escape(e.id) << "\" [shape=" << kind_shape(e.kind);
        if (m.present) {
            label += "\\n" + annotation(m);
            os << ", color=\"" << score_color(m.score, max_score) << "\", penwidth=2.0";
        }
        os << ", label=\"" << label << "\"];\n";
    };

    std::vector<const TrustBoundary*> boundaries;
    for (const TrustBoundary& b : model.boundaries) boundaries.push_back(&b);
    std::sort(boundaries.begin(), boundaries.end(),
              [](const TrustBoundary* a, const TrustBoundary* b) { return id_less(a->id, b->id); });

    std::vector<const Element*> elements;
    for (const Element& e : model.elements) elements.push_back(&e);
    std::sort(elements.begin(), elements.end(),
              [](const Element* a, const Element* b) { return id_less(a->id, b->id); });

    // Each element is drawn inside the first boundary (by ID) that lists it;
    // DOT clusters cannot share nodes.
    auto owner = [&](const std::string& id) -> const TrustBoundary* {
        for (const TrustBoundary* b : boundaries) {
            if (std::find(b->members.begin(), b->members.end(), id) != b->members.end()) {
                return b;
            }
        }
        return nullptr;
    };

    for (const TrustBoundary* b : boundaries) {
        os << "  subgraph cluster_" << b->id << " {\n";
        os << "    label=\"" << dot_escape(b->name) << " (" << dot_escape(b->id) << ")\";\n";
        os << "    style=dashed;\n";
        for (const Element* e : elements) {
            if (owner(e->id) == b) {
                node_line(*e, "    ");
            }
        }
        os << "  }\n";
    }
    for (const Element* e : elements) {
        if (owner(e->id) == nullptr) {
            node_line(*e, "  ");
        }
    }

    std::vector<const DataFlow*> flows;
    for (const DataFlow& f : model.flows) flows.push_back(&f);
    std::sort(flows.begin(), flows.end(),
              [](const DataFlow* a, const DataFlow* b) { return id_less(a->id, b->id); });
    for (const DataFlow* f : flows) {
        const FindingMark m = mark_for(report, f->id);
        std::string label = dot_escape(f->label);
        if (!label.empty()) label += "\\n";
        label += "(" + dot_escape(f->id) + ")";
        os << "  \"" << dot_escape(f->source) << "\" -> \"" << dot_escape(f->target) << "\"";
        os << " [label=\"" << label;
        if (m.present) {
            os << "\\n" << annotation(m);
        }
        os << "\"";
        if (m.present) {
            os << ", color=\"" << score_color(m.score, max_score) << "\", penwidth=2.0";
        }
        os << "];\n";
    }

    // Report subjects absent from the model still have to show up somewhere.
    for (const auto& [subject, _] : report.asset_counts) {
        if (!model.has_subject(subject)) {
            const FindingMark m = mark_for(report, subject);
            os << "  \"" << dot_escape(subject) << "\" [shape=plaintext, label=\""
               << dot_escape(subject) << "\\n" << annotation(m) << "\"];\n";
        }
    }

    os << "}\n";
    return os.str();
}

} // namespace mbfm
