#include "mbfm/cli.hpp"

#include "mbfm/errors.hpp"
#include "mbfm/linking.hpp"
#include "mbfm/metrics.hpp"
#include "mbfm/model_io.hpp"
#include "mbfm/report_io.hpp"
#include "mbfm/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace mbfm::cli {

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot open '" << path << "' for reading\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        err << "error: failed while reading '" << path << "'\n";
        return std::nullopt;
    }
    return buf.str();
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    out << content;
    out.flush();
    if (!out) {
        err << "error: failed while writing '" << path << "'\n";
        return false;
    }
    return true;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& err) {
    for (const Diagnostic& d : diagnostics) {
        err << to_string(d.severity) << ' ' << d.rule << ' '
            << (d.subject_id.empty() ? "-" : d.subject_id) << ' ' << d.message << '\n';
    }
}

// Shared load-parse-validate step. Returns kOk and fills `model` on
// success; otherwise prints and returns the exit code.
int load_model(const std::string& path, std::ostream& err, ThreatModel& model,
               std::vector<Diagnostic>* diagnostics_out = nullptr) {
    const auto raw = read_file(path, err);
    if (!raw) return kIoOrParse;
    try {
        model = parse_model(*raw);
    } catch (const Error& e) {
        err << "error: " << path << ": " << e.what() << '\n';
        return kIoOrParse;
    }
    std::vector<Diagnostic> diagnostics = validate_model(model);
    print_diagnostics(diagnostics, err);
    const bool bad = has_errors(diagnostics);
    if (diagnostics_out) *diagnostics_out = std::move(diagnostics);
    return bad ? kValidationErrors : kOk;
}

int cmd_validate(const std::string& model_path, bool strict, std::ostream& err) {
    std::vector<Diagnostic> diagnostics;
    ThreatModel model;
    const int rc = load_model(model_path, err, model, &diagnostics);
    if (rc != kOk) return rc;
    if (strict && !diagnostics.empty()) return kValidationErrors;
    return kOk;
}

int cmd_enumerate(const std::string& model_path, const std::string& out_path,
                  std::ostream& err) {
    ThreatModel model;
    const int rc = load_model(model_path, err, model);
    if (rc != kOk) return rc;

    nlohmann::json arr = nlohmann::json::array();
    for (const Threat& t : enumerate_threats(model)) {
        arr.push_back(nlohmann::json{{"threat_id", t.threat_id},
                                     {"subject", t.subject},
                                     {"category", std::string(to_string(t.category))},
                                     {"description", t.description},
                                     {"status", std::string(to_string(t.status))}});
    }
    if (!write_file(out_path, arr.dump(2) + "\n", err)) return kIoOrParse;
    return kOk;
}

int cmd_analyze(const std::string& model_path, const std::string& findings_path,
                const std::string& scheme_name, const std::string& anchor_text,
                const std::string& out_dir, std::ostream& err) {
    Date anchor;
    try {
        anchor = Date::parse(anchor_text);
    } catch (const Error& e) {
        err << "error: --anchor: " << e.what() << '\n';
        return kBadArguments;
    }
    const PeriodScheme scheme = scheme_name == "quarterly" ? PeriodScheme::Quarterly
                                                           : PeriodScheme::SemiAnnual;

    ThreatModel model;
    const int rc = load_model(model_path, err, model);
    if (rc != kOk) return rc;
    model.threats = enumerate_threats(model);

    const auto raw = read_file(findings_path, err);
    if (!raw) return kIoOrParse;
    std::vector<Finding> findings;
    try {
        const bool csv = std::filesystem::path(findings_path).extension() == ".csv";
        findings = csv ? parse_findings_csv(*raw) : parse_findings_jsonl(*raw);
    } catch (const Error& e) {
        err << "error: " << findings_path << ": " << e.what() << '\n';
        return kIoOrParse;
    }

    std::vector<std::pair<Period, std::vector<Finding>>> buckets;
    try {
        buckets = assign_periods(findings, scheme, anchor);
    } catch (const EmptyInput& e) {
        err << "error: " << findings_path << ": " << e.what() << '\n';
        return kValidationErrors;
    } catch (const ConfigError& e) {
        err << "error: --anchor: " << e.what() << '\n';
        return kBadArguments;
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        err << "error: cannot create directory '" << out_dir << "': " << ec.message() << '\n';
        return kIoOrParse;
    }

    const TaxonomyCatalog& catalog = bundled_catalog();
    std::vector<PeriodReport> reports;
    for (const auto& [period, period_findings] : buckets) {
        const LinkedSet linked = link_findings(model, catalog, period_findings);
        for (const QuarantinedFinding& q : linked.quarantined) {
            print_diagnostics(q.diagnostics, err);
        }
        reports.push_back(build_period_report(model, catalog, period, linked));
        const auto path = std::filesystem::path(out_dir) / ("report-" + period.label + ".json");
        if (!write_file(path.string(), render_json(reports.back()), err)) return kIoOrParse;
    }

    const auto trend_path = std::filesystem::path(out_dir) / "trend.json";
    if (!write_file(trend_path.string(), render_json(build_trend_report(reports)), err)) {
        return kIoOrParse;
    }
    return kOk;
}

int cmd_render(const std::string& report_path, const std::string& model_path,
               const std::string& format_name, const std::string& out_path,
               std::ostream& err) {
    const RenderFormat format = *render_format_from_string(format_name);
    if (format == RenderFormat::Dot && model_path.empty()) {
        err << "error: --format dot requires --model\n";
        return kBadArguments;
    }

    const auto raw = read_file(report_path, err);
    if (!raw) return kIoOrParse;
    PeriodReport report;
    try {
        report = parse_report(*raw);
    } catch (const Error& e) {
        err << "error: " << report_path << ": " << e.what() << '\n';
        return kIoOrParse;
    }

    std::string rendered;
    switch (format) {
    case RenderFormat::Json:
        rendered = render_json(report);
        break;
    case RenderFormat::Markdown:
        rendered = render_markdown(report);
        break;
    case RenderFormat::Dot: {
        ThreatModel model;
        const int rc = load_model(model_path, err, model);
        if (rc != kOk) return rc;
        rendered = render_dot(model, report);
        break;
    }
    }
    if (!write_file(out_path, rendered, err)) return kIoOrParse;
    return kOk;
}

int cmd_simulate(const std::string& model_path, double rate, long days, std::uint64_t seed,
                 const std::string& out_path, std::ostream& err) {
    ThreatModel model;
    const int rc = load_model(model_path, err, model);
    if (rc != kOk) return rc;

    SimConfig config;
    config.daily_rate = rate;
    config.duration_days = days;
    config.seed = seed;

    std::vector<Finding> findings;
    try {
        findings = simulate(config, model);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }
    if (!write_file(out_path, serialize_findings_jsonl(findings), err)) return kIoOrParse;
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"STRIDE threat-model maintenance driven by bug-bounty feedback"};
    app.require_subcommand(1);

    std::string model_path;
    std::string findings_path;
    std::string report_path;
    std::string out_path;
    std::string scheme_name;
    std::string anchor_text;
    std::string format_name;
    bool strict = false;
    double rate = 0.429;
    long days = 365;
    std::uint64_t seed = 0;

    CLI::App* validate = app.add_subcommand("validate", "Check a threat model file");
    validate->add_option("--model", model_path, "Threat model JSON")->required();
    validate->add_flag("--strict", strict, "Treat warnings as errors");

    CLI::App* enumerate = app.add_subcommand("enumerate", "Derive the STRIDE threat list");
    enumerate->add_option("--model", model_path, "Threat model JSON")->required();
    enumerate->add_option("--out", out_path, "Output path for the threats JSON")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "Compute per-period feedback metrics");
    analyze->add_option("--model", model_path, "Threat model JSON")->required();
    analyze->add_option("--findings", findings_path, "Findings file (.jsonl or .csv)")
        ->required();
    analyze->add_option("--scheme", scheme_name, "Period length")
        ->required()
        ->check(CLI::IsMember({"quarterly", "semiannual"}));
    analyze->add_option("--anchor", anchor_text, "Period grid anchor (YYYY-MM-DD, day 01)")
        ->required();
    analyze->add_option("--out", out_path, "Output directory for report JSON files")
        ->required();

    CLI::App* render = app.add_subcommand("render", "Render a period report");
    render->add_option("--report", report_path, "Period report JSON")->required();
    render->add_option("--model", model_path, "Threat model JSON (required for dot)");
    render->add_option("--format", format_name, "Output format")
        ->required()
        ->check(CLI::IsMember({"json", "md", "dot"}));
    render->add_option("--out", out_path, "Output path")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic findings stream");
    simulate->add_option("--model", model_path, "Threat model JSON")->required();
    simulate->add_option("--rate", rate, "Mean valid reports per day");
    simulate->add_option("--days", days, "Days to simulate");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--out", out_path, "Output path for findings JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadArguments;
    }

    if (validate->parsed()) return cmd_validate(model_path, strict, err);
    if (enumerate->parsed()) return cmd_enumerate(model_path, out_path, err);
    if (analyze->parsed()) {
        return cmd_analyze(model_path, findings_path, scheme_name, anchor_text, out_path, err);
    }
    if (render->parsed()) {
        return cmd_render(report_path, model_path, format_name, out_path, err);
    }
    if (simulate->parsed()) {
        return cmd_simulate(model_path, rate, days, seed, out_path, err);
    }
    err << "error: no subcommand given\n";
    return kBadArguments;
}

} // namespace mbfm::cli
