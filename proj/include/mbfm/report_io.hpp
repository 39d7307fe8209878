#pragma once

#include "mbfm/metrics.hpp"
#include "mbfm/model.hpp"

#include <string>

namespace mbfm {

enum class RenderFormat : std::uint8_t { Json, Markdown, Dot };

std::string_view to_string(RenderFormat f);
std::optional<RenderFormat> render_format_from_string(std::string_view name);

struct RenderOptions {
    RenderFormat format = RenderFormat::Json;
    bool include_quarantine = false;
    bool id_tables = true; // emit the five ID tables in Markdown
};

// Canonical JSON: keys sorted, two-space indent, trailing newline.
// Byte-identical across runs for equal inputs.
std::string render_json(const PeriodReport& report);
std::string render_json(const TrendReport& report);

// Strict inverses of render_json. Unknown or missing fields raise
// SchemaError; malformed JSON raises SyntaxError.
PeriodReport parse_report(const std::string& raw);
TrendReport parse_trend(const std::string& raw);

// Human-readable handoff artifact. Sections in order: period header, the
// five ID tables (when options.id_tables), priority ranking, accuracy
// stats, chronic issues, team breakdown. Quarantined findings are appended
// when options.include_quarantine. Chronic issues need cross-period data,
// so pass the trend when one exists; without it the section reads n/a.
std::string render_markdown(const PeriodReport& report, const RenderOptions& options = {},
                            const TrendReport* trend = nullptr);

// Annotated DFD in Graphviz DOT. Elements become nodes (ExternalEntity=box,
// Process=ellipse, DataStore=cylinder), flows become edges, boundaries
// become dashed clusters. Subjects with findings get a label suffix
// `[n findings | score s]` and a score-scaled outline color. Emission order
// is sorted by ID throughout. Throws InvalidModel when validation fails.
std::string render_dot(const ThreatModel& model, const PeriodReport& report,
                       const RenderOptions& options = {});

} // namespace mbfm
