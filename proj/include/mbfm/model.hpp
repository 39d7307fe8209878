#pragma once

#include "mbfm/stride.hpp"

#include <set>
#include <string>
#include <vector>

namespace mbfm {

// DFD node. IDs follow the A## scheme (zero-padded, two digits minimum).
struct Element {
    std::string id;
    std::string name;
    ElementKind kind = ElementKind::Process;
    std::string description;

    bool operator==(const Element&) const = default;
};

// Directed flow between two elements (F##). Self-flows are legal.
struct DataFlow {
    std::string id;
    std::string source;
    std::string target;
    std::string label;
    std::vector<std::string> crosses; // boundary IDs

    bool operator==(const DataFlow&) const = default;
};

struct TrustBoundary {
    std::string id; // B##
    std::string name;
    std::vector<std::string> members; // element IDs, non-empty, no repeats

    bool operator==(const TrustBoundary&) const = default;
};

struct ThreatActor {
    std::string id; // TA##
    std::string name;
    std::vector<std::string> capabilities;
    std::vector<std::string> targets; // element or flow IDs

    bool operator==(const ThreatActor&) const = default;
};

struct SecurityControl {
    std::string id; // C##
    std::string name;
    std::vector<std::string> protects; // element or flow IDs, non-empty
    std::set<StrideCategory> mitigates; // non-empty

    bool operator==(const SecurityControl&) const = default;
};

enum class ThreatStatus : std::uint8_t {
    Predicted, // derived by enumeration, regenerated every run
    Confirmed, // matched by a real finding; terminal
    Retired,   // judged not applicable; terminal
};

std::string_view to_string(ThreatStatus s);
std::optional<ThreatStatus> threat_status_from_string(std::string_view name);

struct Threat {
    std::string threat_id; // T##
    std::string subject;   // element or flow ID
    StrideCategory category = StrideCategory::Spoofing;
    std::string description;
    ThreatStatus status = ThreatStatus::Predicted;

    bool operator==(const Threat&) const = default;
};

// The DFD-as-data. Immutable by convention after construction; all
// operations on it are pure functions.
struct ThreatModel {
    std::string model_id;
    std::string name;
    std::string version;
    std::vector<Element> elements;
    std::vector<DataFlow> flows;
    std::vector<TrustBoundary> boundaries;
    std::vector<ThreatActor> actors;
    std::vector<SecurityControl> controls;
    std::vector<Threat> threats;

    bool operator==(const ThreatModel&) const = default;

    const Element* find_element(const std::string& id) const;
    const DataFlow* find_flow(const std::string& id) const;

    // True when `id` names an element or a flow.
    bool has_subject(const std::string& id) const;
};

enum class DiagnosticSeverity : std::uint8_t { Error, Warning };

std::string_view to_string(DiagnosticSeverity s);

// One validation result. Rule codes are stable kebab-case identifiers
// (dup-id, id-format, dangling-ref, orphan-element, ...).
struct Diagnostic {
    DiagnosticSeverity severity = DiagnosticSeverity::Error;
    std::string rule;
    std::string subject_id;
    std::string message;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Checks every ThreatModel invariant. Diagnostics are the output; nothing
// is thrown. Unconnected elements are warnings (partial models must load).
std::vector<Diagnostic> validate_model(const ThreatModel& model);

// Orders IDs by (alpha prefix, numeric suffix): A02 < A10 < A100 < F01.
// Falls back to plain string order for non-conforming IDs.
bool id_less(const std::string& a, const std::string& b);

// STRIDE threat enumeration over all subjects (elements and flows).
// Output is ordered by (subject ID, chart category order); Predicted threat
// IDs are assigned sequentially T01, T02, ... on every call. Supplied
// Confirmed/Retired threats are preserved verbatim and suppress the
// Predicted threat for their (subject, category) pair; supplied Predicted
// threats are dropped and regenerated.
// Throws InvalidModel when validate_model reports errors.
std::vector<Threat> enumerate_threats(const ThreatModel& model,
                                      const ApplicabilityTable& table = default_applicability());

// Upper bound on enumerate_threats output: |elements|*6 + |flows|*3.
long threat_count_bound(const ThreatModel& model);

} // namespace mbfm
