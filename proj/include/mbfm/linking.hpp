#pragma once

#include "mbfm/findings.hpp"
#include "mbfm/model.hpp"
#include "mbfm/taxonomy.hpp"

#include <string>
#include <vector>

namespace mbfm {

// One Valid finding with every tag and subject resolved. Pure overlay: the
// finding itself is never altered.
struct LinkedFinding {
    Finding finding;
    std::vector<SwcEntry> swc_entries;   // one per swc_tag, tag order
    std::vector<ScsvsItem> scsvs_items;  // one per scsvs_tag, tag order
    // STRIDE category per SWC tag, via the catalog crosswalk, tag order.
    std::vector<std::pair<std::string, StrideCategory>> stride_by_tag;
};

// A Valid finding that failed resolution, kept with its reasons.
struct QuarantinedFinding {
    Finding finding;
    std::vector<Diagnostic> diagnostics; // rules: unknown-tag, unknown-subject, untagged-valid
};

// Output of link_findings. Every Valid input finding lands in exactly one
// of {linked, quarantined}; Invalid/Duplicate findings land in excluded.
struct LinkedSet {
    std::vector<LinkedFinding> linked;
    std::vector<QuarantinedFinding> quarantined;
    std::vector<Finding> excluded; // Invalid + Duplicate, for triage counts
};

// Resolves every Valid finding's tags against the catalog and subjects
// against the model. Failures quarantine the finding with diagnostics;
// nothing is dropped silently and nothing is thrown.
// Pre: model passes validate_model with no errors.
LinkedSet link_findings(const ThreatModel& model, const TaxonomyCatalog& catalog,
                        const std::vector<Finding>& findings);

} // namespace mbfm
