#include "mbfm/linking.hpp"

#include "mbfm/errors.hpp"

namespace mbfm {

LinkedSet link_findings(const ThreatModel& model, const TaxonomyCatalog& catalog,
                        const std::vector<Finding>& findings) {
    LinkedSet out;
    for (const Finding& f : findings) {
        if (f.validity != Validity::Valid) {
            out.excluded.push_back(f);
            continue;
        }

        LinkedFinding linked{f, {}, {}, {}};
        std::vector<Diagnostic> problems;

        if (f.swc_tags.empty() && f.scsvs_tags.empty()) {
            problems.push_back({DiagnosticSeverity::Error, "untagged-valid", f.finding_id,
                                "valid finding carries no SWC or SCSVS tag"});
        }
        for (const std::string& tag : f.swc_tags) {
            try {
                auto entry = resolve_tag(catalog, tag);
                if (auto* swc = std::get_if<SwcEntry>(&entry)) {
                    linked.swc_entries.push_back(*swc);
                    linked.stride_by_tag.emplace_back(swc->swc_id,
                                                      stride_of(catalog, swc->swc_id));
                } else {
                    problems.push_back({DiagnosticSeverity::Error, "unknown-tag", f.finding_id,
                                        "'" + tag + "' is an SCSVS id but was given as an SWC tag"});
                }
            } catch (const UnknownTag& e) {
                problems.push_back(
                    {DiagnosticSeverity::Error, "unknown-tag", f.finding_id, e.what()});
            }
        }
        for (const std::string& tag : f.scsvs_tags) {
            try {
                auto entry = resolve_tag(catalog, tag);
                if (auto* item = std::get_if<ScsvsItem>(&entry)) {
                    linked.scsvs_items.push_back(*item);
                } else {
                    problems.push_back({DiagnosticSeverity::Error, "unknown-tag", f.finding_id,
                                        "'" + tag + "' is an SWC id but was given as an SCSVS tag"});
                }
            } catch (const UnknownTag& e) {
                problems.push_back(
                    {DiagnosticSeverity::Error, "unknown-tag", f.finding_id, e.what()});
            }
        }
        for (const std::string& subject : f.linked_subjects) {
            if (!model.has_subject(subject)) {
                problems.push_back({DiagnosticSeverity::Error, "unknown-subject", f.finding_id,
                                    "subject '" + subject + "' is not an element or flow"});
            }
        }

        if (problems.empty()) {
            out.linked.push_back(std::move(linked));
        } else {
            out.quarantined.push_back({f, std::move(problems)});
        }
    }
    return out;
}

} // namespace mbfm
