#include "mbfm/metrics.hpp"

#include "mbfm/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>

namespace mbfm {

double SeverityWeights::of(Severity s) const {
    switch (s) {
    case Severity::Critical: return critical;
    case Severity::High: return high;
    case Severity::Medium: return medium;
    case Severity::Low: return low;
    }
    return low;
}

namespace {

// Distinct subjects of one linked finding, input order preserved.
std::vector<std::string> distinct_subjects(const LinkedFinding& lf) {
    std::vector<std::string> out;
    for (const std::string& s : lf.finding.linked_subjects) {
        if (std::find(out.begin(), out.end(), s) == out.end()) {
            out.push_back(s);
        }
    }
    return out;
}

std::set<StrideCategory> distinct_categories(const LinkedFinding& lf) {
    std::set<StrideCategory> out;
    for (const auto& [_, cat] : lf.stride_by_tag) {
        out.insert(cat);
    }
    return out;
}

} // namespace

std::pair<std::map<std::string, long>, std::map<std::string, double>>
asset_metrics(const LinkedSet& linked, const SeverityWeights& weights) {
    if (!weights.valid()) {
        throw ConfigError("severity weights must be defined and > 0 for all four levels");
    }
    std::map<std::string, long> counts;
    std::map<std::string, double> scores;
    for (const LinkedFinding& lf : linked.linked) {
        for (const std::string& subject : distinct_subjects(lf)) {
            counts[subject] += 1;
            scores[subject] += weights.of(lf.finding.severity);
        }
    }
    return {std::move(counts), std::move(scores)};
}

std::pair<std::map<std::string, long>, std::map<int, long>>
category_frequencies(const LinkedSet& linked) {
    std::map<std::string, long> swc;
    std::map<int, long> scsvs_sections;
    for (const LinkedFinding& lf : linked.linked) {
        // tag instances, not distinct tags: two identical tags count twice
        for (const SwcEntry& entry : lf.swc_entries) {
            swc[entry.swc_id] += 1;
        }
        for (const ScsvsItem& item : lf.scsvs_items) {
            scsvs_sections[item.section_number] += 1;
        }
    }
    return {std::move(swc), std::move(scsvs_sections)};
}

AccuracyStats model_accuracy(const ThreatModel& model, const LinkedSet& linked) {
    AccuracyStats stats;

    std::set<std::pair<std::string, StrideCategory>> predicted_pairs;
    std::set<std::string> threatened_subjects; // subjects named by any threat
    for (const Threat& t : model.threats) {
        threatened_subjects.insert(t.subject);
        if (t.status == ThreatStatus::Predicted) {
            stats.predicted += 1;
            predicted_pairs.emplace(t.subject, t.category);
        }
    }

    std::set<std::pair<std::string, StrideCategory>> finding_pairs;
    std::set<std::string> observed_subjects;
    for (const LinkedFinding& lf : linked.linked) {
        const auto categories = distinct_categories(lf);
        for (const std::string& subject : distinct_subjects(lf)) {
            observed_subjects.insert(subject);
            for (StrideCategory c : categories) {
                finding_pairs.emplace(subject, c);
            }
        }
    }

    long matched = 0;
    for (const auto& pair : finding_pairs) {
        if (predicted_pairs.count(pair) > 0) {
            matched += 1;
        } else {
            stats.uncovered_findings += 1;
        }
    }
    for (const Threat& t : model.threats) {
        if (t.status == ThreatStatus::Predicted &&
            finding_pairs.count({t.subject, t.category}) > 0) {
            stats.confirmed_by_findings += 1;
        }
    }

    stats.precision = stats.predicted == 0
                          ? 0.0
                          : static_cast<double>(stats.confirmed_by_findings) /
                                static_cast<double>(stats.predicted);
    stats.recall = finding_pairs.empty()
                       ? 1.0
                       : static_cast<double>(matched) / static_cast<double>(finding_pairs.size());

    for (const std::string& subject : observed_subjects) {
        if (threatened_subjects.count(subject) == 0) {
            stats.overlooked_subjects.push_back(subject);
        }
    }
    std::sort(stats.overlooked_subjects.begin(), stats.overlooked_subjects.end(), id_less);
    return stats;
}

std::map<std::string, long> control_gaps(const ThreatModel& model, const LinkedSet& linked) {
    std::map<std::string, long> gaps;
    for (const SecurityControl& control : model.controls) {
        long count = 0;
        for (const LinkedFinding& lf : linked.linked) {
            const auto categories = distinct_categories(lf);
            for (const std::string& subject : distinct_subjects(lf)) {
                if (std::find(control.protects.begin(), control.protects.end(), subject) ==
                    control.protects.end()) {
                    continue;
                }
                for (StrideCategory c : categories) {
                    if (control.mitigates.count(c) > 0) {
                        count += 1; // one gap per (finding, subject, category)
                    }
                }
            }
        }
        gaps[control.id] = count;
    }
    return gaps;
}

std::vector<ChronicIssue> chronic_issues(const std::vector<PeriodReport>& reports, long k) {
    if (k < 2) {
        throw ConfigError("chronic-issue threshold k must be >= 2");
    }
    std::vector<std::string> all_ids;
    for (const PeriodReport& r : reports) {
        for (const auto& [id, _] : r.category_freq_swc) {
            if (std::find(all_ids.begin(), all_ids.end(), id) == all_ids.end()) {
                all_ids.push_back(id);
            }
        }
    }
    std::sort(all_ids.begin(), all_ids.end(), id_less);

    std::vector<ChronicIssue> out;
    for (const std::string& id : all_ids) {
        std::vector<std::string> run;
        auto flush = [&] {
            if (static_cast<long>(run.size()) >= k) {
                out.push_back({id, static_cast<long>(run.size()), run});
            }
            run.clear();
        };
        for (const PeriodReport& r : reports) {
            const auto it = r.category_freq_swc.find(id);
            if (it != r.category_freq_swc.end() && it->second >= 1) {
                run.push_back(r.period.label);
            } else {
                flush();
            }
        }
        flush();
    }
    return out;
}

std::map<std::string, std::map<std::string, long>> team_breakdown(const LinkedSet& linked) {
    std::map<std::string, std::map<std::string, long>> out;
    for (const LinkedFinding& lf : linked.linked) {
        const std::string team = lf.finding.team.empty() ? "(unassigned)" : lf.finding.team;
        auto& histogram = out[team];
        for (const SwcEntry& entry : lf.swc_entries) {
            histogram[entry.swc_id] += 1;
        }
    }
    return out;
}

std::vector<std::string> prioritize(const std::map<std::string, long>& asset_counts,
                                    const std::map<std::string, double>& asset_scores) {
    std::vector<std::string> subjects;
    subjects.reserve(asset_scores.size());
    for (const auto& [subject, _] : asset_scores) {
        subjects.push_back(subject);
    }
    std::sort(subjects.begin(), subjects.end(),
              [&](const std::string& a, const std::string& b) {
                  const double sa = asset_scores.at(a);
                  const double sb = asset_scores.at(b);
                  if (sa != sb) return sa > sb;
                  const long ca = asset_counts.at(a);
                  const long cb = asset_counts.at(b);
                  if (ca != cb) return ca > cb;
                  return id_less(a, b);
              });
    return subjects;
}

namespace {

std::string table_id(const char* prefix, std::size_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%02zu", prefix, n);
    return buf;
}

IdTables build_id_tables(const ThreatModel& model, const LinkedSet& linked) {
    IdTables tables;

    std::vector<const Element*> elements;
    for (const Element& e : model.elements) elements.push_back(&e);
    std::sort(elements.begin(), elements.end(),
              [](const Element* a, const Element* b) { return id_less(a->id, b->id); });
    for (const Element* e : elements) tables.assets.push_back({e->id, e->name});

    std::vector<const ThreatActor*> actors;
    for (const ThreatActor& a : model.actors) actors.push_back(&a);
    std::sort(actors.begin(), actors.end(),
              [](const ThreatActor* a, const ThreatActor* b) { return id_less(a->id, b->id); });
    for (const ThreatActor* a : actors) tables.threat_actors.push_back({a->id, a->name});

    std::vector<const SecurityControl*> controls;
    for (const SecurityControl& c : model.controls) controls.push_back(&c);
    std::sort(controls.begin(), controls.end(), [](const SecurityControl* a,
                                                   const SecurityControl* b) {
        return id_less(a->id, b->id);
    });
    for (const SecurityControl* c : controls) tables.security_controls.push_back({c->id, c->name});

    // SW##/SC## rows are numbered in first-occurrence order over the
    // period's findings, mirroring how tags accumulate during triage.
    std::vector<std::string> swc_seen;
    std::vector<std::string> scsvs_seen;
    for (const LinkedFinding& lf : linked.linked) {
        for (const SwcEntry& entry : lf.swc_entries) {
            if (std::find(swc_seen.begin(), swc_seen.end(), entry.swc_id) == swc_seen.end()) {
                swc_seen.push_back(entry.swc_id);
            }
        }
        for (const ScsvsItem& item : lf.scsvs_items) {
            if (std::find(scsvs_seen.begin(), scsvs_seen.end(), item.scsvs_id) ==
                scsvs_seen.end()) {
                scsvs_seen.push_back(item.scsvs_id);
            }
        }
    }
    for (std::size_t i = 0; i < swc_seen.size(); ++i) {
        tables.swc_registry.push_back({table_id("SW", i + 1), swc_seen[i]});
    }
    for (std::size_t i = 0; i < scsvs_seen.size(); ++i) {
        tables.scsvs.push_back({table_id("SC", i + 1), scsvs_seen[i]});
    }
    return tables;
}

TriageCounts build_triage(const LinkedSet& linked) {
    TriageCounts t;
    t.quarantined = static_cast<long>(linked.quarantined.size());
    t.valid = static_cast<long>(linked.linked.size()) + t.quarantined;
    for (const Finding& f : linked.excluded) {
        if (f.validity == Validity::Invalid) t.invalid += 1;
        if (f.validity == Validity::Duplicate) t.duplicate += 1;
    }
    t.total = t.valid + t.invalid + t.duplicate;
    return t;
}

ActorObservations build_actor_observations(const ThreatModel& model, const LinkedSet& linked) {
    ActorObservations obs;
    for (const ThreatActor& a : model.actors) {
        obs.findings_on_targets[a.id] = 0;
    }
    for (const LinkedFinding& lf : linked.linked) {
        for (const std::string& subject : distinct_subjects(lf)) {
            bool targeted = false;
            for (const ThreatActor& a : model.actors) {
                if (std::find(a.targets.begin(), a.targets.end(), subject) != a.targets.end()) {
                    obs.findings_on_targets[a.id] += 1;
                    targeted = true;
                }
            }
            if (!targeted) {
                obs.findings_elsewhere += 1;
            }
        }
    }
    return obs;
}

} // namespace

PeriodReport build_period_report(const ThreatModel& model, const TaxonomyCatalog& catalog,
                                 const Period& period, const LinkedSet& linked,
                                 const SeverityWeights& weights) {
    PeriodReport report;
    report.period = period;
    std::tie(report.asset_counts, report.asset_scores) = asset_metrics(linked, weights);
    std::tie(report.category_freq_swc, report.category_freq_scsvs_section) =
        category_frequencies(linked);
    report.model_accuracy = model_accuracy(model, linked);
    report.control_gaps = control_gaps(model, linked);
    report.team_breakdown = team_breakdown(linked);
    report.priority_ranking = prioritize(report.asset_counts, report.asset_scores);
    report.id_tables = build_id_tables(model, linked);
    report.triage = build_triage(linked);
    report.actor_observations = build_actor_observations(model, linked);
    for (const QuarantinedFinding& q : linked.quarantined) {
        QuarantineRecord record{q.finding.finding_id, {}};
        for (const Diagnostic& d : q.diagnostics) {
            record.reasons.push_back(d.rule + ": " + d.message);
        }
        report.quarantine.push_back(std::move(record));
    }
    report.catalog_version = catalog.catalog_version;
    return report;
}

TrendReport build_trend_report(const std::vector<PeriodReport>& reports, long chronic_k) {
    TrendReport trend;
    trend.chronic_k = chronic_k;
    for (const PeriodReport& r : reports) {
        trend.period_labels.push_back(r.period.label);
        trend.findings_per_period.push_back(r.triage.valid - r.triage.quarantined);
        trend.precision_series.push_back(r.model_accuracy.precision);
        trend.recall_series.push_back(r.model_accuracy.recall);
        if (trend.catalog_version.empty()) {
            trend.catalog_version = r.catalog_version;
        }
    }
    trend.chronic_issues = chronic_issues(reports, chronic_k);
    return trend;
}

} // namespace mbfm
