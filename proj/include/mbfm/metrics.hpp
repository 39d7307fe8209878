#pragma once

#include "mbfm/linking.hpp"

#include <map>
#include <string>
#include <vector>

namespace mbfm {

// Per-severity score weights; must be defined and > 0 for all four levels.
struct SeverityWeights {
    double critical = 10.0;
    double high = 5.0;
    double medium = 2.0;
    double low = 1.0;

    double of(Severity s) const;
    bool valid() const { return critical > 0 && high > 0 && medium > 0 && low > 0; }
};

// Threat-model accuracy against observed finding-pairs. A finding-pair is a
// distinct (subject, stride-of-SWC-tag) combination drawn from the linked
// findings.
struct AccuracyStats {
    long predicted = 0;             // threats with status Predicted
    long confirmed_by_findings = 0; // predicted pairs matched by >=1 finding-pair
    long uncovered_findings = 0;    // finding-pairs with no predicted threat
    double precision = 0.0;         // confirmed/predicted, 0 when predicted == 0
    double recall = 1.0;            // matched pairs / total pairs, 1 when none observed
    // Subjects with findings but no predicted threat at all (overlooked assets).
    std::vector<std::string> overlooked_subjects;

    bool operator==(const AccuracyStats&) const = default;
};

// A weakness recurring in >= k consecutive periods.
struct ChronicIssue {
    std::string swc_id;
    long streak_length = 0;
    std::vector<std::string> periods; // consecutive period labels

    bool operator==(const ChronicIssue&) const = default;
};

struct IdTableRow {
    std::string id;
    std::string description;

    bool operator==(const IdTableRow&) const = default;
};

// The five ID tables: assets, threat actors and controls from the model;
// SWC/SCSVS rows numbered SW01../SC01.. in first-occurrence order over the
// period's findings.
struct IdTables {
    std::vector<IdTableRow> assets;
    std::vector<IdTableRow> threat_actors;
    std::vector<IdTableRow> security_controls;
    std::vector<IdTableRow> swc_registry;
    std::vector<IdTableRow> scsvs;

    bool operator==(const IdTables&) const = default;
};

struct TriageCounts {
    long total = 0;
    long valid = 0;
    long invalid = 0;
    long duplicate = 0;
    long quarantined = 0;

    bool operator==(const TriageCounts&) const = default;
};

// Descriptive actor coverage: how many linked finding/subject hits fall on
// subjects each actor targets, and how many fall outside every actor's
// target list. Informational only; actors are not scored.
struct ActorObservations {
    std::map<std::string, long> findings_on_targets; // actor ID -> count
    long findings_elsewhere = 0;

    bool operator==(const ActorObservations&) const = default;
};

struct QuarantineRecord {
    std::string finding_id;
    std::vector<std::string> reasons;

    bool operator==(const QuarantineRecord&) const = default;
};

// All feedback metrics for one analysis period.
struct PeriodReport {
    Period period;
    std::map<std::string, long> asset_counts;         // subject -> #findings
    std::map<std::string, double> asset_scores;       // subject -> weighted score
    std::map<std::string, long> category_freq_swc;    // SWC ID -> tag instances
    std::map<int, long> category_freq_scsvs_section;  // section 1..14 -> tag instances
    AccuracyStats model_accuracy;
    std::map<std::string, long> control_gaps;         // control ID -> gap count
    std::map<std::string, std::map<std::string, long>> team_breakdown;
    std::vector<std::string> priority_ranking;
    IdTables id_tables;
    TriageCounts triage;
    ActorObservations actor_observations;
    std::vector<QuarantineRecord> quarantine;
    std::string catalog_version;

    bool operator==(const PeriodReport&) const = default;
};

// Cross-period rollup, consumed in period order.
struct TrendReport {
    std::vector<std::string> period_labels;
    std::vector<long> findings_per_period;  // linked findings, aligned to labels
    std::vector<double> precision_series;   // aligned to labels
    std::vector<double> recall_series;
    long chronic_k = 2;
    std::vector<ChronicIssue> chronic_issues;
    std::string catalog_version;

    bool operator==(const TrendReport&) const = default;
};

// --- metric operations (pure) ---

// counts: distinct findings linked to each subject; scores: severity-
// weighted sums over the same findings. A finding linked to two subjects
// contributes fully to both. Throws ConfigError on non-positive weights.
std::pair<std::map<std::string, long>, std::map<std::string, double>>
asset_metrics(const LinkedSet& linked, const SeverityWeights& weights);

// SWC histogram by tag instance; SCSVS histogram rolled up to section
// number (V5.3 counts under 5).
std::pair<std::map<std::string, long>, std::map<int, long>>
category_frequencies(const LinkedSet& linked);

// Compares the model's Predicted threats with observed finding-pairs.
AccuracyStats model_accuracy(const ThreatModel& model, const LinkedSet& linked);

// For each control: count of distinct (finding, subject, category) triples
// with subject in `protects` and category in `mitigates`, i.e. findings the
// control should have stopped. Every control appears, zero included.
std::map<std::string, long> control_gaps(const ThreatModel& model, const LinkedSet& linked);

// Maximal runs of consecutive periods where an SWC ID has count >= 1; runs
// of length >= k are emitted. An intervening period without the ID breaks
// the streak. Pre: reports ordered by period start, k >= 2.
std::vector<ChronicIssue> chronic_issues(const std::vector<PeriodReport>& reports, long k);

// team -> SWC ID -> tag instances; empty team labels aggregate under
// "(unassigned)".
std::map<std::string, std::map<std::string, long>> team_breakdown(const LinkedSet& linked);

// Subjects ordered by score desc, count desc, then subject ID asc. Both
// maps must share one key set.
std::vector<std::string> prioritize(const std::map<std::string, long>& asset_counts,
                                    const std::map<std::string, double>& asset_scores);

// Assembles the full report for one period's linked set.
PeriodReport build_period_report(const ThreatModel& model, const TaxonomyCatalog& catalog,
                                 const Period& period, const LinkedSet& linked,
                                 const SeverityWeights& weights = {});

// Assembles the cross-period rollup. Pre: reports ordered by period start.
TrendReport build_trend_report(const std::vector<PeriodReport>& reports, long chronic_k = 2);

} // namespace mbfm
