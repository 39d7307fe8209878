#pragma once

#include "mbfm/findings.hpp"
#include "mbfm/model.hpp"
#include "mbfm/taxonomy.hpp"

#include <cstdint>
#include <map>

namespace mbfm {

// Synthetic bounty-stream parameters. Rates default to the published
// program-wide averages: 0.429 valid reports per day, 13 critical out of
// 156 per year.
struct SimConfig {
    double daily_rate = 0.429;
    long duration_days = 365;
    double critical_fraction = 13.0 / 156.0;
    // Severity of non-critical findings. Must sum to 1 within 1e-9.
    std::map<Severity, double> severity_split = {
        {Severity::High, 0.30}, {Severity::Medium, 0.45}, {Severity::Low, 0.25}};
    // Empty map = uniform over the catalog's SWC entries.
    std::map<std::string, double> swc_distribution;
    // Empty map = uniform over the model's elements and flows.
    std::map<std::string, double> subject_distribution;
    ProgramVariant variant = ProgramVariant::OpenEnded;
    std::uint64_t seed = 0;
    Date start = {2021, 1, 1}; // first simulated day
};

// Generates `duration_days` of triaged findings: daily counts are Poisson
// with mean daily_rate, severity/tag/subject sampled per the config. All
// findings are Valid, tagged with one SWC ID, and linked to one subject,
// so the stream re-enters the pipeline with zero quarantines. Identical
// (config, model) pairs produce identical output.
// Throws ConfigError on invalid config or unresolvable distribution keys.
std::vector<Finding> simulate(const SimConfig& config, const ThreatModel& model,
                              const TaxonomyCatalog& catalog = bundled_catalog());

} // namespace mbfm
