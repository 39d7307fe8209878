#include "mbfm/sim.hpp"

#include "mbfm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace mbfm {

namespace {

// 53-bit mantissa uniform in [0, 1). Pinned here rather than delegated to
// std::uniform_real_distribution so the stream never shifts across
// standard-library releases.
double next_uniform(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

// Knuth's product-of-uniforms draw; fine for small means like 0.429/day.
long poisson(std::mt19937_64& rng, double mean) {
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
        k += 1;
        p *= next_uniform(rng);
    } while (p > limit);
    return k - 1;
}

// Inverse-CDF sampler over keys in a fixed documented order.
class Categorical {
public:
    void add(std::string key, double weight) {
        cumulative_ += weight;
        entries_.push_back({std::move(key), cumulative_});
    }

    const std::string& sample(std::mt19937_64& rng) const {
        const double u = next_uniform(rng) * cumulative_;
        for (const auto& [key, cum] : entries_) {
            if (u < cum) return key;
        }
        return entries_.back().first; // rounding fallthrough
    }

    bool empty() const { return entries_.empty(); }

private:
    std::vector<std::pair<std::string, double>> entries_;
    double cumulative_ = 0.0;
};

void check_distribution(const std::map<std::string, double>& dist, const char* what) {
    double sum = 0.0;
    for (const auto& [key, p] : dist) {
        if (p < 0.0) {
            throw ConfigError(std::string(what) + " has a negative probability for '" + key +
                              "'");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError(std::string(what) + " must sum to 1 (got " + std::to_string(sum) +
                          ")");
    }
}

} // namespace

std::vector<Finding> simulate(const SimConfig& config, const ThreatModel& model,
                              const TaxonomyCatalog& catalog) {
    if (config.daily_rate <= 0.0) {
        throw ConfigError("daily_rate must be > 0");
    }
    if (config.duration_days <= 0) {
        throw ConfigError("duration_days must be > 0");
    }
    if (config.critical_fraction < 0.0 || config.critical_fraction > 1.0) {
        throw ConfigError("critical_fraction must lie in [0, 1]");
    }
    if (!config.start.ok()) {
        throw ConfigError("start is not a valid calendar date");
    }

    double split_sum = 0.0;
    Categorical severities;
    for (const auto& [severity, p] : config.severity_split) {
        if (severity == Severity::Critical) {
            throw ConfigError("severity_split covers non-critical findings only; "
                              "Critical is driven by critical_fraction");
        }
        if (p < 0.0) {
            throw ConfigError("severity_split has a negative probability");
        }
        split_sum += p;
        severities.add(std::string(to_string(severity)), p);
    }
    if (std::abs(split_sum - 1.0) > 1e-9) {
        throw ConfigError("severity_split must sum to 1 (got " + std::to_string(split_sum) +
                          ")");
    }

    Categorical swc;
    if (config.swc_distribution.empty()) {
        for (const auto& [id, _] : catalog.swc_entries) {
            swc.add(id, 1.0);
        }
    } else {
        check_distribution(config.swc_distribution, "swc_distribution");
        for (const auto& [id, p] : config.swc_distribution) {
            if (catalog.swc_entries.count(id) == 0) {
                throw ConfigError("swc_distribution references unknown SWC ID '" + id + "'");
            }
            swc.add(id, p);
        }
    }
    if (swc.empty()) {
        throw ConfigError("no SWC entries available to sample");
    }

    Categorical subjects;
    if (config.subject_distribution.empty()) {
        std::vector<std::string> ids;
        for (const Element& e : model.elements) ids.push_back(e.id);
        for (const DataFlow& f : model.flows) ids.push_back(f.id);
        std::sort(ids.begin(), ids.end(), id_less);
        for (const std::string& id : ids) subjects.add(id, 1.0);
    } else {
        check_distribution(config.subject_distribution, "subject_distribution");
        for (const auto& [id, p] : config.subject_distribution) {
            if (!model.has_subject(id)) {
                throw ConfigError("subject_distribution references unknown subject '" + id +
                                  "'");
            }
            subjects.add(id, p);
        }
    }
    if (subjects.empty()) {
        throw ConfigError("model has no subjects to sample");
    }

    std::mt19937_64 rng(config.seed);
    std::vector<Finding> findings;
    long next_serial = 1;
    for (long day = 0; day < config.duration_days; ++day) {
        const long count = poisson(rng, config.daily_rate);
        const Date submitted = config.start.add_days(day);
        for (long i = 0; i < count; ++i) {
            Finding f;
            char id_buf[24];
            std::snprintf(id_buf, sizeof id_buf, "BB-%04ld", next_serial++);
            f.finding_id = id_buf;
            f.submitted = submitted;

            // Draw order is part of the determinism contract:
            // severity, then SWC tag, then subject.
            if (next_uniform(rng) < config.critical_fraction) {
                f.severity = Severity::Critical;
            } else {
                f.severity = *severity_from_string(severities.sample(rng));
            }
            const std::string& swc_id = swc.sample(rng);
            const std::string& subject = subjects.sample(rng);

            f.title = catalog.swc_entries.at(swc_id).title + " affecting " + subject;
            f.program_variant = config.variant;
            f.validity = Validity::Valid;
            f.swc_tags = {swc_id};
            f.linked_subjects = {subject};
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

} // namespace mbfm
