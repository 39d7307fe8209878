#pragma once

// Shared helpers for the unit and acceptance binaries: fixture paths, file
// I/O, seeded random instance generators, and a small DOT grammar checker.

#include "mbfm/metrics.hpp"
#include "mbfm/model.hpp"

#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(MBFM_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// Fresh directory under the system temp root; leaks on purpose (the OS
// cleans /tmp, and keeping outputs around helps debugging).
inline std::string temp_dir(const std::string& tag) {
    static std::uint64_t counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("mbfm-" + tag + "-" + std::to_string(++counter) + "-" +
                      std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir);
    return dir.string();
}

inline std::string pad2(int n) {
    return (n < 10 ? "0" : "") + std::to_string(n);
}

// --- seeded random instances ---

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

// Valid-by-construction random model: unique IDs, no dangling references,
// non-empty members/protects/mitigates. Threat lists mix all three
// statuses so enumeration's preserve/suppress path gets exercised.
inline mbfm::ThreatModel random_model(std::mt19937_64& rng, int max_elements = 10,
                                      int max_flows = 15, bool with_threats = true) {
    using namespace mbfm;
    ThreatModel m;
    m.model_id = "gen-" + std::to_string(rng() % 100000);
    m.name = "Generated model";
    m.version = "1." + std::to_string(rng() % 10);

    const int n_elems = int(draw(rng, max_elements + 1));
    const ElementKind kinds[] = {ElementKind::ExternalEntity, ElementKind::Process,
                                 ElementKind::DataStore};
    for (int i = 0; i < n_elems; ++i) {
        Element e;
        e.id = "A" + pad2(i + 1);
        e.name = "Component " + std::to_string(i + 1);
        e.kind = kinds[draw(rng, 3)];
        e.description = "generated";
        m.elements.push_back(e);
    }

    const int n_flows = n_elems == 0 ? 0 : int(draw(rng, max_flows + 1));
    for (int i = 0; i < n_flows; ++i) {
        DataFlow f;
        f.id = "F" + pad2(i + 1);
        f.source = m.elements[draw(rng, n_elems)].id;
        f.target = m.elements[draw(rng, n_elems)].id;
        f.label = "flow " + std::to_string(i + 1);
        m.flows.push_back(f);
    }

    std::vector<std::string> subjects;
    for (const Element& e : m.elements) subjects.push_back(e.id);
    for (const DataFlow& f : m.flows) subjects.push_back(f.id);

    const int n_bounds = n_elems == 0 ? 0 : int(draw(rng, 3));
    for (int i = 0; i < n_bounds; ++i) {
        TrustBoundary b;
        b.id = "B" + pad2(i + 1);
        b.name = "Zone " + std::to_string(i + 1);
        const int first = int(draw(rng, n_elems));
        const int count = 1 + int(draw(rng, n_elems - first));
        for (int j = first; j < first + count; ++j) b.members.push_back(m.elements[j].id);
        m.boundaries.push_back(b);
    }

    const int n_actors = int(draw(rng, 3));
    for (int i = 0; i < n_actors; ++i) {
        ThreatActor a;
        a.id = "TA" + pad2(i + 1);
        a.name = "Actor " + std::to_string(i + 1);
        a.capabilities = {"generated"};
        for (const std::string& s : subjects) {
            if (draw(rng, 3) == 0) a.targets.push_back(s);
        }
        m.actors.push_back(a);
    }

    const int n_controls = subjects.empty() ? 0 : int(draw(rng, 3));
    for (int i = 0; i < n_controls; ++i) {
        SecurityControl c;
        c.id = "C" + pad2(i + 1);
        c.name = "Control " + std::to_string(i + 1);
        c.protects.push_back(subjects[draw(rng, subjects.size())]);
        for (StrideCategory cat : kStrideOrder) {
            if (draw(rng, 3) == 0) c.mitigates.insert(cat);
        }
        if (c.mitigates.empty()) c.mitigates.insert(StrideCategory::Tampering);
        m.controls.push_back(c);
    }

    if (with_threats && !subjects.empty()) {
        const int n_threats = int(draw(rng, 5));
        for (int i = 0; i < n_threats; ++i) {
            Threat t;
            t.threat_id = "T" + pad2(i + 1);
            t.subject = subjects[draw(rng, subjects.size())];
            t.category = kStrideOrder[draw(rng, 6)];
            t.description = "seeded threat";
            const ThreatStatus statuses[] = {ThreatStatus::Predicted, ThreatStatus::Confirmed,
                                             ThreatStatus::Retired};
            t.status = statuses[draw(rng, 3)];
            m.threats.push_back(t);
        }
    }
    return m;
}

inline std::string random_label(std::mt19937_64& rng, const char* stem) {
    return std::string(stem) + std::to_string(rng() % 1000);
}

// Random report with every field populated; values need no internal
// consistency because serialization treats them as opaque.
inline mbfm::PeriodReport random_report(std::mt19937_64& rng) {
    using namespace mbfm;
    PeriodReport r;
    const int q = int(draw(rng, 4));
    r.period.label = std::to_string(2020 + draw(rng, 4)) + "-Q" + std::to_string(q + 1);
    r.period.start = Date{int(2020 + draw(rng, 4)), q * 3 + 1, 1};
    r.period.end = r.period.start.add_months_first_day(3);
    r.period.scheme = PeriodScheme::Quarterly;

    const int n_subjects = 1 + int(draw(rng, 5));
    for (int i = 0; i < n_subjects; ++i) {
        const std::string id = "A" + pad2(i + 1);
        r.asset_counts[id] = long(draw(rng, 20));
        r.asset_scores[id] = double(draw(rng, 400)) / 8.0;
        if (draw(rng, 2) == 0) r.priority_ranking.push_back(id);
    }
    for (int i = 0; i < int(draw(rng, 4)); ++i) {
        r.category_freq_swc["SWC-" + std::to_string(100 + draw(rng, 37))] =
            1 + long(draw(rng, 9));
    }
    for (int i = 0; i < int(draw(rng, 4)); ++i) {
        r.category_freq_scsvs_section[int(1 + draw(rng, 14))] = 1 + long(draw(rng, 9));
    }
    r.model_accuracy.predicted = long(draw(rng, 40));
    r.model_accuracy.confirmed_by_findings = long(draw(rng, 20));
    r.model_accuracy.uncovered_findings = long(draw(rng, 20));
    r.model_accuracy.precision = double(draw(rng, 1000)) / 1000.0;
    r.model_accuracy.recall = double(draw(rng, 1000)) / 1000.0;
    if (draw(rng, 2) == 0) r.model_accuracy.overlooked_subjects.push_back("A99");
    r.control_gaps["C01"] = long(draw(rng, 10));
    r.team_breakdown[random_label(rng, "team-")]["SWC-135"] = 1 + long(draw(rng, 5));
    r.id_tables.assets.push_back({"A01", random_label(rng, "asset ")});
    r.id_tables.threat_actors.push_back({"TA01", random_label(rng, "actor ")});
    r.id_tables.security_controls.push_back({"C01", random_label(rng, "control ")});
    r.id_tables.swc_registry.push_back({"SW01", "SWC-135"});
    r.id_tables.scsvs.push_back({"SC01", "V5.3"});
    r.triage.total = long(draw(rng, 50));
    r.triage.valid = long(draw(rng, 40));
    r.triage.invalid = long(draw(rng, 5));
    r.triage.duplicate = long(draw(rng, 5));
    r.triage.quarantined = long(draw(rng, 5));
    r.actor_observations.findings_on_targets["TA01"] = long(draw(rng, 20));
    r.actor_observations.findings_elsewhere = long(draw(rng, 20));
    if (draw(rng, 2) == 0) {
        r.quarantine.push_back({"BB-0099", {random_label(rng, "unknown-tag: ")}});
    }
    r.catalog_version = "mbfm-catalog-1.0.0";
    return r;
}

// --- DOT grammar checker ---
//
// Accepts the Graphviz subset the renderer emits: '//' comments, one
// digraph with optional ID, node/edge statements with bracketed attribute
// lists, attribute assignments, and nested subgraphs. Quoted strings allow
// backslash escapes. Good enough to reject unbalanced quotes/brackets and
// stray tokens without shipping graphviz.
class DotChecker {
public:
    bool check(const std::string& text, std::string* error = nullptr) {
        text_ = &text;
        pos_ = 0;
        error_.clear();
        const bool ok = parse_graph() && at_end();
        if (!ok && error_.empty()) error_ = "unexpected trailing input";
        if (error) *error = error_;
        return ok;
    }

private:
    const std::string* text_ = nullptr;
    std::size_t pos_ = 0;
    std::string error_;

    void skip_ws() {
        const std::string& t = *text_;
        while (pos_ < t.size()) {
            if (std::isspace(static_cast<unsigned char>(t[pos_]))) {
                ++pos_;
            } else if (t.compare(pos_, 2, "//") == 0) {
                while (pos_ < t.size() && t[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= text_->size();
    }

    bool literal(const char* s) {
        skip_ws();
        const std::size_t n = std::strlen(s);
        if (text_->compare(pos_, n, s) == 0) {
            pos_ += n;
            return true;
        }
        return false;
    }

    bool fail(const std::string& what) {
        if (error_.empty()) {
            error_ = what + " near byte " + std::to_string(pos_);
        }
        return false;
    }

    // bare identifier, quoted string, or number
    bool value(std::string* out = nullptr) {
        skip_ws();
        const std::string& t = *text_;
        if (pos_ >= t.size()) return fail("expected a value");
        if (t[pos_] == '"') {
            ++pos_;
            std::string v;
            while (pos_ < t.size() && t[pos_] != '"') {
                if (t[pos_] == '\\') {
                    ++pos_;
                    if (pos_ >= t.size()) return fail("dangling escape");
                }
                v += t[pos_++];
            }
            if (pos_ >= t.size()) return fail("unterminated string");
            ++pos_; // closing quote
            if (out) *out = v;
            return true;
        }
        std::size_t start = pos_;
        auto bare = [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
                   c == '-' || c == '#';
        };
        while (pos_ < t.size() && bare(t[pos_])) ++pos_;
        if (pos_ == start) return fail("expected a value");
        if (out) *out = t.substr(start, pos_ - start);
        return true;
    }

    bool attr_list() {
        if (!literal("[")) return true; // attribute list is optional
        while (true) {
            if (!value()) return fail("expected attribute name");
            if (!literal("=")) return fail("expected '=' in attribute");
            if (!value()) return fail("expected attribute value");
            if (literal(",")) continue;
            break;
        }
        if (!literal("]")) return fail("expected ']'");
        return true;
    }

    bool statement() {
        skip_ws();
        if (text_->compare(pos_, 8, "subgraph") == 0) {
            pos_ += 8;
            if (!value()) return fail("expected subgraph name");
            if (!literal("{")) return fail("expected '{' after subgraph");
            while (!literal("}")) {
                if (at_end()) return fail("unterminated subgraph");
                if (!statement()) return false;
            }
            return true;
        }
        if (!value()) return fail("expected node ID");
        if (literal("->")) {
            if (!value()) return fail("expected edge target");
        } else if (literal("=")) {
            if (!value()) return fail("expected attribute value");
            if (!literal(";")) return fail("expected ';'");
            return true;
        }
        if (!attr_list()) return false;
        if (!literal(";")) return fail("expected ';'");
        return true;
    }

    bool parse_graph() {
        if (!literal("digraph")) return fail("expected 'digraph'");
        skip_ws();
        if (text_->compare(pos_, 1, "{") != 0) {
            if (!value()) return fail("expected graph name or '{'");
        }
        if (!literal("{")) return fail("expected '{'");
        while (!literal("}")) {
            if (at_end()) return fail("unterminated graph");
            if (!statement()) return false;
        }
        return true;
    }
};

} // namespace testsupport
