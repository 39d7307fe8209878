#include "mbfm/model.hpp"

#include "mbfm/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace mbfm {

namespace {

// `A\d{2,}` style check: fixed alpha prefix + zero-padded number, two
// digits minimum.
bool id_matches(const std::string& id, std::string_view prefix) {
    if (id.size() < prefix.size() + 2 || id.compare(0, prefix.size(), prefix) != 0) {
        return false;
    }
    return std::all_of(id.begin() + static_cast<long>(prefix.size()), id.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

struct IdKey {
    std::string prefix;
    long number = -1; // -1 when the ID has no numeric suffix
    std::string raw;
};

IdKey split_id(const std::string& id) {
    std::size_t i = 0;
    while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) {
        ++i;
    }
    IdKey key{id.substr(0, i), -1, id};
    if (i < id.size() &&
        std::all_of(id.begin() + static_cast<long>(i), id.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        key.number = std::stol(id.substr(i));
    }
    return key;
}

} // namespace

bool id_less(const std::string& a, const std::string& b) {
    const IdKey ka = split_id(a);
    const IdKey kb = split_id(b);
    if (ka.number >= 0 && kb.number >= 0) {
        if (ka.prefix != kb.prefix) return ka.prefix < kb.prefix;
        if (ka.number != kb.number) return ka.number < kb.number;
        return ka.raw < kb.raw; // A01 vs A001
    }
    return a < b;
}

std::string_view to_string(ThreatStatus s) {
    switch (s) {
    case ThreatStatus::Predicted: return "Predicted";
    case ThreatStatus::Confirmed: return "Confirmed";
    case ThreatStatus::Retired: return "Retired";
    }
    return {};
}

std::optional<ThreatStatus> threat_status_from_string(std::string_view name) {
    if (name == "Predicted") return ThreatStatus::Predicted;
    if (name == "Confirmed") return ThreatStatus::Confirmed;
    if (name == "Retired") return ThreatStatus::Retired;
    return std::nullopt;
}

std::string_view to_string(DiagnosticSeverity s) {
    return s == DiagnosticSeverity::Error ? "ERROR" : "WARNING";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
        return d.severity == DiagnosticSeverity::Error;
    });
}

const Element* ThreatModel::find_element(const std::string& id) const {
    for (const Element& e : elements) {
        if (e.id == id) return &e;
    }
    return nullptr;
}

const DataFlow* ThreatModel::find_flow(const std::string& id) const {
    for (const DataFlow& f : flows) {
        if (f.id == id) return &f;
    }
    return nullptr;
}

bool ThreatModel::has_subject(const std::string& id) const {
    return find_element(id) != nullptr || find_flow(id) != nullptr;
}

namespace {

class Validator {
public:
    explicit Validator(const ThreatModel& model) : model_(model) {}

    std::vector<Diagnostic> run() {
        index_ids();
        check_id_formats();
        check_duplicates();
        check_names();
        check_flows();
        check_boundaries();
        check_actors();
        check_controls();
        check_threats();
        check_orphans();
        return std::move(out_);
    }

private:
    void error(std::string rule, const std::string& id, std::string msg) {
        out_.push_back({DiagnosticSeverity::Error, std::move(rule), id, std::move(msg)});
    }
    void warning(std::string rule, const std::string& id, std::string msg) {
        out_.push_back({DiagnosticSeverity::Warning, std::move(rule), id, std::move(msg)});
    }

    void index_ids() {
        for (const auto& e : model_.elements) element_ids_.insert(e.id);
        for (const auto& f : model_.flows) flow_ids_.insert(f.id);
        for (const auto& b : model_.boundaries) boundary_ids_.insert(b.id);
    }

    bool subject_exists(const std::string& id) const {
        return element_ids_.count(id) > 0 || flow_ids_.count(id) > 0;
    }

    void check_id_formats() {
        for (const auto& e : model_.elements)
            if (!id_matches(e.id, "A"))
                error("id-format", e.id, "element id must match A## (two digits minimum)");
        for (const auto& f : model_.flows)
            if (!id_matches(f.id, "F"))
                error("id-format", f.id, "flow id must match F##");
        for (const auto& b : model_.boundaries)
            if (!id_matches(b.id, "B"))
                error("id-format", b.id, "boundary id must match B##");
        for (const auto& a : model_.actors)
            if (!id_matches(a.id, "TA"))
                error("id-format", a.id, "actor id must match TA##");
        for (const auto& c : model_.controls)
            if (!id_matches(c.id, "C"))
                error("id-format", c.id, "control id must match C##");
        for (const auto& t : model_.threats)
            if (!id_matches(t.threat_id, "T"))
                error("id-format", t.threat_id, "threat id must match T##");
    }

    template <typename Range, typename IdOf>
    void check_dup(const Range& range, IdOf id_of, const char* what) {
        std::unordered_set<std::string> seen;
        for (const auto& item : range) {
            const std::string& id = id_of(item);
            if (!seen.insert(id).second) {
                error("dup-id", id, std::string("duplicate ") + what + " id");
            }
        }
    }

    void check_duplicates() {
        check_dup(model_.elements, [](const Element& e) -> const std::string& { return e.id; },
                  "element");
        check_dup(model_.flows, [](const DataFlow& f) -> const std::string& { return f.id; },
                  "flow");
        check_dup(model_.boundaries,
                  [](const TrustBoundary& b) -> const std::string& { return b.id; }, "boundary");
        check_dup(model_.actors, [](const ThreatActor& a) -> const std::string& { return a.id; },
                  "actor");
        check_dup(model_.controls,
                  [](const SecurityControl& c) -> const std::string& { return c.id; }, "control");
        check_dup(model_.threats,
                  [](const Threat& t) -> const std::string& { return t.threat_id; }, "threat");
    }

    void check_names() {
        for (const auto& e : model_.elements) {
            if (e.name.empty()) {
                error("empty-name", e.id, "element name must be non-empty");
            }
        }
    }

    void check_flows() {
        for (const auto& f : model_.flows) {
            if (element_ids_.count(f.source) == 0)
                error("dangling-ref", f.id, "flow source '" + f.source + "' is not an element");
            if (element_ids_.count(f.target) == 0)
                error("dangling-ref", f.id, "flow target '" + f.target + "' is not an element");
            for (const auto& b : f.crosses) {
                if (boundary_ids_.count(b) == 0)
                    error("dangling-ref", f.id, "flow crosses unknown boundary '" + b + "'");
            }
        }
    }

    void check_boundaries() {
        for (const auto& b : model_.boundaries) {
            if (b.members.empty()) {
                error("empty-members", b.id, "boundary member list must be non-empty");
            }
            std::unordered_set<std::string> seen;
            for (const auto& m : b.members) {
                if (element_ids_.count(m) == 0)
                    error("dangling-ref", b.id, "boundary member '" + m + "' is not an element");
                if (!seen.insert(m).second)
                    error("dup-member", b.id, "element '" + m + "' listed twice in boundary");
            }
        }
    }

    void check_actors() {
        for (const auto& a : model_.actors) {
            for (const auto& t : a.targets) {
                if (!subject_exists(t))
                    error("dangling-ref", a.id, "actor target '" + t + "' is not an element or flow");
            }
        }
    }

    void check_controls() {
        for (const auto& c : model_.controls) {
            if (c.protects.empty())
                error("empty-protects", c.id, "control protects list must be non-empty");
            if (c.mitigates.empty())
                error("empty-mitigates", c.id, "control mitigates set must be non-empty");
            for (const auto& p : c.protects) {
                if (!subject_exists(p))
                    error("dangling-ref", c.id,
                          "control protects '" + p + "' which is not an element or flow");
            }
        }
    }

    void check_threats() {
        std::unordered_set<std::string> pairs;
        for (const auto& t : model_.threats) {
            if (!subject_exists(t.subject))
                error("dangling-ref", t.threat_id,
                      "threat subject '" + t.subject + "' is not an element or flow");
            if (t.status != ThreatStatus::Predicted) {
                const std::string key = t.subject + "\x1f" + std::string(to_string(t.category));
                if (!pairs.insert(key).second) {
                    warning("dup-threat-pair", t.threat_id,
                            "multiple non-predicted threats share subject '" + t.subject +
                                "' and category " + std::string(to_string(t.category)));
                }
            }
        }
    }

    void check_orphans() {
        std::unordered_set<std::string> connected;
        for (const auto& f : model_.flows) {
            connected.insert(f.source);
            connected.insert(f.target);
        }
        for (const auto& e : model_.elements) {
            if (connected.count(e.id) == 0) {
                warning("orphan-element", e.id, "element has no incident flows");
            }
        }
    }

    const ThreatModel& model_;
    std::unordered_set<std::string> element_ids_;
    std::unordered_set<std::string> flow_ids_;
    std::unordered_set<std::string> boundary_ids_;
    std::vector<Diagnostic> out_;
};

std::string make_threat_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d", n);
    return buf;
}

} // namespace

std::vector<Diagnostic> validate_model(const ThreatModel& model) {
    return Validator(model).run();
}

std::vector<Threat> enumerate_threats(const ThreatModel& model, const ApplicabilityTable& table) {
    const auto diagnostics = validate_model(model);
    if (has_errors(diagnostics)) {
        std::string detail;
        for (const auto& d : diagnostics) {
            if (d.severity == DiagnosticSeverity::Error) {
                detail = d.rule + " (" + d.subject_id + ")";
                break;
            }
        }
        throw InvalidModel("model has validation errors: " + detail);
    }

    // (subject, category) pairs already covered by preserved threats
    std::unordered_set<std::string> covered;
    std::vector<Threat> preserved;
    long max_preserved_num = 0;
    for (const auto& t : model.threats) {
        if (t.status == ThreatStatus::Predicted) {
            continue; // derived data, regenerated below
        }
        preserved.push_back(t);
        covered.insert(t.subject + "\x1f" + std::string(to_string(t.category)));
        if (t.threat_id.size() > 1) {
            max_preserved_num = std::max(max_preserved_num, std::stol(t.threat_id.substr(1)));
        }
    }

    struct SubjectRef {
        std::string id;
        std::string name;
        const std::set<StrideCategory>* applicable;
    };
    std::vector<SubjectRef> subjects;
    subjects.reserve(model.elements.size() + model.flows.size());
    for (const auto& e : model.elements) {
        subjects.push_back({e.id, e.name, &table.for_kind(e.kind)});
    }
    for (const auto& f : model.flows) {
        subjects.push_back({f.id, f.label, &table.data_flow});
    }
    std::sort(subjects.begin(), subjects.end(),
              [](const SubjectRef& a, const SubjectRef& b) { return id_less(a.id, b.id); });

    std::vector<Threat> out;
    for (const auto& s : subjects) {
        for (StrideCategory c : kStrideOrder) {
            if (s.applicable->count(c) == 0) {
                continue;
            }
            if (covered.count(s.id + "\x1f" + std::string(to_string(c))) > 0) {
                continue;
            }
            Threat t;
            t.subject = s.id;
            t.category = c;
            t.description = std::string(to_string(c)) + " against " + s.id +
                            (s.name.empty() ? "" : " (" + s.name + ")");
            t.status = ThreatStatus::Predicted;
            out.push_back(std::move(t));
        }
    }

    // Preserved threats keep their IDs; predicted ones are renumbered,
    // starting past the highest preserved number to avoid collisions.
    int next = static_cast<int>(max_preserved_num) + 1;
    for (auto& t : out) {
        t.threat_id = make_threat_id(next++);
    }
    out.insert(out.end(), preserved.begin(), preserved.end());
    std::stable_sort(out.begin(), out.end(), [](const Threat& a, const Threat& b) {
        if (a.subject != b.subject) return id_less(a.subject, b.subject);
        return static_cast<int>(a.category) < static_cast<int>(b.category);
    });
    return out;
}

long threat_count_bound(const ThreatModel& model) {
    return static_cast<long>(model.elements.size()) * 6 +
           static_cast<long>(model.flows.size()) * 3;
}

} // namespace mbfm
