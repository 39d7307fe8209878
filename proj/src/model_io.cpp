#include "mbfm/model_io.hpp"

#include "mbfm/errors.hpp"

#include <json.hpp>

#include <initializer_list>
#include <set>

namespace mbfm {

namespace {

using nlohmann::json;

// Rejects unknown keys and reports missing ones with their JSON path.
void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> required) {
    if (!obj.is_object()) {
        throw SchemaError("expected a JSON object", path);
    }
    for (const char* key : required) {
        if (!obj.contains(key)) {
            throw SchemaError(std::string("missing required field '") + key + "'",
                              path + "." + key);
        }
    }
    for (const auto& [key, _] : obj.items()) {
        bool known = false;
        for (const char* k : required) {
            if (key == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaError("unknown field '" + key + "'", path + "." + key);
        }
    }
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw SchemaError("expected a string", path + "." + key);
    }
    return v.get<std::string>();
}

std::vector<std::string> get_string_list(const json& obj, const char* key,
                                         const std::string& path) {
    const json& v = obj.at(key);
    if (!v.is_array()) {
        throw SchemaError("expected an array of strings", path + "." + key);
    }
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) {
            throw SchemaError("expected an array of strings", path + "." + key);
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Element parse_element(const json& obj, const std::string& path) {
    check_keys(obj, path, {"id", "name", "kind", "description"});
    Element e;
    e.id = get_string(obj, "id", path);
    e.name = get_string(obj, "name", path);
    const std::string kind = get_string(obj, "kind", path);
    auto parsed = element_kind_from_string(kind);
    if (!parsed) {
        throw SchemaError("unknown element kind '" + kind + "'", path + ".kind");
    }
    e.kind = *parsed;
    e.description = get_string(obj, "description", path);
    return e;
}

DataFlow parse_flow(const json& obj, const std::string& path) {
    check_keys(obj, path, {"id", "source", "target", "label", "crosses"});
    DataFlow f;
    f.id = get_string(obj, "id", path);
    f.source = get_string(obj, "source", path);
    f.target = get_string(obj, "target", path);
    f.label = get_string(obj, "label", path);
    f.crosses = get_string_list(obj, "crosses", path);
    return f;
}

TrustBoundary parse_boundary(const json& obj, const std::string& path) {
    check_keys(obj, path, {"id", "name", "members"});
    TrustBoundary b;
    b.id = get_string(obj, "id", path);
    b.name = get_string(obj, "name", path);
    b.members = get_string_list(obj, "members", path);
    return b;
}

ThreatActor parse_actor(const json& obj, const std::string& path) {
    check_keys(obj, path, {"id", "name", "capabilities", "targets"});
    ThreatActor a;
    a.id = get_string(obj, "id", path);
    a.name = get_string(obj, "name", path);
    a.capabilities = get_string_list(obj, "capabilities", path);
    a.targets = get_string_list(obj, "targets", path);
    return a;
}

SecurityControl parse_control(const json& obj, const std::string& path) {
    check_keys(obj, path, {"id", "name", "protects", "mitigates"});
    SecurityControl c;
    c.id = get_string(obj, "id", path);
    c.name = get_string(obj, "name", path);
    c.protects = get_string_list(obj, "protects", path);
    for (const std::string& name : get_string_list(obj, "mitigates", path)) {
        auto cat = stride_from_string(name);
        if (!cat) {
            throw SchemaError("unknown STRIDE category '" + name + "'", path + ".mitigates");
        }
        c.mitigates.insert(*cat);
    }
    return c;
}

Threat parse_threat(const json& obj, const std::string& path) {
    check_keys(obj, path, {"threat_id", "subject", "category", "description", "status"});
    Threat t;
    t.threat_id = get_string(obj, "threat_id", path);
    t.subject = get_string(obj, "subject", path);
    const std::string cat = get_string(obj, "category", path);
    auto parsed = stride_from_string(cat);
    if (!parsed) {
        throw SchemaError("unknown STRIDE category '" + cat + "'", path + ".category");
    }
    t.category = *parsed;
    t.description = get_string(obj, "description", path);
    const std::string status = get_string(obj, "status", path);
    auto st = threat_status_from_string(status);
    if (!st) {
        throw SchemaError("unknown threat status '" + status + "'", path + ".status");
    }
    t.status = *st;
    return t;
}

template <typename T, typename ParseFn>
std::vector<T> parse_list(const json& doc, const char* key, ParseFn fn) {
    const json& arr = doc.at(key);
    if (!arr.is_array()) {
        throw SchemaError("expected an array", std::string("$.") + key);
    }
    std::vector<T> out;
    out.reserve(arr.size());
    std::size_t i = 0;
    for (const auto& item : arr) {
        out.push_back(fn(item, std::string("$.") + key + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

} // namespace

ThreatModel parse_model(const std::string& raw) {
    json doc;
    try {
        doc = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
    check_keys(doc, "$",
               {"model_id", "name", "version", "elements", "flows", "boundaries", "actors",
                "controls", "threats"});

    ThreatModel m;
    m.model_id = get_string(doc, "model_id", "$");
    m.name = get_string(doc, "name", "$");
    m.version = get_string(doc, "version", "$");
    m.elements = parse_list<Element>(doc, "elements", parse_element);
    m.flows = parse_list<DataFlow>(doc, "flows", parse_flow);
    m.boundaries = parse_list<TrustBoundary>(doc, "boundaries", parse_boundary);
    m.actors = parse_list<ThreatActor>(doc, "actors", parse_actor);
    m.controls = parse_list<SecurityControl>(doc, "controls", parse_control);
    m.threats = parse_list<Threat>(doc, "threats", parse_threat);
    return m;
}

namespace {

json to_json(const Element& e) {
    return json{{"id", e.id},
                {"name", e.name},
                {"kind", std::string(to_string(e.kind))},
                {"description", e.description}};
}

json to_json(const DataFlow& f) {
    return json{{"id", f.id},
                {"source", f.source},
                {"target", f.target},
                {"label", f.label},
                {"crosses", f.crosses}};
}

json to_json(const TrustBoundary& b) {
    return json{{"id", b.id}, {"name", b.name}, {"members", b.members}};
}

json to_json(const ThreatActor& a) {
    return json{{"id", a.id},
                {"name", a.name},
                {"capabilities", a.capabilities},
                {"targets", a.targets}};
}

json to_json(const SecurityControl& c) {
    json mitigates = json::array();
    for (StrideCategory cat : kStrideOrder) {
        if (c.mitigates.count(cat) > 0) {
            mitigates.push_back(std::string(to_string(cat)));
        }
    }
    return json{{"id", c.id}, {"name", c.name}, {"protects", c.protects},
                {"mitigates", mitigates}};
}

json to_json(const Threat& t) {
    return json{{"threat_id", t.threat_id},
                {"subject", t.subject},
                {"category", std::string(to_string(t.category))},
                {"description", t.description},
                {"status", std::string(to_string(t.status))}};
}

template <typename Range>
json list_to_json(const Range& range) {
    json arr = json::array();
    for (const auto& item : range) {
        arr.push_back(to_json(item));
    }
    return arr;
}

} // namespace

std::string serialize_model(const ThreatModel& m) {
    json doc{{"model_id", m.model_id},
             {"name", m.name},
             {"version", m.version},
             {"elements", list_to_json(m.elements)},
             {"flows", list_to_json(m.flows)},
             {"boundaries", list_to_json(m.boundaries)},
             {"actors", list_to_json(m.actors)},
             {"controls", list_to_json(m.controls)},
             {"threats", list_to_json(m.threats)}};
    return doc.dump(2) + "\n";
}

} // namespace mbfm
