#include "mbfm/taxonomy.hpp"

#include "mbfm/bundled.hpp"
#include "mbfm/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <regex>

namespace mbfm {

namespace {

using nlohmann::json;

const std::regex kSwcIdPattern{R"(SWC-\d{3})"};
const std::regex kScsvsIdPattern{R"(V\d{1,2}(\.\d+)?)"};
const std::regex kCwePattern{R"(CWE-\d+.*)"};

std::string normalize_tag(const std::string& tag) {
    std::size_t begin = 0;
    std::size_t end = tag.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(tag[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(tag[end - 1]))) --end;
    std::string out = tag.substr(begin, end - begin);
    // upper-case the SWC / V prefix only; digits and dots are untouched
    for (char& c : out) {
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            break;
        }
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<std::string> nearest_ids(const TaxonomyCatalog& catalog, const std::string& tag,
                                     std::size_t count) {
    std::vector<std::pair<std::size_t, std::string>> scored;
    for (const auto& [id, _] : catalog.swc_entries) scored.emplace_back(edit_distance(tag, id), id);
    for (const auto& [id, _] : catalog.scsvs_items) scored.emplace_back(edit_distance(tag, id), id);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (std::size_t i = 0; i < scored.size() && i < count; ++i) {
        out.push_back(scored[i].second);
    }
    return out;
}

int section_of(const std::string& scsvs_id) {
    const std::size_t dot = scsvs_id.find('.');
    return std::stoi(scsvs_id.substr(1, dot == std::string::npos ? std::string::npos : dot - 1));
}

} // namespace

const std::array<std::string_view, 14>& scsvs_section_titles() {
    static const std::array<std::string_view, 14> titles = {
        "Architecture, Design and Threat Modelling",
        "Access Control",
        "Blockchain Data",
        "Communications",
        "Arithmetic",
        "Malicious Input Handling",
        "Gas Usage & Limitations",
        "Business Logic",
        "Denial of Service",
        "Token",
        "Code Clarity",
        "Test Coverage",
        "Known Attacks",
        "Decentralized Finance",
    };
    return titles;
}

TaxonomyCatalog load_catalog(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
    if (!doc.is_object() || !doc.contains("catalog_version") || !doc.contains("swc") ||
        !doc.contains("scsvs") || !doc.contains("swc_to_stride")) {
        throw CatalogError("catalog must have keys catalog_version, swc, scsvs, swc_to_stride",
                           "$");
    }

    TaxonomyCatalog catalog;
    catalog.catalog_version = doc.at("catalog_version").get<std::string>();

    for (const auto& entry : doc.at("swc")) {
        SwcEntry e;
        e.swc_id = entry.value("swc_id", "");
        if (!std::regex_match(e.swc_id, kSwcIdPattern)) {
            throw CatalogError("swc_id must match SWC-###", e.swc_id);
        }
        e.title = entry.value("title", "");
        e.cwe_relationship = entry.value("cwe_relationship", "");
        if (e.cwe_relationship.empty() || !std::regex_match(e.cwe_relationship, kCwePattern)) {
            throw CatalogError("cwe_relationship must be non-empty and start with CWE-#",
                               e.swc_id);
        }
        if (entry.contains("test_cases")) {
            e.test_cases = entry.at("test_cases").get<std::vector<std::string>>();
        }
        if (!catalog.swc_entries.emplace(e.swc_id, e).second) {
            throw CatalogError("duplicate swc_id", e.swc_id);
        }
    }

    const auto& titles = scsvs_section_titles();
    for (const auto& entry : doc.at("scsvs")) {
        ScsvsItem item;
        item.scsvs_id = entry.value("scsvs_id", "");
        if (!std::regex_match(item.scsvs_id, kScsvsIdPattern)) {
            throw CatalogError("scsvs_id must match V# or V#.#", item.scsvs_id);
        }
        item.section_number = section_of(item.scsvs_id);
        if (item.section_number < 1 || item.section_number > 14) {
            throw CatalogError("scsvs section number out of range 1..14", item.scsvs_id);
        }
        if (!entry.contains("section_title") || !entry.at("section_title").is_string() ||
            entry.at("section_title").get<std::string>().empty()) {
            throw CatalogError("missing section_title", item.scsvs_id);
        }
        item.section_title = entry.at("section_title").get<std::string>();
        if (item.section_title != titles[static_cast<std::size_t>(item.section_number - 1)]) {
            throw CatalogError("section_title does not match the canonical V" +
                                   std::to_string(item.section_number) + " title",
                               item.scsvs_id);
        }
        item.requirement_text = entry.value("requirement_text", "");
        if (!catalog.scsvs_items.emplace(item.scsvs_id, item).second) {
            throw CatalogError("duplicate scsvs_id", item.scsvs_id);
        }
    }

    for (const auto& [swc_id, value] : doc.at("swc_to_stride").items()) {
        if (catalog.swc_entries.count(swc_id) == 0) {
            throw CatalogError("swc_to_stride key has no matching swc entry", swc_id);
        }
        // entries are objects {category, note}; the note documents the
        // per-entry crosswalk rationale and lives only in the data file
        std::string category_name;
        if (value.is_object() && value.contains("category")) {
            category_name = value.at("category").get<std::string>();
        } else if (value.is_string()) {
            category_name = value.get<std::string>();
        } else {
            throw CatalogError("swc_to_stride value must be a category", swc_id);
        }
        auto cat = stride_from_string(category_name);
        if (!cat) {
            throw CatalogError("unknown STRIDE category '" + category_name + "'", swc_id);
        }
        catalog.swc_to_stride.emplace(swc_id, *cat);
    }

    return catalog;
}

const TaxonomyCatalog& bundled_catalog() {
    static const TaxonomyCatalog catalog = load_catalog(bundled::taxonomy_catalog_json());
    return catalog;
}

TaxonomyEntry resolve_tag(const TaxonomyCatalog& catalog, const std::string& tag) {
    const std::string id = normalize_tag(tag);
    if (auto it = catalog.swc_entries.find(id); it != catalog.swc_entries.end()) {
        return it->second;
    }
    if (auto it = catalog.scsvs_items.find(id); it != catalog.scsvs_items.end()) {
        return it->second;
    }
    const auto nearest = nearest_ids(catalog, id, 3);
    std::string msg = "unknown tag '" + tag + "'";
    if (!nearest.empty()) {
        msg += "; nearest:";
        for (const auto& n : nearest) {
            msg += " " + n;
        }
    }
    throw UnknownTag(msg, tag, nearest);
}

StrideCategory stride_of(const TaxonomyCatalog& catalog, const std::string& swc_id) {
    const std::string id = normalize_tag(swc_id);
    if (auto it = catalog.swc_to_stride.find(id); it != catalog.swc_to_stride.end()) {
        return it->second;
    }
    throw UnknownTag("no STRIDE crosswalk entry for '" + swc_id + "'", swc_id,
                     nearest_ids(catalog, id, 3));
}

} // namespace mbfm
