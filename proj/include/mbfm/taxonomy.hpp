#pragma once

#include "mbfm/stride.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace mbfm {

// One SWC Registry entry: ID, Title, Relationships (the related CWE), and
// Test Cases, exactly the registry's four-column scheme.
struct SwcEntry {
    std::string swc_id;           // SWC-###
    std::string title;
    std::string cwe_relationship; // "CWE-###: <CWE title>"
    std::vector<std::string> test_cases;

    bool operator==(const SwcEntry&) const = default;
};

// One SCSVS checklist entry. Section-level IDs ("V5") carry empty
// requirement_text; item-level IDs ("V5.3") may carry text when the
// snapshot includes it.
struct ScsvsItem {
    std::string scsvs_id; // V# or V#.#
    int section_number = 1; // 1..14
    std::string section_title;
    std::string requirement_text;

    bool operator==(const ScsvsItem&) const = default;
};

// The 14 SCSVS section titles, index 0 = V1.
const std::array<std::string_view, 14>& scsvs_section_titles();

// Versioned snapshot of both catalogs plus the SWC->STRIDE crosswalk.
// Immutable after load; safe for concurrent reads.
struct TaxonomyCatalog {
    std::string catalog_version;
    std::map<std::string, SwcEntry> swc_entries;     // keyed by swc_id
    std::map<std::string, ScsvsItem> scsvs_items;    // keyed by scsvs_id
    std::map<std::string, StrideCategory> swc_to_stride;
};

// Loads and validates a catalog from JSON text (keys: catalog_version, swc,
// scsvs, swc_to_stride). Throws CatalogError naming the offending ID on any
// invariant violation, SyntaxError on malformed JSON.
TaxonomyCatalog load_catalog(const std::string& json_text);

// The snapshot shipped inside the library (data/taxonomy_catalog.json,
// embedded at build time). Covers SWC-100..SWC-136 and SCSVS V1..V14.
const TaxonomyCatalog& bundled_catalog();

using TaxonomyEntry = std::variant<SwcEntry, ScsvsItem>;

// Looks `tag` up in either catalog after trimming whitespace and
// upper-casing the SWC/V prefix. Throws UnknownTag with the three nearest
// IDs by edit distance when nothing matches.
TaxonomyEntry resolve_tag(const TaxonomyCatalog& catalog, const std::string& tag);

// Crosswalk lookup; total over every SWC ID in the catalog.
StrideCategory stride_of(const TaxonomyCatalog& catalog, const std::string& swc_id);

} // namespace mbfm
