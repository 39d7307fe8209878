#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace mbfm {

// The six STRIDE threat categories, in canonical chart order.
enum class StrideCategory : std::uint8_t {
    Spoofing,
    Tampering,
    Repudiation,
    InformationDisclosure,
    DenialOfService,
    ElevationOfPrivilege,
};

inline constexpr std::array<StrideCategory, 6> kStrideOrder = {
    StrideCategory::Spoofing,
    StrideCategory::Tampering,
    StrideCategory::Repudiation,
    StrideCategory::InformationDisclosure,
    StrideCategory::DenialOfService,
    StrideCategory::ElevationOfPrivilege,
};

// Security property each category violates. The pairing is fixed by the
// STRIDE chart (Spoofing <-> Authentication, Tampering <-> Integrity, ...).
enum class SecurityProperty : std::uint8_t {
    Authentication,
    Integrity,
    NonRepudiation,
    Confidentiality,
    Availability,
    Authorization,
};

SecurityProperty violated_property(StrideCategory c);

// Canonical one-line definition of the threat category.
std::string_view stride_definition(StrideCategory c);

std::string_view to_string(StrideCategory c);
std::string_view to_string(SecurityProperty p);

// Parses the enum spelling ("InformationDisclosure"); empty on no match.
std::optional<StrideCategory> stride_from_string(std::string_view name);

// Kinds of DFD nodes. Flows are handled separately (see model.hpp).
enum class ElementKind : std::uint8_t {
    ExternalEntity,
    Process,
    DataStore,
};

std::string_view to_string(ElementKind k);
std::optional<ElementKind> element_kind_from_string(std::string_view name);

// Which STRIDE categories apply to which DFD element kind. Defaults follow
// the Microsoft STRIDE-per-element chart; overridable from a JSON data file
// (see data/stride_applicability.json and load_applicability()).
struct ApplicabilityTable {
    std::set<StrideCategory> external_entity;
    std::set<StrideCategory> process;
    std::set<StrideCategory> data_store;
    std::set<StrideCategory> data_flow;

    const std::set<StrideCategory>& for_kind(ElementKind k) const;
};

const ApplicabilityTable& default_applicability();

// Loads an override table from JSON text: {"ExternalEntity": ["Spoofing",...],
// "Process": [...], "DataStore": [...], "DataFlow": [...]}.
// Throws SchemaError on unknown kinds or category names.
ApplicabilityTable load_applicability(const std::string& json_text);

} // namespace mbfm
