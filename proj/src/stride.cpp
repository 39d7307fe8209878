#include "mbfm/stride.hpp"

#include "mbfm/errors.hpp"

#include <json.hpp>

namespace mbfm {

SecurityProperty violated_property(StrideCategory c) {
    switch (c) {
    case StrideCategory::Spoofing: return SecurityProperty::Authentication;
    case StrideCategory::Tampering: return SecurityProperty::Integrity;
    case StrideCategory::Repudiation: return SecurityProperty::NonRepudiation;
    case StrideCategory::InformationDisclosure: return SecurityProperty::Confidentiality;
    case StrideCategory::DenialOfService: return SecurityProperty::Availability;
    case StrideCategory::ElevationOfPrivilege: return SecurityProperty::Authorization;
    }
    return SecurityProperty::Authentication; // unreachable
}

std::string_view stride_definition(StrideCategory c) {
    switch (c) {
    case StrideCategory::Spoofing:
        return "Impersonating something or someone else.";
    case StrideCategory::Tampering:
        return "Modifying data or code.";
    case StrideCategory::Repudiation:
        return "Claiming to have not performed an action.";
    case StrideCategory::InformationDisclosure:
        return "Exposing information to someone not authorized to see it.";
    case StrideCategory::DenialOfService:
        return "Deny or degrade service to users.";
    case StrideCategory::ElevationOfPrivilege:
        return "Gain capabilities without proper authorization.";
    }
    return {};
}

std::string_view to_string(StrideCategory c) {
    switch (c) {
    case StrideCategory::Spoofing: return "Spoofing";
    case StrideCategory::Tampering: return "Tampering";
    case StrideCategory::Repudiation: return "Repudiation";
    case StrideCategory::InformationDisclosure: return "InformationDisclosure";
    case StrideCategory::DenialOfService: return "DenialOfService";
    case StrideCategory::ElevationOfPrivilege: return "ElevationOfPrivilege";
    }
    return {};
}

std::string_view to_string(SecurityProperty p) {
    switch (p) {
    case SecurityProperty::Authentication: return "Authentication";
    case SecurityProperty::Integrity: return "Integrity";
    case SecurityProperty::NonRepudiation: return "NonRepudiation";
    case SecurityProperty::Confidentiality: return "Confidentiality";
    case SecurityProperty::Availability: return "Availability";
    case SecurityProperty::Authorization: return "Authorization";
    }
    return {};
}

std::optional<StrideCategory> stride_from_string(std::string_view name) {
    for (StrideCategory c : kStrideOrder) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view to_string(ElementKind k) {
    switch (k) {
    case ElementKind::ExternalEntity: return "ExternalEntity";
    case ElementKind::Process: return "Process";
    case ElementKind::DataStore: return "DataStore";
    }
    return {};
}

std::optional<ElementKind> element_kind_from_string(std::string_view name) {
    if (name == "ExternalEntity") return ElementKind::ExternalEntity;
    if (name == "Process") return ElementKind::Process;
    if (name == "DataStore") return ElementKind::DataStore;
    return std::nullopt;
}

const std::set<StrideCategory>& ApplicabilityTable::for_kind(ElementKind k) const {
    switch (k) {
    case ElementKind::ExternalEntity: return external_entity;
    case ElementKind::Process: return process;
    case ElementKind::DataStore: return data_store;
    }
    return process; // unreachable
}

const ApplicabilityTable& default_applicability() {
    using C = StrideCategory;
    static const ApplicabilityTable table{
        /*external_entity=*/{C::Spoofing, C::Repudiation},
        /*process=*/
        {C::Spoofing, C::Tampering, C::Repudiation, C::InformationDisclosure,
         C::DenialOfService, C::ElevationOfPrivilege},
        /*data_store=*/
        {C::Tampering, C::Repudiation, C::InformationDisclosure, C::DenialOfService},
        /*data_flow=*/{C::Tampering, C::InformationDisclosure, C::DenialOfService},
    };
    return table;
}

ApplicabilityTable load_applicability(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(e.what(), e.byte);
    }
    if (!doc.is_object()) {
        throw SchemaError("applicability table must be a JSON object", "$");
    }

    for (const char* key : {"ExternalEntity", "Process", "DataStore", "DataFlow"}) {
        if (!doc.contains(key)) {
            throw SchemaError("applicability table is missing a kind", key);
        }
    }

    ApplicabilityTable table;
    for (const auto& [kind_name, cats] : doc.items()) {
        std::set<StrideCategory>* target = nullptr;
        if (kind_name == "ExternalEntity") target = &table.external_entity;
        else if (kind_name == "Process") target = &table.process;
        else if (kind_name == "DataStore") target = &table.data_store;
        else if (kind_name == "DataFlow") target = &table.data_flow;
        else throw SchemaError("unknown element kind in applicability table", kind_name);

        if (!cats.is_array()) {
            throw SchemaError("applicability entry must be an array", kind_name);
        }
        for (const auto& cat : cats) {
            if (!cat.is_string()) {
                throw SchemaError("category must be a string", kind_name);
            }
            auto parsed = stride_from_string(cat.get<std::string>());
            if (!parsed) {
                throw SchemaError("unknown STRIDE category '" + cat.get<std::string>() + "'",
                                  kind_name);
            }
            target->insert(*parsed);
        }
    }
    return table;
}

} // namespace mbfm
