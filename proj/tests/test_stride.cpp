#include "mbfm/errors.hpp"
#include "mbfm/stride.hpp"

#include <doctest.h>

using namespace mbfm;

TEST_CASE("category to property pairing follows the chart") {
    CHECK(violated_property(StrideCategory::Spoofing) == SecurityProperty::Authentication);
    CHECK(violated_property(StrideCategory::Tampering) == SecurityProperty::Integrity);
    CHECK(violated_property(StrideCategory::Repudiation) == SecurityProperty::NonRepudiation);
    CHECK(violated_property(StrideCategory::InformationDisclosure) ==
          SecurityProperty::Confidentiality);
    CHECK(violated_property(StrideCategory::DenialOfService) == SecurityProperty::Availability);
    CHECK(violated_property(StrideCategory::ElevationOfPrivilege) ==
          SecurityProperty::Authorization);
}

TEST_CASE("chart definitions are reproduced word for word") {
    CHECK(stride_definition(StrideCategory::Spoofing) ==
          "Impersonating something or someone else.");
    CHECK(stride_definition(StrideCategory::Tampering) == "Modifying data or code.");
    CHECK(stride_definition(StrideCategory::Repudiation) ==
          "Claiming to have not performed an action.");
    CHECK(stride_definition(StrideCategory::InformationDisclosure) ==
          "Exposing information to someone not authorized to see it.");
    CHECK(stride_definition(StrideCategory::DenialOfService) ==
          "Deny or degrade service to users.");
    CHECK(stride_definition(StrideCategory::ElevationOfPrivilege) ==
          "Gain capabilities without proper authorization.");
}

TEST_CASE("enum order spells STRIDE") {
    REQUIRE(kStrideOrder.size() == 6);
    CHECK(kStrideOrder[0] == StrideCategory::Spoofing);
    CHECK(kStrideOrder[1] == StrideCategory::Tampering);
    CHECK(kStrideOrder[2] == StrideCategory::Repudiation);
    CHECK(kStrideOrder[3] == StrideCategory::InformationDisclosure);
    CHECK(kStrideOrder[4] == StrideCategory::DenialOfService);
    CHECK(kStrideOrder[5] == StrideCategory::ElevationOfPrivilege);
}

TEST_CASE("string round trips") {
    for (StrideCategory c : kStrideOrder) {
        auto back = stride_from_string(to_string(c));
        REQUIRE(back.has_value());
        CHECK(*back == c);
    }
    CHECK_FALSE(stride_from_string("Spoof").has_value());
    CHECK_FALSE(stride_from_string("").has_value());

    for (ElementKind k :
         {ElementKind::ExternalEntity, ElementKind::Process, ElementKind::DataStore}) {
        auto back = element_kind_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
}

TEST_CASE("default per-element applicability") {
    const ApplicabilityTable& t = default_applicability();

    CHECK(t.external_entity == std::set<StrideCategory>{StrideCategory::Spoofing,
                                                        StrideCategory::Repudiation});
    CHECK(t.process.size() == 6);
    CHECK(t.data_store ==
          std::set<StrideCategory>{StrideCategory::Tampering, StrideCategory::Repudiation,
                                   StrideCategory::InformationDisclosure,
                                   StrideCategory::DenialOfService});
    CHECK(t.data_flow ==
          std::set<StrideCategory>{StrideCategory::Tampering,
                                   StrideCategory::InformationDisclosure,
                                   StrideCategory::DenialOfService});

    CHECK(&t.for_kind(ElementKind::Process) == &t.process);
    CHECK(&t.for_kind(ElementKind::DataStore) == &t.data_store);
    CHECK(&t.for_kind(ElementKind::ExternalEntity) == &t.external_entity);
}

TEST_CASE("load_applicability parses overrides") {
    const ApplicabilityTable t = load_applicability(R"({
        "ExternalEntity": ["Spoofing"],
        "Process": ["Tampering", "ElevationOfPrivilege"],
        "DataStore": [],
        "DataFlow": ["InformationDisclosure"]
    })");
    CHECK(t.external_entity == std::set<StrideCategory>{StrideCategory::Spoofing});
    CHECK(t.process == std::set<StrideCategory>{StrideCategory::Tampering,
                                                StrideCategory::ElevationOfPrivilege});
    CHECK(t.data_store.empty());
    CHECK(t.data_flow == std::set<StrideCategory>{StrideCategory::InformationDisclosure});
}

TEST_CASE("load_applicability rejects bad input") {
    CHECK_THROWS_AS(load_applicability(R"({"Process": ["Spoofing"]})"), SchemaError);
    CHECK_THROWS_AS(load_applicability(R"({
        "ExternalEntity": [], "Process": [], "DataStore": [], "DataFlow": [],
        "Widget": []
    })"),
                    SchemaError);
    CHECK_THROWS_AS(load_applicability(R"({
        "ExternalEntity": ["NotACategory"], "Process": [], "DataStore": [], "DataFlow": []
    })"),
                    SchemaError);
    CHECK_THROWS_AS(load_applicability("not json"), SyntaxError);
}
