#include "mbfm/linking.hpp"

#include "mbfm/model_io.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace mbfm;

namespace {

ThreatModel triad_model() {
    return parse_model(testsupport::read_file(testsupport::fixture_path("triad_model.json")));
}

std::vector<Finding> triad_findings() {
    return parse_findings_jsonl(
        testsupport::read_file(testsupport::fixture_path("triad_findings.jsonl")));
}

Finding tagged(std::string id, std::vector<std::string> swc, std::vector<std::string> scsvs,
               std::vector<std::string> subjects) {
    Finding f;
    f.finding_id = std::move(id);
    f.submitted = {2021, 5, 5};
    f.severity = Severity::Medium;
    f.title = "synthetic";
    f.swc_tags = std::move(swc);
    f.scsvs_tags = std::move(scsvs);
    f.linked_subjects = std::move(subjects);
    return f;
}

} // namespace

TEST_CASE("fixture findings all link cleanly") {
    const auto model = triad_model();
    const auto set = link_findings(model, bundled_catalog(), triad_findings());
    REQUIRE(set.linked.size() == 4);
    CHECK(set.quarantined.empty());
    CHECK(set.excluded.empty());

    // input order is preserved
    CHECK(set.linked[0].finding.finding_id == "BB-0001");
    CHECK(set.linked[3].finding.finding_id == "BB-0004");

    // tags resolve to catalog rows in tag order, with STRIDE via crosswalk
    const LinkedFinding& first = set.linked[0];
    REQUIRE(first.swc_entries.size() == 1);
    CHECK(first.swc_entries[0].swc_id == "SWC-135");
    REQUIRE(first.scsvs_items.size() == 1);
    CHECK(first.scsvs_items[0].scsvs_id == "V5.3");
    REQUIRE(first.stride_by_tag.size() == 1);
    CHECK(first.stride_by_tag[0].first == "SWC-135");
    CHECK(first.stride_by_tag[0].second == StrideCategory::Tampering);
}

TEST_CASE("tags normalize before lookup") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0100", {"  swc-107 "}, {"v8.1"}, {"A01"})});
    REQUIRE(set.linked.size() == 1);
    CHECK(set.linked[0].swc_entries[0].swc_id == "SWC-107");
    CHECK(set.linked[0].scsvs_items[0].scsvs_id == "V8.1");
}

TEST_CASE("unknown tags quarantine the finding") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0101", {"SWC-999"}, {}, {"A01"})});
    CHECK(set.linked.empty());
    REQUIRE(set.quarantined.size() == 1);
    const auto& q = set.quarantined[0];
    CHECK(q.finding.finding_id == "BB-0101");
    REQUIRE(q.diagnostics.size() == 1);
    CHECK(q.diagnostics[0].rule == "unknown-tag");
    CHECK(q.diagnostics[0].severity == DiagnosticSeverity::Error);
    CHECK(q.diagnostics[0].subject_id == "BB-0101");
}

TEST_CASE("cross-catalog misuse is called out") {
    SUBCASE("scsvs id in the swc list") {
        const auto set = link_findings(triad_model(), bundled_catalog(),
                                       {tagged("BB-0102", {"V5.3"}, {}, {"A01"})});
        REQUIRE(set.quarantined.size() == 1);
        CHECK(set.quarantined[0].diagnostics[0].message ==
              "'V5.3' is an SCSVS id but was given as an SWC tag");
    }
    SUBCASE("swc id in the scsvs list") {
        const auto set = link_findings(triad_model(), bundled_catalog(),
                                       {tagged("BB-0103", {"SWC-107"}, {"SWC-107"}, {"A01"})});
        REQUIRE(set.quarantined.size() == 1);
        CHECK(set.quarantined[0].diagnostics[0].message ==
              "'SWC-107' is an SWC id but was given as an SCSVS tag");
    }
}

TEST_CASE("unknown subjects quarantine the finding") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0104", {"SWC-107"}, {}, {"A99"})});
    REQUIRE(set.quarantined.size() == 1);
    CHECK(set.quarantined[0].diagnostics[0].rule == "unknown-subject");
    CHECK(set.quarantined[0].diagnostics[0].message == "subject 'A99' is not an element or flow");
}

TEST_CASE("valid finding without any tag is quarantined") {
    const auto set =
        link_findings(triad_model(), bundled_catalog(), {tagged("BB-0105", {}, {}, {"A01"})});
    REQUIRE(set.quarantined.size() == 1);
    CHECK(set.quarantined[0].diagnostics[0].rule == "untagged-valid");
}

TEST_CASE("problems accumulate instead of short-circuiting") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0106", {"SWC-999", "SWC-107"}, {"V99.9"},
                                           {"A01", "F99"})});
    REQUIRE(set.quarantined.size() == 1);
    const auto& diags = set.quarantined[0].diagnostics;
    REQUIRE(diags.size() == 3);
    CHECK(diags[0].rule == "unknown-tag");
    CHECK(diags[1].rule == "unknown-tag");
    CHECK(diags[2].rule == "unknown-subject");
}

TEST_CASE("invalid and duplicate findings are excluded untouched") {
    Finding invalid = tagged("BB-0107", {"not-even-a-tag"}, {}, {"Z99"});
    invalid.validity = Validity::Invalid;
    Finding dup = tagged("BB-0108", {"SWC-107"}, {}, {"A01"});
    dup.validity = Validity::Duplicate;
    const auto set = link_findings(triad_model(), bundled_catalog(), {invalid, dup});
    CHECK(set.linked.empty());
    CHECK(set.quarantined.empty());
    REQUIRE(set.excluded.size() == 2);
    CHECK(set.excluded[0] == invalid); // garbage tags never inspected
    CHECK(set.excluded[1] == dup);
}

TEST_CASE("flows are valid subjects") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0109", {"SWC-107"}, {}, {"F01", "F02"})});
    REQUIRE(set.linked.size() == 1);
    CHECK(set.linked[0].finding.linked_subjects == std::vector<std::string>{"F01", "F02"});
}

TEST_CASE("one bad record does not block its neighbours") {
    const auto set = link_findings(triad_model(), bundled_catalog(),
                                   {tagged("BB-0110", {"SWC-107"}, {}, {"A01"}),
                                    tagged("BB-0111", {}, {}, {}),
                                    tagged("BB-0112", {"SWC-101"}, {}, {"A02"})});
    REQUIRE(set.linked.size() == 2);
    CHECK(set.linked[0].finding.finding_id == "BB-0110");
    CHECK(set.linked[1].finding.finding_id == "BB-0112");
    REQUIRE(set.quarantined.size() == 1);
    CHECK(set.quarantined[0].finding.finding_id == "BB-0111");
}
