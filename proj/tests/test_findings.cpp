#include "mbfm/errors.hpp"
#include "mbfm/findings.hpp"

#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace mbfm;

namespace {

Finding sample_finding() {
    Finding f;
    f.finding_id = "BB-0001";
    f.submitted = {2021, 3, 14};
    f.severity = Severity::High;
    f.title = "Reentrancy in withdraw path";
    f.program_variant = ProgramVariant::OpenEnded;
    f.validity = Validity::Valid;
    f.swc_tags = {"SWC-107"};
    f.scsvs_tags = {"V8.1"};
    f.linked_subjects = {"A01"};
    f.team = "protocol";
    f.reporter = "rep-1";
    return f;
}

} // namespace

TEST_CASE("jsonl round trip preserves records and order") {
    std::vector<Finding> in{sample_finding(), sample_finding()};
    in[1].finding_id = "BB-0002";
    in[1].validity = Validity::Duplicate;
    in[1].swc_tags = {};
    const std::string raw = serialize_findings_jsonl(in);
    CHECK(std::count(raw.begin(), raw.end(), '\n') == 2);
    CHECK(parse_findings_jsonl(raw) == in);
}

TEST_CASE("jsonl parser skips blank lines") {
    const std::string raw = "\n" + serialize_findings_jsonl({sample_finding()}) + "   \n\n";
    CHECK(parse_findings_jsonl(raw).size() == 1);
    CHECK(parse_findings_jsonl("").empty());
    CHECK(parse_findings_jsonl("\n\n").empty());
}

TEST_CASE("jsonl errors carry 1-based line numbers") {
    const std::string good = serialize_findings_jsonl({sample_finding()});
    SUBCASE("syntax") {
        try {
            parse_findings_jsonl(good + "{oops\n");
            FAIL("expected SyntaxError");
        } catch (const SyntaxError& e) {
            CHECK(e.line == 2);
        }
    }
    SUBCASE("unknown field") {
        std::string bad = good;
        bad.insert(bad.find("\"team\""), "\"notes\":\"x\",");
        try {
            parse_findings_jsonl(bad);
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.line == 1);
            CHECK(e.field_path == "notes");
        }
    }
    SUBCASE("missing field") {
        CHECK_THROWS_AS(parse_findings_jsonl(R"({"finding_id":"BB-0001"})"), SchemaError);
    }
    SUBCASE("bad enum value") {
        std::string bad = good;
        const auto pos = bad.find("\"High\"");
        bad.replace(pos, 6, "\"Hyper\"");
        CHECK_THROWS_AS(parse_findings_jsonl(bad), SchemaError);
    }
    SUBCASE("bad date") {
        std::string bad = good;
        const auto pos = bad.find("2021-03-14");
        bad.replace(pos, 10, "2021-03-99");
        CHECK_THROWS_AS(parse_findings_jsonl(bad), SchemaError);
    }
}

TEST_CASE("csv parses the same records") {
    const std::string raw =
        "finding_id,submitted,severity,title,program_variant,validity,"
        "swc_tags,scsvs_tags,linked_subjects,team,reporter\n"
        "BB-0001,2021-03-14,High,Reentrancy in withdraw path,OpenEnded,Valid,"
        "SWC-107,V8.1,A01,protocol,rep-1\n";
    const auto parsed = parse_findings_csv(raw);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0] == sample_finding());
}

TEST_CASE("csv quoting and semicolon lists") {
    const std::string raw =
        "finding_id,submitted,severity,title,program_variant,validity,"
        "swc_tags,scsvs_tags,linked_subjects,team,reporter\n"
        "BB-0002,2021-06-01,Low,\"Rounding, with a \"\"twist\"\"\",InviteOnly,Valid,"
        "SWC-101;SWC-102,,A01;F01,,\n";
    const auto parsed = parse_findings_csv(raw);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].title == "Rounding, with a \"twist\"");
    CHECK(parsed[0].swc_tags == std::vector<std::string>{"SWC-101", "SWC-102"});
    CHECK(parsed[0].scsvs_tags.empty());
    CHECK(parsed[0].linked_subjects == std::vector<std::string>{"A01", "F01"});
    CHECK(parsed[0].team.empty());
}

TEST_CASE("csv structural errors") {
    const std::string header =
        "finding_id,submitted,severity,title,program_variant,validity,"
        "swc_tags,scsvs_tags,linked_subjects,team,reporter\n";
    SUBCASE("unknown column") {
        CHECK_THROWS_AS(parse_findings_csv("finding_id,oops\n"), SchemaError);
    }
    SUBCASE("missing column") {
        CHECK_THROWS_AS(parse_findings_csv("finding_id,submitted\n"), SchemaError);
    }
    SUBCASE("cell count mismatch") {
        CHECK_THROWS_AS(parse_findings_csv(header + "BB-0001,2021-01-01\n"), SchemaError);
    }
    SUBCASE("bad enum value names the row") {
        try {
            parse_findings_csv(header + "BB-0001,2021-01-01,Catastrophic,t,OpenEnded,Valid,"
                                        ",,A01,,\n");
            FAIL("expected SchemaError");
        } catch (const SchemaError& e) {
            CHECK(e.line == 2);
            CHECK(e.field_path == "severity");
        }
    }
    SUBCASE("unterminated quote") {
        CHECK_THROWS_AS(parse_findings_csv(header + "\"BB-0001,2021-01-01,Low,t,OpenEnded,"
                                                    "Valid,,,A01,,\n"),
                        SyntaxError);
    }
    SUBCASE("empty file means no records") {
        CHECK(parse_findings_csv("").empty());
    }
}

TEST_CASE("period_containing snaps to the anchored grid") {
    const Date anchor{2021, 1, 1};

    const Period q1 = period_containing({2021, 2, 17}, PeriodScheme::Quarterly, anchor);
    CHECK(q1.label == "2021-Q1");
    CHECK(q1.start == Date{2021, 1, 1});
    CHECK(q1.end == Date{2021, 4, 1});
    CHECK(q1.contains({2021, 1, 1}));
    CHECK(q1.contains({2021, 3, 31}));
    CHECK_FALSE(q1.contains({2021, 4, 1}));

    const Period q4 = period_containing({2021, 12, 31}, PeriodScheme::Quarterly, anchor);
    CHECK(q4.label == "2021-Q4");
    CHECK(q4.end == Date{2022, 1, 1});

    const Period h2 = period_containing({2021, 7, 1}, PeriodScheme::SemiAnnual, anchor);
    CHECK(h2.label == "2021-H2");
    CHECK(h2.start == Date{2021, 7, 1});
    CHECK(h2.end == Date{2022, 1, 1});
}

TEST_CASE("period grid extends backwards before the anchor") {
    const Date anchor{2021, 1, 1};
    const Period p = period_containing({2020, 12, 31}, PeriodScheme::Quarterly, anchor);
    CHECK(p.label == "2020-Q4");
    CHECK(p.start == Date{2020, 10, 1});
    CHECK(p.end == Date{2021, 1, 1});
}

TEST_CASE("off-quarter anchor shifts the grid and the labels") {
    // anchor mid-year: periods run Feb-Apr, May-Jul, ... labels still name
    // the quarter containing the start month
    const Period p = period_containing({2021, 4, 30}, PeriodScheme::Quarterly, {2021, 2, 1});
    CHECK(p.start == Date{2021, 2, 1});
    CHECK(p.end == Date{2021, 5, 1});
    CHECK(p.label == "2021-Q1");
}

TEST_CASE("assign_periods buckets findings and keeps gaps") {
    std::vector<Finding> fs(3, sample_finding());
    fs[0].submitted = {2021, 1, 10};
    fs[1].submitted = {2021, 2, 20};
    fs[2].submitted = {2021, 8, 5}; // skips Q2 entirely
    const auto buckets = assign_periods(fs, PeriodScheme::Quarterly, {2021, 1, 1});
    REQUIRE(buckets.size() == 3);
    CHECK(buckets[0].first.label == "2021-Q1");
    CHECK(buckets[0].second.size() == 2);
    CHECK(buckets[1].first.label == "2021-Q2");
    CHECK(buckets[1].second.empty()); // the gap stays visible
    CHECK(buckets[2].first.label == "2021-Q3");
    CHECK(buckets[2].second.size() == 1);
}

TEST_CASE("assign_periods rejects bad input") {
    CHECK_THROWS_AS(assign_periods({}, PeriodScheme::Quarterly, {2021, 1, 1}), EmptyInput);
    CHECK_THROWS_AS(assign_periods({sample_finding()}, PeriodScheme::Quarterly, {2021, 1, 15}),
                    ConfigError);
}

TEST_CASE("single finding yields a single period") {
    const auto buckets = assign_periods({sample_finding()}, PeriodScheme::SemiAnnual,
                                        {2021, 1, 1});
    REQUIRE(buckets.size() == 1);
    CHECK(buckets[0].first.label == "2021-H1");
    CHECK(buckets[0].second.size() == 1);
}
