#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dress/campaign.hpp"
#include "dress/corpus.hpp"
#include "dress/error.hpp"

using namespace dress;

namespace {

CampaignConfig config(const std::string& groups, const std::string& checks) {
    CampaignConfig c;
    c.groups = load_groups(groups);
    c.checks = parse_checks(checks);
    return c;
}

// Reports with timings removed.
nlohmann::json stable(const CampaignReport& r) {
    auto j = r.to_json();
    for (auto& x : j["results"]) x.erase("seconds");
    return j;
}

}  // namespace

TEST_CASE("brauer over a small corpus") {
    auto r = run_campaign(config("S3,S4,A4,Q8,D4", "brauer"));
    REQUIRE(r.results.size() == 5);
    CHECK(r.all_passed());
    for (const auto& x : r.results) {
        CHECK(x.status == Status::Pass);
        CHECK(x.details["surjective"] == true);
    }
    auto j = r.to_json();
    CHECK(j["results"][0]["statement"] == "brauer-induction");
    CHECK(r.summary().find("5/5 checks passed") != std::string::npos);
}

TEST_CASE("counterexample search up to order 16") {
    CampaignConfig c;
    c.checks = {Check::CounterexampleSearch};
    c.caps.max_order = 16;
    auto r = run_campaign(c);
    REQUIRE(r.results.size() == 1);
    const auto& d = r.results[0].details;
    CHECK(r.results[0].status == Status::Pass);
    bool q8 = false;
    for (const auto& h : d["hits"]) {
        CHECK(h["order"].get<int>() <= 16);
        if (h["group"] == "Q8") {
            q8 = true;
            CHECK(h["surjective"] == false);
            CHECK(h["exponent"] == 2);
            CHECK(h["witness"] == 0);
        }
    }
    CHECK(q8);
    CHECK(d["first_hit"]["order"] == 8);
    // Cyclic groups never appear.
    for (const auto& h : d["hits"]) {
        auto G = named_group(h["group"].get<std::string>());
        CHECK(G->exponent() < G->order());
    }
}

TEST_CASE("empty check set") {
    CampaignConfig c;
    auto r = run_campaign(c);
    CHECK(r.results.empty());
    CHECK(r.all_passed());
    CHECK(parse_checks("").empty());
}

TEST_CASE("configuration errors") {
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidGroupSpec;
    };
    CHECK(code([] { parse_checks("brauer,nope"); }) == ErrorCode::ConfigError);
    CHECK(code([] { load_groups("C3,X9"); }) == ErrorCode::ConfigError);
    CHECK(code([] { load_groups(""); }) == ErrorCode::ConfigError);
    CampaignConfig c = config("C3", "brauer");
    c.caps.degree_cap = 0;
    CHECK(code([&] { run_campaign(c); }) == ErrorCode::ConfigError);
}

TEST_CASE("group lists") {
    auto g = load_groups("SL(2,3), S4");
    REQUIRE(g.size() == 2);
    CHECK(g[0].name == "SL(2,3)");
    CHECK(g[0].group->order() == 24);
    CHECK(load_groups("corpus").size() == corpus_names().size());
    CHECK(parse_checks("all").size() == all_checks().size());

    const std::string path = "campaign_groups_test.json";
    {
        std::ofstream f(path);
        f << R"(["C4", {"name": "K4", "type": "table", "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}])";
    }
    auto h = load_groups(path);
    REQUIRE(h.size() == 2);
    CHECK(h[1].name == "K4");
    CHECK(h[1].group->order() == 4);
    auto r = run_campaign([&] {
        CampaignConfig c;
        c.groups = h;
        c.checks = {Check::Artin, Check::Colim};
        return c;
    }());
    CHECK(r.all_passed());
    {
        std::ofstream f(path);
        f << R"([{"type": "table", "table": [[0,1],[0,1]]}])";
    }
    CHECK_THROWS_AS(load_groups(path), Error);
    std::remove(path.c_str());
}

TEST_CASE("oversized groups are reported, not fatal") {
    CampaignConfig c = config("C3,A5", "char-table");
    c.caps.max_order = 12;
    auto r = run_campaign(c);
    REQUIRE(r.results.size() == 2);
    CHECK(r.results[0].status == Status::Pass);
    CHECK(r.results[1].status == Status::Error);
    CHECK(r.results[1].error.find("OrderCapExceeded") != std::string::npos);
    CHECK(!r.all_passed());
}

TEST_CASE("reports are deterministic for a fixed seed") {
    CampaignConfig c = config("S3,Q8", "mackey-axioms,s-projective,dress");
    c.caps.random_squares = 10;
    c.seed = 99;
    auto a = stable(run_campaign(c)), b = stable(run_campaign(c));
    CHECK(a == b);
    CHECK(a["passed"] == true);
}

TEST_CASE("brauer and artin verdicts match the colimit map") {
    for (const char* name : {"S3", "Q8", "D4", "A4", "C6"}) {
        CampaignConfig c = config(name, "brauer,artin,colim");
        auto r = run_campaign(c);
        REQUIRE(r.results.size() == 3);
        CHECK(r.all_passed());
        const auto& colim = r.results[2].details;
        CHECK(r.results[0].details["surjective"] == colim["E"]["surjective"]);
        CHECK(r.results[1].details["integral"]["surjective"] == colim["FCY"]["surjective"]);
    }
}

TEST_CASE("every check on two groups") {
    CampaignConfig c = config("C5,S3", "all");
    c.caps.random_squares = 5;
    auto r = run_campaign(c);
    CHECK(r.results.size() == 2 * (all_checks().size() - 1) + 1);
    CHECK(r.all_passed());
    // The Burnside control appears for the prime order group only.
    CHECK(r.results[10].details.contains("TR-burnside"));
    CHECK(!r.results[12 + 10].details.contains("TR-burnside"));
}
