#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dress/coefficients.hpp"
#include "dress/group.hpp"

namespace dress {

enum class Check {
    Classify,
    CharTable,
    Marks,
    MackeyAxioms,
    GreenPairing,
    Dress,
    SProjective,
    Brauer,
    Artin,
    Hyperelementary,
    Tor,
    Colim,
    CounterexampleSearch,
};

const std::vector<Check>& all_checks();
std::string check_name(Check c);
/// Throws ConfigError on an unknown name.
Check parse_check(const std::string& s);
/// The statement a check verifies, e.g. "brauer-induction".
std::string statement_tag(Check c);

struct CampaignCaps {
    /// Groups of larger order are reported as errors; also bounds the
    /// counterexample search.
    int max_order = 60;
    /// Dress and Tor complexes are built through degree degree_cap, so
    /// homology is reported in degrees 0 .. degree_cap - 1.
    int degree_cap = 3;
    /// Explicit product G-sets and coend presentations.
    std::int64_t max_points = 20000;
    /// Orbit towers of the shifted Dress complex used for Tor.
    std::int64_t tower_points = 5000000;
    int random_squares = 50;
};

struct CampaignGroup {
    std::string name;
    GroupPtr group;
};

struct CampaignConfig {
    std::vector<CampaignGroup> groups;
    std::vector<Check> checks;
    Coefficients coefficients;
    CampaignCaps caps;
    std::uint64_t seed = 1;
};

/// Comma-separated corpus names, "corpus", or a JSON file holding an array of
/// corpus names and group specs (specs may carry a "name"). Throws ConfigError.
std::vector<CampaignGroup> load_groups(const std::string& arg);
/// Comma-separated check names; "all" selects every check. Throws ConfigError.
std::vector<Check> parse_checks(const std::string& arg);

enum class Status { Pass, Fail, Error };
std::string status_name(Status s);

struct CheckResult {
    std::string group;
    Check check = Check::Classify;
    Status status = Status::Pass;
    nlohmann::json details;
    std::string error;
    double seconds = 0;
};

struct CampaignReport {
    std::vector<CheckResult> results;
    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string summary() const;
};

/// One result per (group, check); counterexample-search adds a single result
/// for the corpus. Throws ConfigError when the caps are not positive.
CampaignReport run_campaign(const CampaignConfig& config);

/// Runs `check` on one group. Errors from the library are caught and
/// recorded in the result.
CheckResult run_check(const CampaignGroup& g, Check check, const CampaignConfig& config);

/// colim_map over FCY for every corpus group of order at most max_order, in
/// corpus order. Details hold every non-bijective case and the first one.
CheckResult counterexample_search(const CampaignConfig& config);

}  // namespace dress
