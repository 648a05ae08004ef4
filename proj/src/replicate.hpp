#ifndef BLOCKCORR_REPLICATE_HPP
#define BLOCKCORR_REPLICATE_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace blockcorr {

/// One published value re-computed from a fixture. status is PASS, FAIL or
/// SKIP (external data not present, or an expensive check not requested).
struct ReplicateRow {
    std::string fixture;
    std::string name;
    std::string status;
    std::string detail;
};

struct ReplicateReport {
    std::vector<ReplicateRow> rows;

    int failures() const;
    int skips() const;
    bool all_pass() const { return failures() == 0; }
    std::string render() const;
    nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& replicate_fixture_names();

/// Re-run the published analyses for one fixture ("all" for every fixture).
/// expensive enables the long exhaustive checks that are skipped by default.
ReplicateReport replicate(const std::string& fixture, const std::string& fixture_dir = "",
                          bool expensive = false);

} // namespace blockcorr

#endif
