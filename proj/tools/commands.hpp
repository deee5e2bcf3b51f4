#pragma once

#include "anomalab/target.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace anomalab::cli {

// exit code 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// exit code 3
struct InvariantFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string target = "kp2";
    std::string weights;  // comma list, default 1, 2, ..., n+1
    bool solve_constraint = false;
    std::string fix;      // weights kept fixed by the constraint solve
    int solution = 0;     // which constraint solution to use
    bool roots_of_unity = false;
    int order = 10;
    int ztrunc = 6;
    int genus = 2;
    std::vector<std::string> series;
    bool asymptotics = false;
    bool graph_sum = false;
    std::vector<int> insertions;  // 1 = H, 2 = H^2
    bool ledger = false;
    bool lift = false;
    std::vector<std::string> suites;
    std::string out;
    std::string format = "json";
    std::string cache;
};

Target resolve_target(const RunConfig& c);
void validate(const RunConfig& c);

nlohmann::json run_compute(const RunConfig& c);
// fills report; returns the name of the first failing check or ""
std::string run_verify(const RunConfig& c, nlohmann::json& report);
nlohmann::json run_weights(const RunConfig& c);

std::string render(const nlohmann::json& doc, const std::string& format);

int cmd_compute(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out);
int cmd_weights(const RunConfig& c, std::ostream& out);

}  // namespace anomalab::cli
