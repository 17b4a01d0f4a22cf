#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ineqforge/family.hpp"

namespace ineqforge::cli {

enum class Status { Ok = 0, Unexpected = 1, Inconclusive = 2, Usage = 3 };

struct RunConfig {
    std::string command;
    std::string family = "gaussian";
    int d = 3;
    double a = 1.0;
    double alpha = -1.0;
    double beta = 0.75;
    double tstar = 2.0;
    double delta = 0.0;  // Hardy: delta_Omega instead of a when > 0
    int N = 0;
    double inflation = 0.0;
    std::string convention = "remainder";
    int ell = 0;
    double extra_r2 = 0.0;
    double extra_const = 0.0;
    double rin = 0.0;
    double rout = 0.0;
    double log_rin = 0.0;
    double log_rout = 0.0;
    bool log_domain = false;
    std::vector<int> nodes{1000, 2000, 4000};
    std::string t_grid = "0.01:0.9:50";
    int k = 1;
    std::string candidate = "partial_sum";
    double candidate_scale = 1.0;
    int samples = 100;
    unsigned long long seed = 1;
    std::string output = "-";
    std::string format = "auto";
    bool timestamp = true;
};

struct RunResult {
    Status status = Status::Ok;
    std::string output;
    std::string message;
};

// Flags and key=value config files (--config FILE) share one key set; later values win.
// Throws UsageError on unknown keys or malformed values.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
RunConfig parse(const std::vector<std::string>& args);
std::vector<std::string> valid_keys();

chains::FamilyTag make_family(const RunConfig& config);

// Executes the command without touching the filesystem.
RunResult execute(const RunConfig& config);

// execute() plus writing the output; I/O failures map to Status::Usage.
Status run(const RunConfig& config, std::string* message = nullptr);

int main(int argc, char** argv);

}  // namespace ineqforge::cli
