#pragma once

#include <string>
#include <vector>

#include "ineqforge/spectral.hpp"
#include "ineqforge/weight_chain.hpp"

namespace ineqforge::report {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Header line with the column names, then rows with 12 significant digits.
std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// t, W_0..W_N, partial_sum.
Table weights_table(const chains::WeightChain& chain, int N, const std::vector<double>& t);
// Per schedule step: r_in, r_out, log_r_in, log_r_out, nodes, lambda_min, tolerance.
Table lambda_table(const spectral::VerificationReport& report);

// A non-empty timestamp is written as the "timestamp" field; everything else is deterministic.
std::string to_json(const spectral::VerificationReport& report, const std::string& timestamp = "");
spectral::VerificationReport report_from_json(const std::string& text);

std::string to_json(const spectral::RemainderProbe& probe, const std::string& timestamp = "");

std::string to_string(chains::RhsConvention conv);
chains::RhsConvention convention_from_string(const std::string& s);

}  // namespace ineqforge::report
