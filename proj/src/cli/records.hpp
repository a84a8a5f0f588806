#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "charsum/verifier.hpp"

namespace charsum::cli {

using Json = nlohmann::ordered_json;

/// Extremal statistic of one scan problem at one prime.
struct ScanRecord {
    std::string problem;
    std::uint32_t p = 0;
    std::uint32_t h = 0;
    double h_over_sqrt_p = 0.0;
    std::int64_t chi = -1;  // -1 for additive-character problems
    Mode mode = Mode::numeric;
    std::string grid;  // "full" or "sample"
    std::uint64_t tuples = 0;
    double statistic = 0.0;  // max |sum| / sqrt(p)
    double mean = 0.0;
    std::vector<Param> achiever;
    double recheck = 0.0;  // statistic recomputed from the achiever alone
    std::vector<std::uint64_t> histogram;
};

/// Bins of width 0.1 on [0, 1) plus one bin for ratios >= 1.
inline constexpr std::size_t kHistogramBins = 11;
std::size_t histogram_bin(double ratio);

std::string format_double(double x);
std::string csv_field(std::string_view s);
std::string params_string(const std::vector<Param>& params);

Json to_json(const Verdict& v);
Json to_json(const ScanRecord& r);

std::string verdict_csv_header();
std::string to_csv(const Verdict& v);
std::string scan_csv_header();
std::string to_csv(const ScanRecord& r);

}  // namespace charsum::cli
