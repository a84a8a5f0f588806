#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "charsum/verifier.hpp"

namespace charsum::cli {

enum class Command { sum, verify, scan, table };
enum class Format { jsonl, csv };

struct RunConfig {
    Command command = Command::verify;

    // sum
    std::uint64_t p = 0;
    std::string kind = "shifted";  // shifted | nonlinear | product | kloosterman | inverse-shift | exp
    std::vector<std::uint32_t> d;  // explicit set instead of a subgroup
    std::uint64_t q = 0;           // modulus for kind=exp
    std::uint64_t a = 1, b = 2, k = 1, l = 1;

    // verify / scan
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 61;
    std::vector<std::string> claims;
    std::string problem = "1";  // 1 | 5 | 6a | 6b
    std::size_t budget = 0;
    double epsilon = 0.1;

    // shared selectors
    std::string subgroup = "near-sqrt";  // near-sqrt | all | <order>
    std::string chi = "quadratic";       // quadratic | all | <index>
    ModeRequest mode = ModeRequest::automatic;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    std::string input;
    std::string output;  // empty = stdout
    Format format = Format::jsonl;
};

/// Either a parsed configuration or the exit code to return immediately
/// (0 after --help, 2 on a usage error).
using ParseResult = std::variant<RunConfig, int>;

ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string_view to_string(ModeRequest m) noexcept;

}  // namespace charsum::cli
