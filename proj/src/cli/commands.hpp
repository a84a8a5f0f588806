#pragma once

#include <iosfwd>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace charsum::cli {

/// Full command line entry point. Returns the process exit code:
/// 0 all pass, 1 a failure or capacity record, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_sum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// One scan record for an odd prime p, using H = subgroup_near_sqrt.
ScanRecord scan_prime(const RunConfig& cfg, std::uint32_t p);

/// Scan records for every odd prime in [cfg.p_min, cfg.p_max], in order.
std::vector<ScanRecord> run_scan(const RunConfig& cfg);

}  // namespace charsum::cli
