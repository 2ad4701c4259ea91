#pragma once
#include <string>
#include <vector>

#include "nlkg/config.hpp"
#include "nlkg/report.hpp"

namespace nlkg {

// Shared options of the CLI commands. With an empty out_dir nothing is
// written and the report is only returned.
struct CmdOptions {
  std::string out_dir;
};

// damping-rate scan against the lowest interaction derivative
struct ScanOptions {
  bool enabled = false;
  int points = 9;
  double lo = -2.0, hi = 2.0;  // scanned beta^{(j)}(0) range
};

Json cmd_spectrum(const RunConfig& c, const CmdOptions& opt = {});
Json cmd_fgr(const RunConfig& c, const CmdOptions& opt = {},
             const ScanOptions& scan = {});
// mode: "pde" | "reduced" | "both"
Json cmd_evolve(const RunConfig& c, const std::string& mode,
                const CmdOptions& opt = {});
Json cmd_sweep(const std::vector<RunConfig>& runs, const CmdOptions& opt = {});

}  // namespace nlkg
