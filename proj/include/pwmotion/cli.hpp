#pragma once

#include <string>
#include <vector>

namespace pwmotion {

/// Runs one subcommand (classify, construct, slice-check, poisson-check,
/// mn-transform, mn-decay, schrodinger-rn, schrodinger-mn, plancherel).
/// Writes JSON verdicts and CSV curves into the output directory.
/// Returns 0 on pass, 2 when a certificate or verdict check fails, 1 on
/// usage or runtime errors. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace pwmotion
