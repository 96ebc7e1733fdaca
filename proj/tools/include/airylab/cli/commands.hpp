#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "airylab/cli/config.hpp"

namespace airylab::cli {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
/// The run completed but its verdict/convergence predicate failed.
inline constexpr int kExitFailed = 1;
/// Invalid invocation, configuration or input.
inline constexpr int kExitUsage = 2;

// Each command writes its artifacts under out_dir and a one-line summary to log.
int cmd_evolve(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_picard(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_persistence(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_verify_estimates(const RunConfig& cfg, const std::vector<std::string>& ids, const std::filesystem::path& out_dir,
                         std::ostream& log);
int cmd_soliton(const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);
int cmd_calibrate(const RunConfig& cfg, const std::vector<std::string>& ids, const std::filesystem::path& out_dir,
                  std::ostream& log);

/// "all" (or empty) expands to every registered id; anything else is split on
/// commas and validated.
std::vector<std::string> resolve_ids(const std::vector<std::string>& requested);
std::vector<std::string> split_ids(const std::string& list);

/// Full front end: `airylab <subcommand> [--config path] [--ids E1,E5] [--out dir]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace airylab::cli
