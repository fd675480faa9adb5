#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace diaghyp {

// Exit codes.
inline constexpr int kExitDecided = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BatchJob {
  std::string command;
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::vector<std::int64_t> e;
  std::optional<std::uint32_t> degree_bound;
};

struct BatchConfig {
  std::filesystem::path output_dir;
  std::vector<BatchJob> jobs;
  // Jobs that could not even be decoded, by position.
  std::vector<std::pair<std::size_t, std::string>> malformed;
};

// Relative output directories resolve against the config file's directory.
// Throws std::runtime_error when the file is unreadable or not a JSON object.
BatchConfig load_batch_config(const std::filesystem::path& path);

struct BatchOutcome {
  std::size_t index = 0;
  std::string command;
  std::int64_t n = 0;
  std::int64_t p = 0;
  bool rejected = false;
  std::string verdict;  // or the rejection reason
  std::optional<std::filesystem::path> file;
  std::int64_t elapsed_ms = 0;
};

std::vector<BatchOutcome> batch_verify(const BatchConfig& config);
void print_batch_summary(const std::vector<BatchOutcome>& outcomes, std::ostream& out);

}  // namespace diaghyp
