#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace radialnet::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kVerifyFailed = 3, kWidthOverflow = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat "key = value" text. '#' starts a comment, blank lines are skipped,
// later keys override earlier ones. Lists are comma separated values.
class JobConfig {
 public:
  static JobConfig parse(const std::string& text);
  static JobConfig load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  void set_default(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;  // UsageError when missing
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<std::string> list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  nlohmann::json to_json() const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& key, const std::string& s);
long parse_int(const std::string& key, const std::string& s);

// Config seed, overridden by RADIALNET_SEED when set.
std::uint64_t resolve_seed(const JobConfig& cfg);

// temp file + rename
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace radialnet::cli
