#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "radialnet/profile.hpp"

namespace radialnet::cli {

// "a:b:n" (n equispaced points, ends included) or "z0,z1,...".
std::vector<double> parse_grid(const std::string& spec);

// "fd", "monomial:k", "profile:<name>" or a bare zoo name.
RadialProfile target_profile(const std::string& spec, int d);

struct BuildOutcome {
  int exit_code = kOk;
  std::string status;  // passed | verification_failed | width_overflow
  std::uint64_t seed = 0;
  double sup_error = 0.0;
  std::size_t width = 0;
  double wall_time = 0.0;
  nlohmann::json network;  // empty on width overflow
  nlohmann::json report;
  nlohmann::json plan;
  nlohmann::json error;
};

// Everything of cmd_build except the file output. An explicit seed wins over
// both the config and RADIALNET_SEED.
BuildOutcome run_build(const JobConfig& cfg, std::optional<std::uint64_t> seed = std::nullopt);

int cmd_fd(int d, const std::string& grid, double tol, const std::string& out_path, std::ostream& out);
int cmd_build(const JobConfig& cfg, std::ostream& out);
int cmd_verify(const JobConfig& cfg, std::ostream& out);
int cmd_coeffs(const JobConfig& cfg, std::ostream& out);
int cmd_fourier(const JobConfig& cfg, std::ostream& out);

// Adds tool/version, config echo, seed and wall time.
nlohmann::json with_provenance(nlohmann::json body, const JobConfig& cfg, std::uint64_t seed,
                               double wall_time);

}  // namespace radialnet::cli
