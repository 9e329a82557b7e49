#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "radialnet/bigrational.hpp"

namespace radialnet {

// Base for failures the CLI maps to dedicated exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BuildMode { Theoretical, Tuned };
std::string to_string(BuildMode m);
BuildMode parse_mode(const std::string& s);

// A width too large for doubles: kept as logs, plus the exact integer when
// it has at most kExactDigitCap decimal digits.
struct WidthEstimate {
  static constexpr double kExactDigitCap = 2e6;
  double ln_width = 0.0;
  double log10_width = 0.0;
  std::optional<BigInt> exact;

  nlohmann::json to_json() const;
};

class WidthOverflow : public Error {
 public:
  WidthOverflow(const std::string& what, WidthEstimate required, double budget)
      : Error(what), required_(std::move(required)), budget_(budget) {}
  const WidthEstimate& required() const { return required_; }
  double budget() const { return budget_; }

 private:
  WidthEstimate required_;
  double budget_;
};

}  // namespace radialnet
