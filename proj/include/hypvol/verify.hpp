#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hypvol {

struct CheckResult {
  std::string id;
  bool pass = false;
  double discrepancy = 0.0;  // worst observed deviation
  double tolerance = 0.0;    // allowed deviation after scaling
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;
  double tolerance_scale = 1.0;  // multiplies every tolerance
  std::uint64_t seed = 20240601;
};

std::vector<std::string> verification_ids();
std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace hypvol
