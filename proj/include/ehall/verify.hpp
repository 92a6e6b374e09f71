#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ehall {

enum class Status { Pass, Fail, Skip };
std::string status_name(Status s);

struct CheckResult {
  int id = 0;
  std::string name;
  Status status = Status::Skip;
  std::string detail;
  // Both sides of the first violated identity, when status is Fail.
  std::string lhs, rhs;
  double seconds = 0;
};

struct VerifyConfig {
  // Largest extension degree F_{q^k} any check may touch; checks needing more are skipped.
  int budget_degree = 12;
  // Truncation order for zeta and L-series.
  int order = 8;
  std::uint64_t seed = 1;
  // Test mode: flip the sign of the basic commutator when delta(y) >= 2 in the straightening checks.
  bool sign_flip = false;
  // Run only these criteria (1..11); empty means all.
  std::vector<int> only;
};

// Extension degree each criterion needs at its stated sizes.
int criterion_degree(int id, const VerifyConfig& cfg);
std::string criterion_name(int id);
constexpr int kCriteria = 11;

// One criterion; exceptions are reported as failures.
CheckResult run_criterion(int id, const VerifyConfig& cfg);
// All selected criteria, concurrently; results in id order.
std::vector<CheckResult> run_acceptance(const VerifyConfig& cfg);

}  // namespace ehall
