#include "ehall/verify.hpp"

#include <cstdio>

using namespace ehall;

int main() {
  VerifyConfig cfg;
  auto results = run_acceptance(cfg);
  int failed = 0;
  for (auto& r : results) {
    std::printf("%-4s %2d %-30s %s\n", r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "SKIP", r.id,
                r.name.c_str(), r.detail.c_str());
    if (r.status == Status::Fail) {
      ++failed;
      std::printf("     lhs: %.400s\n     rhs: %.400s\n", r.lhs.c_str(), r.rhs.c_str());
    }
    // A skipped criterion did not run, so it cannot count as accepted.
    if (r.status == Status::Skip) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed ? 1 : 0;
}
