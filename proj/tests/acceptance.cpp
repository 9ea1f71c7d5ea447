// Acceptance run: one line per criterion at full sample counts.
#include <cstdio>
#include <exception>

#include "specdist/verify.hpp"

using namespace specdist;

int main() {
  VerifyConfig cfg;
  int failed_criteria = 0;
  for (int k = 1; k <= kCriteriaCount; ++k) {
    bool ok = true;
    double seconds = 0.0;
    std::string why;
    try {
      for (const CheckResult& r : run_criterion(k, cfg)) {
        seconds += r.seconds;
        std::printf("    %-32s %s measured=%.3g threshold=%.3g samples=%d%s%s\n", r.name.c_str(),
                    r.passed ? "ok  " : "FAIL", r.measured, r.threshold, r.samples, r.detail.empty() ? "" : " ",
                    r.detail.c_str());
        if (!r.passed) ok = false;
      }
    } catch (const std::exception& e) {
      ok = false;
      why = e.what();
    }
    if (!ok) ++failed_criteria;
    std::printf("criterion %2d: %s  %s (%.1f s)%s%s\n", k, ok ? "PASS" : "FAIL", criterion_title(k), seconds,
                why.empty() ? "" : " ", why.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", kCriteriaCount - failed_criteria, kCriteriaCount);
  return failed_criteria == 0 ? 0 : 1;
}
