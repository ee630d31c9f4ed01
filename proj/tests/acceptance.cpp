#include <chrono>
#include <cstdio>

#include "curvlie/verification.hpp"

using namespace curvlie;

int main() {
  VerifyOptions opt;
  bool ok = true;
  for (int id = 1; id <= 9; ++id) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = run_criterion(id, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %d  %-45s %s  max_dev=%.3e  checked=%d  failed=%d  (%.2fs)\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.hard ? "hard" : "soft", r.max_dev, r.checked, r.failed, secs);
    for (const auto& f : r.failures) std::printf("      failed: %s\n", f.c_str());
    for (const auto& n : r.notes) std::printf("      note: %s\n", n.c_str());
    for (const auto& a : r.advisories)
      std::printf("      advisory %s: %s  dev=%.3e  %s\n", a.match ? "match" : "MISMATCH", a.name.c_str(), a.max_dev,
                  a.note.c_str());
    if (r.hard && !r.pass) ok = false;
  }
  return ok ? 0 : 1;
}
