#include <cstdio>

#include "bjorth/acceptance.hpp"

int main() {
  const auto results = bjorth::run_acceptance(1, true);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::printf("%s %s (%.1fs)%s%s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.details.empty() ? "" : " - ",
                r.details.c_str());
  }
  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                          : "ACCEPTANCE: failures present");
  return all ? 0 : 1;
}
