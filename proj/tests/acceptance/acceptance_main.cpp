#include <iostream>

#include "tbt/acceptance.hpp"

int main() {
  tbt::acceptance::Options options;
  int failed = 0;
  tbt::acceptance::run_all(options, [&](const tbt::acceptance::CriterionResult& r) {
    std::cout << tbt::acceptance::format_line(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
