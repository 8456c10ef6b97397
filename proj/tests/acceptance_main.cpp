// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "mhdrt/verify.hpp"

int main() {
  const std::vector<mhdrt::CriterionResult> verdicts = mhdrt::run_acceptance(std::cout);
  for (const mhdrt::CriterionResult& v : verdicts)
    if (!v.passed) return 1;
  return 0;
}
