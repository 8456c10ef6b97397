// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <vector>

#include "mhdrt/report.hpp"

namespace mhdrt {

// Runs the full acceptance battery: oracle comparisons for the critical
// quantities, sign/monotonicity properties of the variational problem,
// fixed-point quality gates, a-priori bounds, refinement of the natural
// interface conditions, time-integration consistency, and determinism.
// One line per criterion is written to `log` as it completes; the returned
// verdicts are reusable by the report writer.  Every tolerance is fixed
// here, not configurable.
std::vector<CriterionResult> run_acceptance(std::ostream& log, unsigned seed = 12345);

}  // namespace mhdrt
