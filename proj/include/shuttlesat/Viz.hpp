#pragma once

#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Schedule.hpp"

#include <string>

namespace shuttlesat {

/// Renders one ASCII frame per time step: the memory-zone grid with chain
/// labels on occupied edges, the interface edges, and the sequence
/// elements satisfied at that step. Explicit (non-grid) layouts fall back
/// to a per-step position listing.
std::string renderFrames(const ProblemInstance& problem,
                         const Schedule& schedule);

} // namespace shuttlesat
