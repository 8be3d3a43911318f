#pragma once

#include "shuttlesat/Types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shuttlesat {

/// A complete shuttling schedule over horizon T: every chain's edge at
/// every time step, plus the step at which each sequence element was
/// satisfied (strictly increasing, all within 1..T).
struct Schedule {
  std::uint32_t horizon = 0;
  std::vector<std::vector<EdgeIndex>> positions; // [t][chain], t in 0..T
  std::vector<std::uint32_t> satisfactionTimes;  // [element] -> t

  bool operator==(const Schedule&) const = default;
};

std::string serializeSchedule(const Schedule& schedule);
Schedule parseSchedule(const std::string& text);

Schedule loadScheduleFile(const std::string& path);
void saveScheduleFile(const Schedule& schedule, const std::string& path);

} // namespace shuttlesat
