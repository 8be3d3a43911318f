#include "shuttlesat/Schedule.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace shuttlesat {

using Json = nlohmann::ordered_json;

std::string serializeSchedule(const Schedule& schedule) {
  Json doc = Json::object();
  doc["horizon"] = schedule.horizon;
  doc["positions"] = schedule.positions;
  doc["satisfaction_times"] = schedule.satisfactionTimes;
  return doc.dump(2) + "\n";
}

Schedule parseSchedule(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("/", err.what());
  }
  if (!doc.is_object())
    throw ParseError("/", "expected a JSON object");
  // Accept a bare schedule document or a solve result embedding one.
  const Json* body = &doc;
  if (doc.contains("schedule"))
    body = &doc["schedule"];
  Schedule schedule;
  try {
    schedule.horizon = body->at("horizon").get<std::uint32_t>();
    schedule.positions =
        body->at("positions").get<std::vector<std::vector<EdgeIndex>>>();
    schedule.satisfactionTimes =
        body->at("satisfaction_times").get<std::vector<std::uint32_t>>();
  } catch (const nlohmann::json::exception& err) {
    throw ParseError("/", err.what());
  }
  return schedule;
}

Schedule loadScheduleFile(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open schedule file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseSchedule(buffer.str());
}

void saveScheduleFile(const Schedule& schedule, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write schedule file: " + path);
  out << serializeSchedule(schedule);
}

} // namespace shuttlesat
