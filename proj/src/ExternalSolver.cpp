#include "shuttlesat/SatBackend.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace shuttlesat {

namespace {

class ExternalBackend : public SatBackend {
public:
  explicit ExternalBackend(std::string executable)
      : executable_(std::move(executable)) {}

  SatResult solve(std::uint32_t variableCount,
                  const std::vector<std::vector<Lit>>& clauses,
                  std::optional<double> timeoutSeconds) override {
    namespace fs = std::filesystem;
    static std::atomic<std::uint64_t> counter{0};
    fs::path cnfPath =
        fs::temp_directory_path() /
        ("shuttlesat-" + std::to_string(::getpid()) + "-" +
         std::to_string(counter.fetch_add(1)) + ".cnf");

    {
      std::ofstream out(cnfPath);
      out << "p cnf " << variableCount << " " << clauses.size() << "\n";
      for (const std::vector<Lit>& clause : clauses) {
        for (Lit l : clause)
          out << l << " ";
        out << "0\n";
      }
    }

    std::string command;
    if (timeoutSeconds)
      command += "timeout " + std::to_string(static_cast<long>(
                                  *timeoutSeconds + 1.0)) + " ";
    command += "'" + executable_ + "' '" + cnfPath.string() + "' 2>/dev/null";

    FILE* pipe = ::popen(command.c_str(), "r");
    if (pipe == nullptr) {
      fs::remove(cnfPath);
      throw std::runtime_error("failed to launch external solver: " +
                               executable_);
    }
    std::string output;
    char buffer[4096];
    std::size_t got;
    while ((got = std::fread(buffer, 1, sizeof(buffer), pipe)) > 0)
      output.append(buffer, got);
    int status = ::pclose(pipe);
    fs::remove(cnfPath);

    SatResult result;
    int exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    bool sat = exitCode == 10 || output.find("s SATISFIABLE") != std::string::npos;
    bool unsat =
        exitCode == 20 || output.find("s UNSATISFIABLE") != std::string::npos;
    if (sat) {
      result.verdict = SatVerdict::Sat;
      result.model.assign(variableCount + 1, false);
      std::istringstream lines(output);
      std::string line;
      while (std::getline(lines, line)) {
        if (line.size() < 2 || line[0] != 'v')
          continue;
        std::istringstream vals(line.substr(1));
        long v;
        while (vals >> v) {
          if (v > 0 && static_cast<std::uint32_t>(v) <= variableCount)
            result.model[static_cast<std::size_t>(v)] = true;
        }
      }
    } else if (unsat) {
      result.verdict = SatVerdict::Unsat;
    } else if (exitCode == 124) {
      result.verdict = SatVerdict::Unknown; // timeout(1) convention
    } else {
      throw std::runtime_error("external solver produced no verdict (exit " +
                               std::to_string(exitCode) + ")");
    }
    return result;
  }

  std::string name() const override { return "external:" + executable_; }

private:
  std::string executable_;
};

} // namespace

std::unique_ptr<SatBackend> makeExternalBackend(std::string executable) {
  return std::make_unique<ExternalBackend>(std::move(executable));
}

} // namespace shuttlesat
