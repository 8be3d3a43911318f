#include "shuttlesat/Bench.hpp"
#include "shuttlesat/Encoder.hpp"
#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Solver.hpp"
#include "shuttlesat/Verify.hpp"
#include "shuttlesat/Viz.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

// Exit-code contract: 0 minimal/valid, 1 validation violations, 2 usage,
// 3 parse/configuration, 4 internal, 10 bound-only, 11 oracle unreachable.
constexpr int kExitMinimal = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitInternal = 4;
constexpr int kExitBound = 10;
constexpr int kExitUnreachable = 11;

using namespace shuttlesat;

void writeOrPrint(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write output file: " + path);
  out << text;
}

BackendFactory backendFactory(const std::string& solverPath) {
  if (!solverPath.empty())
    return [solverPath] { return makeExternalBackend(solverPath); };
  return [] { return makeDefaultBackend(); };
}

struct SolveArgs {
  std::string problemFile;
  std::string output;
  std::string exportDir;
  std::string backend;
  std::uint32_t minT = 0;
  std::uint32_t maxT = 128;
  double perHorizonTimeout = 0.0;
  double totalTimeout = 0.0;
  std::uint32_t parallelHorizons = 1;
  bool noLowerBoundSkip = false;
  bool validate = false;
};

int runSolve(const SolveArgs& args) {
  ProblemInstance problem = loadProblemFile(args.problemFile);
  SolveOptions options;
  options.budget.maxHorizon = args.maxT;
  if (args.perHorizonTimeout > 0)
    options.budget.perHorizonSeconds = args.perHorizonTimeout;
  if (args.totalTimeout > 0)
    options.budget.totalSeconds = args.totalTimeout;
  options.skipBelowSequenceLength = !args.noLowerBoundSkip;
  if (args.minT > 0)
    options.startHorizon = args.minT;
  options.parallelHorizons = args.parallelHorizons;

  SolveOutcome outcome =
      solveMinimal(problem, options, backendFactory(args.backend));

  if (!args.exportDir.empty()) {
    std::filesystem::create_directories(args.exportDir);
    for (const HorizonRecord& record : outcome.log) {
      CnfInstance cnf = encode(problem, record.horizon);
      std::string base = args.exportDir + "/horizon-" +
                         std::to_string(record.horizon);
      exportDimacs(cnf, base + ".cnf", base + ".map");
    }
  }

  std::string document = serializeOutcome(outcome);
  if (args.validate && outcome.schedule) {
    ValidationReport report = validateSchedule(
        problem, *outcome.schedule, ValidationMode::EncodingFaithful);
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(document);
    doc["validation"] = nlohmann::ordered_json::parse(serializeReport(report));
    document = doc.dump(2) + "\n";
    if (!report.valid()) {
      writeOrPrint(document, args.output);
      return kExitInternal;
    }
  }
  writeOrPrint(document, args.output);
  return outcome.kind == SolveOutcome::Kind::Minimal ? kExitMinimal
                                                     : kExitBound;
}

struct BenchArgs {
  std::vector<std::string> presets;
  std::string specFile;
  std::string csvFile;
  std::string tableFile;
  std::string backend;
  std::uint32_t runs = 0;
  std::uint32_t workers = 1;
  std::uint32_t maxT = 0;
  std::uint64_t seedBase = 0;
  double budget = 0.0;
  bool paperBudget = false;
  bool listPresets = false;
};

int runBench(const BenchArgs& args) {
  if (args.listPresets) {
    for (const BenchConfig& config : presetConfigs())
      std::cout << config.id << "\n";
    return 0;
  }
  std::vector<BenchConfig> configs;
  if (!args.specFile.empty()) {
    std::ifstream in(args.specFile);
    if (!in)
      throw std::runtime_error("cannot open bench spec: " + args.specFile);
    std::stringstream buffer;
    buffer << in.rdbuf();
    configs = parseBenchSpecs(buffer.str());
  }
  for (const std::string& name : args.presets) {
    std::optional<BenchConfig> preset = findPreset(name);
    if (!preset)
      throw std::invalid_argument("unknown preset '" + name + "'");
    configs.push_back(*preset);
  }
  if (configs.empty())
    throw std::invalid_argument("no bench configurations selected");
  for (BenchConfig& config : configs) {
    if (args.runs > 0)
      config.runs = args.runs;
    if (args.seedBase > 0)
      config.seedBase = args.seedBase;
    if (args.budget > 0)
      config.perRunSeconds = args.budget;
    if (args.paperBudget)
      config.perRunSeconds = 5000.0;
    if (args.maxT > 0)
      config.maxHorizon = args.maxT;
  }

  std::vector<BenchRow> rows =
      runBenchSuite(configs, backendFactory(args.backend), args.workers);
  std::string table = renderTable(rows);
  std::cout << table;
  if (!args.tableFile.empty())
    writeOrPrint(table, args.tableFile);
  if (!args.csvFile.empty())
    writeOrPrint(renderCsv(rows), args.csvFile);
  return 0;
}

int runOracle(const std::string& problemFile, std::uint32_t cap, bool noGuard,
              const std::string& output) {
  ProblemInstance problem = loadProblemFile(problemFile);
  OracleGuard guard;
  guard.enforce = !noGuard;
  OracleResult result = oracleMinimal(problem, cap, guard);

  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  if (result.minimalT)
    doc["minimal_t"] = *result.minimalT;
  else
    doc["minimal_t"] = "unreachable within cap";
  doc["explored_states"] = result.exploredStates;
  if (result.witness)
    doc["witness"] =
        nlohmann::ordered_json::parse(serializeSchedule(*result.witness));
  writeOrPrint(doc.dump(2) + "\n", output);
  return result.minimalT ? 0 : kExitUnreachable;
}

int runValidate(const std::string& problemFile, const std::string& scheduleFile,
                const std::string& modeName, const std::string& output) {
  ProblemInstance problem = loadProblemFile(problemFile);
  Schedule schedule = loadScheduleFile(scheduleFile);
  ValidationMode mode = modeName == "physical"
                            ? ValidationMode::Physical
                            : ValidationMode::EncodingFaithful;
  ValidationReport report = validateSchedule(problem, schedule, mode);
  std::cout << renderReport(report);
  if (!output.empty())
    writeOrPrint(serializeReport(report), output);
  return report.valid() ? 0 : kExitViolations;
}

int runViz(const std::string& problemFile, const std::string& scheduleFile) {
  ProblemInstance problem = loadProblemFile(problemFile);
  Schedule schedule = loadScheduleFile(scheduleFile);
  std::cout << renderFrames(problem, schedule);
  return 0;
}

int runExport(const std::string& problemFile, std::uint32_t horizon,
              const std::string& base) {
  ProblemInstance problem = loadProblemFile(problemFile);
  CnfInstance cnf = encode(problem, horizon);
  exportDimacs(cnf, base + ".cnf", base + ".map");
  std::cout << base << ".cnf: " << cnf.variableCount << " variables, "
            << cnf.clauses.size() << " clauses\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact QCCD ion-chain shuttling schedules via SAT"};
  app.require_subcommand(1);

  SolveArgs solveArgs;
  CLI::App* solve = app.add_subcommand(
      "solve", "Find the minimal shuttling horizon for a problem file");
  solve->add_option("problem", solveArgs.problemFile, "problem document")
      ->required();
  solve->add_option("--min-T", solveArgs.minT, "first horizon to probe");
  solve->add_option("--max-T", solveArgs.maxT, "horizon cap");
  solve->add_option("--per-horizon-timeout", solveArgs.perHorizonTimeout,
                    "wall-clock seconds per horizon");
  solve->add_option("--total-timeout", solveArgs.totalTimeout,
                    "wall-clock seconds for the whole sweep");
  solve->add_option("--export-dimacs", solveArgs.exportDir,
                    "write probed instances as DIMACS into this directory");
  solve->add_option("--output,-o", solveArgs.output, "result document path");
  solve->add_option("--backend", solveArgs.backend,
                    "external solver executable");
  solve->add_option("--parallel-horizons", solveArgs.parallelHorizons,
                    "number of horizons probed concurrently");
  solve->add_flag("--no-skip-lower-bound", solveArgs.noLowerBoundSkip,
                  "probe from T=1 instead of T=|S|");
  solve->add_flag("--validate", solveArgs.validate,
                  "append a validation report to the result");

  BenchArgs benchArgs;
  CLI::App* bench =
      app.add_subcommand("bench", "Run benchmark suites and emit CSV/table");
  bench->add_option("--preset", benchArgs.presets, "preset name (repeatable)");
  bench->add_option("--spec", benchArgs.specFile, "bench spec JSON file");
  bench->add_option("--runs", benchArgs.runs, "override runs per config");
  bench->add_option("--seed-base", benchArgs.seedBase, "override seed base");
  bench->add_option("--budget", benchArgs.budget,
                    "per-run wall-clock budget in seconds (default 300)");
  bench->add_flag("--paper-budget", benchArgs.paperBudget,
                  "use the 5000 s per-run budget");
  bench->add_option("--max-T", benchArgs.maxT, "override horizon cap");
  bench->add_option("--workers", benchArgs.workers, "concurrent runs");
  bench->add_option("--csv", benchArgs.csvFile, "write per-run CSV here");
  bench->add_option("--table", benchArgs.tableFile, "write text table here");
  bench->add_option("--backend", benchArgs.backend,
                    "external solver executable");
  bench->add_flag("--list-presets", benchArgs.listPresets,
                  "print preset names and exit");

  std::string oracleProblem, oracleOutput;
  std::uint32_t oracleCap = 16;
  bool oracleNoGuard = false;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustive minimal horizon for guarded-size instances");
  oracle->add_option("problem", oracleProblem, "problem document")->required();
  oracle->add_option("--cap", oracleCap, "horizon cap for the search");
  oracle->add_flag("--no-guard", oracleNoGuard, "override the size guard");
  oracle->add_option("--output,-o", oracleOutput, "result document path");

  std::string valProblem, valSchedule, valMode = "encoding", valOutput;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a schedule against the rules");
  validate->add_option("problem", valProblem, "problem document")->required();
  validate->add_option("schedule", valSchedule, "schedule document")
      ->required();
  validate->add_option("--mode", valMode, "encoding (default) or physical")
      ->check(CLI::IsMember({"encoding", "physical"}));
  validate->add_option("--output,-o", valOutput, "JSON report path");

  std::string vizProblem, vizSchedule;
  CLI::App* viz = app.add_subcommand("viz", "Render a schedule as text frames");
  viz->add_option("problem", vizProblem, "problem document")->required();
  viz->add_option("schedule", vizSchedule, "schedule document")->required();

  std::string exportProblem, exportBase = "instance";
  std::uint32_t exportHorizon = 0;
  CLI::App* exportCmd = app.add_subcommand(
      "export-dimacs", "Encode a problem at a fixed horizon and write DIMACS");
  exportCmd->add_option("problem", exportProblem, "problem document")
      ->required();
  exportCmd->add_option("--horizon,-T", exportHorizon, "encoding horizon")
      ->required();
  exportCmd->add_option("--out", exportBase,
                        "output base path (.cnf and .map are appended)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed())
      return runSolve(solveArgs);
    if (bench->parsed())
      return runBench(benchArgs);
    if (oracle->parsed())
      return runOracle(oracleProblem, oracleCap, oracleNoGuard, oracleOutput);
    if (validate->parsed())
      return runValidate(valProblem, valSchedule, valMode, valOutput);
    if (viz->parsed())
      return runViz(vizProblem, vizSchedule);
    if (exportCmd->parsed())
      return runExport(exportProblem, exportHorizon, exportBase);
  } catch (const ParseError& err) {
    std::cerr << "parse error at " << err.location() << ": " << err.what()
              << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitParse;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitParse;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
