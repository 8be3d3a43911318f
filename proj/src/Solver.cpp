#include "shuttlesat/Solver.hpp"

#include "shuttlesat/Verify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace shuttlesat {

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

FixedResult solveFixed(const ProblemInstance& problem, std::uint32_t horizon,
                       std::optional<double> timeoutSeconds,
                       SatBackend& backend) {
  FixedResult result;
  Clock::time_point start = Clock::now();
  CnfInstance cnf = encode(problem, horizon);
  result.encodeSeconds = secondsSince(start);

  start = Clock::now();
  SatResult sat =
      backend.solve(cnf.variableCount, cnf.clauses, timeoutSeconds);
  result.solveSeconds = secondsSince(start);

  switch (sat.verdict) {
  case SatVerdict::Sat: {
    result.verdict = HorizonVerdict::Sat;
    Schedule schedule = decodeSchedule(sat.model, cnf.varmap);
    ValidationReport report = validateSchedule(
        problem, schedule, ValidationMode::EncodingFaithful);
    if (!report.valid())
      throw std::logic_error("decoded schedule fails validation:\n" +
                             renderReport(report));
    result.schedule = std::move(schedule);
    break;
  }
  case SatVerdict::Unsat:
    result.verdict = HorizonVerdict::Unsat;
    break;
  case SatVerdict::Unknown:
    result.verdict = HorizonVerdict::Timeout;
    break;
  }
  return result;
}

namespace {

std::uint32_t startHorizonFor(const ProblemInstance& problem,
                              const SolveOptions& options) {
  if (options.startHorizon)
    return std::max<std::uint32_t>(1, *options.startHorizon);
  if (options.skipBelowSequenceLength)
    return std::max<std::uint32_t>(
        1, static_cast<std::uint32_t>(problem.sequence.size()));
  return 1;
}

/// Largest horizon B such that unsatisfiability is proven for every
/// T <= B, combining the T < |S| lower-bound theorem with the contiguous
/// prefix of Unsat verdicts in the log.
std::uint32_t provenBound(const ProblemInstance& problem,
                          std::uint32_t firstProbed,
                          std::uint32_t firstUnresolved) {
  auto theorem = static_cast<std::uint32_t>(problem.sequence.size()) - 1;
  if (firstProbed > theorem + 1)
    return std::min(theorem, firstUnresolved - 1);
  return firstUnresolved - 1;
}

} // namespace

SolveOutcome solveMinimal(const ProblemInstance& problem,
                          const SolveOptions& options,
                          const BackendFactory& makeBackend) {
  validateProblem(problem);
  SolveOutcome outcome;
  const std::uint32_t first = startHorizonFor(problem, options);
  const std::uint32_t maxHorizon = options.budget.maxHorizon;
  const std::uint32_t width = std::max<std::uint32_t>(1, options.parallelHorizons);
  Clock::time_point sweepStart = Clock::now();

  auto remainingTotal = [&]() -> std::optional<double> {
    if (!options.budget.totalSeconds)
      return std::nullopt;
    return *options.budget.totalSeconds - secondsSince(sweepStart);
  };
  auto horizonBudget = [&]() -> std::optional<double> {
    std::optional<double> total = remainingTotal();
    if (!options.budget.perHorizonSeconds)
      return total;
    if (!total)
      return options.budget.perHorizonSeconds;
    return std::min(*options.budget.perHorizonSeconds, *total);
  };

  std::uint32_t next = first;
  while (next <= maxHorizon) {
    std::optional<double> budget = horizonBudget();
    if (budget && *budget <= 0.0) {
      outcome.kind = SolveOutcome::Kind::ProvenUnsatUpTo;
      outcome.horizon = provenBound(problem, first, next);
      return outcome;
    }

    const std::uint32_t batch =
        std::min(width, maxHorizon - next + 1);
    std::vector<FixedResult> results(batch);
    if (batch == 1) {
      std::unique_ptr<SatBackend> backend = makeBackend();
      results[0] = solveFixed(problem, next, budget, *backend);
    } else {
#pragma omp parallel for schedule(static, 1)
      for (std::int64_t k = 0; k < static_cast<std::int64_t>(batch); ++k) {
        std::unique_ptr<SatBackend> backend = makeBackend();
        results[k] = solveFixed(problem, next + static_cast<std::uint32_t>(k),
                                budget, *backend);
      }
    }

    for (std::uint32_t k = 0; k < batch; ++k)
      outcome.log.push_back(HorizonRecord{next + k, results[k].verdict,
                                          results[k].encodeSeconds,
                                          results[k].solveSeconds});
    for (std::uint32_t k = 0; k < batch; ++k) {
      const FixedResult& probe = results[k];
      if (probe.verdict == HorizonVerdict::Unsat)
        continue;
      if (probe.verdict == HorizonVerdict::Sat) {
        // Every smaller horizon has a completed Unsat verdict, so this is
        // the exact minimum.
        outcome.kind = SolveOutcome::Kind::Minimal;
        outcome.horizon = next + k;
        outcome.schedule = probe.schedule;
        return outcome;
      }
      // Timed out below any satisfiable horizon: the sweep cannot certify
      // minimality, so report the proven bound (the log keeps whatever the
      // larger probes found).
      outcome.kind = SolveOutcome::Kind::ProvenUnsatUpTo;
      outcome.horizon = provenBound(problem, first, next + k);
      return outcome;
    }
    next += batch;
  }

  outcome.kind = SolveOutcome::Kind::Exhausted;
  outcome.horizon = maxHorizon;
  return outcome;
}

std::string serializeOutcome(const SolveOutcome& outcome) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  switch (outcome.kind) {
  case SolveOutcome::Kind::Minimal:
    doc["outcome"] = "minimal";
    break;
  case SolveOutcome::Kind::ProvenUnsatUpTo:
    doc["outcome"] = "bound";
    break;
  case SolveOutcome::Kind::Exhausted:
    doc["outcome"] = "exhausted";
    break;
  }
  doc["horizon"] = outcome.horizon;
  nlohmann::ordered_json log = nlohmann::ordered_json::array();
  for (const HorizonRecord& record : outcome.log) {
    nlohmann::ordered_json item = nlohmann::ordered_json::object();
    item["t"] = record.horizon;
    item["result"] = record.verdict == HorizonVerdict::Sat     ? "sat"
                     : record.verdict == HorizonVerdict::Unsat ? "unsat"
                                                               : "timeout";
    item["encode_seconds"] = record.encodeSeconds;
    item["solve_seconds"] = record.solveSeconds;
    log.push_back(std::move(item));
  }
  doc["horizons"] = std::move(log);
  if (outcome.schedule) {
    doc["schedule"] =
        nlohmann::ordered_json::parse(serializeSchedule(*outcome.schedule));
  }
  return doc.dump(2) + "\n";
}

std::string renderDimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.variableCount << " " << cnf.clauses.size() << "\n";
  for (const std::vector<Lit>& clause : cnf.clauses) {
    for (Lit l : clause)
      out << l << " ";
    out << "0\n";
  }
  return out.str();
}

std::string renderSidecar(const CnfInstance& cnf) {
  const VarMap& vm = cnf.varmap;
  std::ostringstream out;
  out << "d " << vm.horizon() << " " << vm.edgeCount() << " "
      << vm.chainCount() << " " << vm.sequenceLength() << "\n";
  for (std::uint32_t t = 0; t <= vm.horizon(); ++t)
    for (EdgeIndex e = 0; e < vm.edgeCount(); ++e)
      for (ChainIndex i = 0; i < vm.chainCount(); ++i)
        out << "x " << vm.x(t, e, i) << " " << t << " " << e << " " << i
            << "\n";
  for (std::uint32_t t = 1; t <= vm.horizon(); ++t)
    for (std::uint32_t j = 0; j < vm.sequenceLength(); ++j)
      out << "s " << vm.s(t, j) << " " << t << " " << j << "\n";
  std::uint32_t id = vm.firstAuxVariable();
  for (const AuxVar& aux : vm.auxRegistry()) {
    out << "a " << id++ << " " << toString(aux.family);
    for (std::uint32_t arg : aux.args)
      out << " " << arg;
    out << "\n";
  }
  return out.str();
}

void exportDimacs(const CnfInstance& cnf, const std::string& cnfPath,
                  const std::string& sidecarPath) {
  std::ofstream cnfOut(cnfPath);
  if (!cnfOut)
    throw std::runtime_error("cannot write DIMACS file: " + cnfPath);
  cnfOut << renderDimacs(cnf);
  std::ofstream mapOut(sidecarPath);
  if (!mapOut)
    throw std::runtime_error("cannot write sidecar file: " + sidecarPath);
  mapOut << renderSidecar(cnf);
}

VarMap parseSidecarVarMap(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  std::uint32_t horizon, edges, chains, sequence;
  if (!(in >> tag >> horizon >> edges >> chains >> sequence) || tag != "d")
    throw ParseError("/", "sidecar must start with a 'd T E C S' line");
  return VarMap(horizon, edges, chains, sequence);
}

} // namespace shuttlesat
