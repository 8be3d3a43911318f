#include "shuttlesat/Bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace shuttlesat {

using Json = nlohmann::ordered_json;

std::uint32_t BenchRow::timeoutCount() const {
  std::uint32_t count = 0;
  for (const BenchRunRecord& r : records)
    if (r.kind != SolveOutcome::Kind::Minimal)
      ++count;
  return count;
}

std::optional<double> BenchRow::meanMinimalT() const {
  double sum = 0.0;
  std::uint32_t done = 0;
  for (const BenchRunRecord& r : records)
    if (r.kind == SolveOutcome::Kind::Minimal) {
      sum += r.horizon;
      ++done;
    }
  if (done == 0)
    return std::nullopt;
  return sum / done;
}

std::optional<double> BenchRow::meanSeconds() const {
  double sum = 0.0;
  std::uint32_t done = 0;
  for (const BenchRunRecord& r : records)
    if (r.kind == SolveOutcome::Kind::Minimal) {
      sum += r.encodeSeconds + r.solveSeconds;
      ++done;
    }
  if (done == 0)
    return std::nullopt;
  return sum / done;
}

std::optional<std::uint32_t> BenchRow::commonProvenBound() const {
  std::optional<std::uint32_t> bound;
  for (const BenchRunRecord& r : records) {
    if (r.kind == SolveOutcome::Kind::Minimal)
      continue;
    bound = bound ? std::min(*bound, r.horizon) : r.horizon;
  }
  return bound;
}

ProblemInstance benchInstance(const BenchConfig& config, std::uint32_t run) {
  Layout layout = Layout::grid(config.m, config.n, config.v, config.h);
  std::uint64_t seed = config.seedBase + run;
  std::vector<EdgeIndex> placement =
      randomPlacement(layout, config.chains, seed);
  Sequence sequence;
  if (config.family == BenchConfig::Family::FullRegisterAccess) {
    sequence = fullRegisterAccessSequence(config.chains);
  } else {
    std::vector<ChainIndex> identity(config.qubits);
    std::iota(identity.begin(), identity.end(), 0);
    sequence = sequenceFromGateList(qftGateList(config.qubits), identity);
  }
  ProblemInstance problem{std::move(layout), std::move(placement),
                          std::move(sequence), seed,
                          config.id + "/run" + std::to_string(run)};
  validateProblem(problem);
  return problem;
}

std::vector<BenchRow> runBenchSuite(const std::vector<BenchConfig>& configs,
                                    const BackendFactory& makeBackend,
                                    std::uint32_t workers) {
  std::vector<BenchRow> rows(configs.size());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> jobs;
  for (std::uint32_t c = 0; c < configs.size(); ++c) {
    rows[c].config = configs[c];
    ProblemInstance probe = benchInstance(configs[c], 0);
    rows[c].memoryEdges = probe.layout.memoryEdgeCount();
    rows[c].sequenceLength =
        static_cast<std::uint32_t>(probe.sequence.size());
    rows[c].records.resize(configs[c].runs);
    for (std::uint32_t r = 0; r < configs[c].runs; ++r)
      jobs.emplace_back(c, r);
  }

  const auto jobCount = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1u, workers))
  for (std::int64_t j = 0; j < jobCount; ++j) {
    const auto [c, r] = jobs[static_cast<std::size_t>(j)];
    const BenchConfig& config = configs[c];
    ProblemInstance problem = benchInstance(config, r);
    SolveOptions options;
    options.budget.totalSeconds = config.perRunSeconds;
    options.budget.maxHorizon = config.maxHorizon;
    SolveOutcome outcome = solveMinimal(problem, options, makeBackend);
    BenchRunRecord record;
    record.run = r;
    record.seed = config.seedBase + r;
    record.kind = outcome.kind;
    record.horizon = outcome.horizon;
    for (const HorizonRecord& h : outcome.log) {
      record.encodeSeconds += h.encodeSeconds;
      record.solveSeconds += h.solveSeconds;
    }
    rows[c].records[r] = record;
  }
  return rows;
}

namespace {

BenchConfig makeConfig(std::string id, std::uint32_t m, std::uint32_t n,
                       std::uint32_t v, std::uint32_t h,
                       BenchConfig::Family family, std::uint32_t chains,
                       std::uint32_t qubits) {
  BenchConfig config;
  config.id = std::move(id);
  config.m = m;
  config.n = n;
  config.v = v;
  config.h = h;
  config.family = family;
  config.chains = chains;
  config.qubits = qubits;
  return config;
}

std::vector<BenchConfig> buildPresets() {
  using Family = BenchConfig::Family;
  std::vector<BenchConfig> presets;
  for (std::uint32_t h : {5u, 11u, 19u, 29u})
    for (std::uint32_t chains : {6u, 12u, 18u}) {
      if (h == 5 && chains == 18)
        continue; // 12 memory edges cannot hold 18 chains
      presets.push_back(makeConfig("fra-racetrack-h" + std::to_string(h) +
                                       "-c" + std::to_string(chains),
                                   2, 2, 1, h, Family::FullRegisterAccess,
                                   chains, 0));
    }
  for (std::uint32_t k : {3u, 4u, 5u, 6u})
    for (std::uint32_t chains : {6u, 12u, 18u}) {
      if (k == 3 && chains == 18)
        continue;
      presets.push_back(makeConfig("fra-lattice-" + std::to_string(k) + "x" +
                                       std::to_string(k) + "-c" +
                                       std::to_string(chains),
                                   k, k, 1, 1, Family::FullRegisterAccess,
                                   chains, 0));
    }
  for (std::uint32_t q : {5u, 6u, 7u, 8u}) {
    presets.push_back(makeConfig("qft-racetrack-h5-q" + std::to_string(q), 2,
                                 2, 1, 5, Family::Qft, q, q));
    presets.push_back(makeConfig("qft-lattice-3x3-q" + std::to_string(q), 3,
                                 3, 1, 1, Family::Qft, q, q));
  }
  return presets;
}

} // namespace

const std::vector<BenchConfig>& presetConfigs() {
  static const std::vector<BenchConfig> presets = buildPresets();
  return presets;
}

std::optional<BenchConfig> findPreset(const std::string& name) {
  std::string wanted = name;
  if (name == "racetrack-small")
    wanted = "fra-racetrack-h5-c6";
  else if (name == "lattice-small")
    wanted = "fra-lattice-3x3-c6";
  else if (name == "lattice-medium")
    wanted = "fra-lattice-4x4-c6";
  for (const BenchConfig& config : presetConfigs())
    if (config.id == wanted)
      return config;
  return std::nullopt;
}

std::vector<BenchConfig> parseBenchSpecs(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("/", err.what());
  }
  if (!doc.is_array())
    throw ParseError("/", "bench spec must be an array of configurations");
  std::vector<BenchConfig> configs;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const std::string where = "/" + std::to_string(k);
    const Json& item = doc[k];
    if (!item.is_object())
      throw ParseError(where, "expected a configuration object");
    BenchConfig config;
    for (const auto& [key, value] : item.items()) {
      if (key == "id")
        config.id = value.get<std::string>();
      else if (key == "m")
        config.m = value.get<std::uint32_t>();
      else if (key == "n")
        config.n = value.get<std::uint32_t>();
      else if (key == "v")
        config.v = value.get<std::uint32_t>();
      else if (key == "h")
        config.h = value.get<std::uint32_t>();
      else if (key == "family") {
        std::string family = value.get<std::string>();
        if (family == "full-register-access")
          config.family = BenchConfig::Family::FullRegisterAccess;
        else if (family == "qft")
          config.family = BenchConfig::Family::Qft;
        else
          throw ParseError(where + "/family", "unknown family '" + family + "'");
      } else if (key == "chains")
        config.chains = value.get<std::uint32_t>();
      else if (key == "qubits")
        config.qubits = value.get<std::uint32_t>();
      else if (key == "runs")
        config.runs = value.get<std::uint32_t>();
      else if (key == "seed_base")
        config.seedBase = value.get<std::uint64_t>();
      else if (key == "per_run_seconds")
        config.perRunSeconds = value.get<double>();
      else if (key == "max_horizon")
        config.maxHorizon = value.get<std::uint32_t>();
      else
        throw ParseError(where + "/" + key, "unknown field");
    }
    if (config.family == BenchConfig::Family::Qft) {
      if (config.qubits == 0)
        throw ParseError(where, "qft configurations need 'qubits'");
      config.chains = config.qubits;
    }
    if (config.id.empty())
      throw ParseError(where, "configurations need an 'id'");
    if (config.runs < 1)
      throw ParseError(where + "/runs", "must be at least 1");
    configs.push_back(std::move(config));
  }
  return configs;
}

std::string renderCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "config,m,n,v,h,family,qubits,chains,memory_edges,occupancy_pct,"
         "seq_len,run,seed,outcome,horizon,encode_seconds,solve_seconds,"
         "total_seconds,timeout\n";
  for (const BenchRow& row : rows) {
    const BenchConfig& c = row.config;
    for (const BenchRunRecord& r : row.records) {
      const char* outcome = r.kind == SolveOutcome::Kind::Minimal ? "minimal"
                            : r.kind == SolveOutcome::Kind::ProvenUnsatUpTo
                                ? "bound"
                                : "exhausted";
      out << c.id << ',' << c.m << ',' << c.n << ',' << c.v << ',' << c.h
          << ','
          << (c.family == BenchConfig::Family::Qft ? "qft"
                                                   : "full-register-access")
          << ',' << c.qubits << ',' << c.chains << ',' << row.memoryEdges
          << ',' << std::fixed << std::setprecision(1)
          << 100.0 * c.chains / row.memoryEdges << ',' << row.sequenceLength
          << ',' << r.run << ',' << r.seed << ',' << outcome << ','
          << r.horizon << ',' << std::setprecision(3) << r.encodeSeconds
          << ',' << r.solveSeconds << ','
          << (r.encodeSeconds + r.solveSeconds) << ','
          << (r.kind == SolveOutcome::Kind::Minimal ? 0 : 1) << "\n";
      out.unsetf(std::ios_base::floatfield);
    }
  }
  return out.str();
}

std::string renderTable(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(26) << "config" << std::right << std::setw(12)
      << "m n v h" << std::setw(14) << "|C|/|E_M|" << std::setw(6) << "|S|"
      << std::setw(9) << "T^" << std::setw(12) << "t_CPU" << std::setw(7)
      << "t.o." << "\n";
  for (const BenchRow& row : rows) {
    const BenchConfig& c = row.config;
    std::ostringstream dims;
    dims << c.m << " " << c.n << " " << c.v << " " << c.h;
    std::ostringstream occ;
    occ << c.chains << "/" << row.memoryEdges << " ("
        << static_cast<int>(std::lround(100.0 * c.chains / row.memoryEdges))
        << "%)";
    std::ostringstream tHat;
    if (auto mean = row.meanMinimalT()) {
      tHat << std::fixed << std::setprecision(1) << *mean;
    } else if (auto bound = row.commonProvenBound()) {
      tHat << ">" << *bound;
    } else {
      tHat << "-";
    }
    std::ostringstream cpu;
    if (auto mean = row.meanSeconds())
      cpu << std::fixed << std::setprecision(1) << *mean << " s";
    else
      cpu << "t.o.";
    out << std::left << std::setw(26) << c.id << std::right << std::setw(12)
        << dims.str() << std::setw(14) << occ.str() << std::setw(6)
        << row.sequenceLength << std::setw(9) << tHat.str() << std::setw(12)
        << cpu.str() << std::setw(7) << row.timeoutCount() << "\n";
  }
  return out.str();
}

} // namespace shuttlesat
