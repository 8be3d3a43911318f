#include "shuttlesat/Problem.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shuttlesat {

using Json = nlohmann::ordered_json;

Sequence sequenceFromGateList(
    const std::vector<std::vector<std::uint32_t>>& gates,
    const std::vector<ChainIndex>& qubitToChain) {
  if (gates.empty())
    throw std::invalid_argument("gate list must be non-empty");
  Sequence sequence;
  sequence.elements.reserve(gates.size());
  for (std::size_t g = 0; g < gates.size(); ++g) {
    const std::vector<std::uint32_t>& gate = gates[g];
    if (gate.empty())
      throw std::invalid_argument("gate " + std::to_string(g) +
                                  " touches no qubits");
    std::set<std::uint32_t> qubits(gate.begin(), gate.end());
    std::set<ChainIndex> chains;
    for (std::uint32_t q : qubits) {
      if (q >= qubitToChain.size())
        throw std::invalid_argument("gate " + std::to_string(g) +
                                    " references unmapped qubit " +
                                    std::to_string(q));
      chains.insert(qubitToChain[q]);
    }
    if (chains.size() < qubits.size())
      throw std::invalid_argument(
          "gate " + std::to_string(g) +
          " maps several qubits onto one chain (unsupported)");
    if (chains.size() > 2)
      throw std::invalid_argument("gate " + std::to_string(g) +
                                  " touches more than two chains (unsupported)");
    sequence.elements.push_back(
        SequenceElement{{chains.begin(), chains.end()}});
  }
  return sequence;
}

Sequence fullRegisterAccessSequence(std::uint32_t numChains) {
  if (numChains < 1)
    throw std::invalid_argument("sequence needs at least one chain");
  Sequence sequence;
  sequence.elements.reserve(numChains);
  for (ChainIndex i = 0; i < numChains; ++i)
    sequence.elements.push_back(SequenceElement{{i}});
  return sequence;
}

std::vector<std::vector<std::uint32_t>> qftGateList(std::uint32_t qubits) {
  if (qubits < 1)
    throw std::invalid_argument("qft needs at least one qubit");
  std::vector<std::vector<std::uint32_t>> gates;
  for (std::uint32_t k = 0; k < qubits; ++k) {
    gates.push_back({k});
    for (std::uint32_t j = k + 1; j < qubits; ++j)
      gates.push_back({k, j});
  }
  return gates;
}

std::vector<EdgeIndex> randomPlacement(const Layout& layout,
                                       std::uint32_t numChains,
                                       std::uint64_t seed) {
  const std::uint32_t memory = layout.memoryEdgeCount();
  if (numChains > memory)
    throw std::invalid_argument("cannot place " + std::to_string(numChains) +
                                " chains on " + std::to_string(memory) +
                                " memory edges");
  std::vector<EdgeIndex> pool(memory);
  for (EdgeIndex e = 0; e < memory; ++e)
    pool[e] = e;
  SplitMix64 rng(seed);
  for (std::uint32_t j = 0; j < numChains; ++j) {
    std::uint64_t k = j + rng.nextBelow(memory - j);
    std::swap(pool[j], pool[k]);
  }
  pool.resize(numChains);
  return pool;
}

void validateProblem(const ProblemInstance& problem) {
  std::set<EdgeIndex> used;
  for (ChainIndex i = 0; i < problem.placement.size(); ++i) {
    EdgeIndex e = problem.placement[i];
    if (e >= problem.layout.edgeCount() || !problem.layout.isMemory(e))
      throw std::invalid_argument("chain " + std::to_string(i) +
                                  " must start on a memory edge");
    if (!used.insert(e).second)
      throw std::invalid_argument("edge " + std::to_string(e) +
                                  " holds more than one chain");
  }
  if (problem.sequence.elements.empty())
    throw std::invalid_argument("sequence must be non-empty");
  for (std::size_t j = 0; j < problem.sequence.elements.size(); ++j) {
    const std::vector<ChainIndex>& chains = problem.sequence.elements[j].chains;
    if (chains.empty() || chains.size() > 2)
      throw std::invalid_argument("sequence element " + std::to_string(j) +
                                  " must reference one or two chains");
    if (!std::is_sorted(chains.begin(), chains.end()) ||
        std::adjacent_find(chains.begin(), chains.end()) != chains.end())
      throw std::invalid_argument("sequence element " + std::to_string(j) +
                                  " must list distinct chains in order");
    for (ChainIndex c : chains)
      if (c >= problem.placement.size())
        throw std::invalid_argument("sequence element " + std::to_string(j) +
                                    " references unknown chain " +
                                    std::to_string(c));
  }
}

namespace {

void rejectUnknownKeys(const Json& object, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ParseError(where + "/" + key, "unknown field");
  }
}

const Json& require(const Json& object, const std::string& where,
                    const char* key) {
  auto it = object.find(key);
  if (it == object.end())
    throw ParseError(where, std::string("missing field '") + key + "'");
  return *it;
}

std::uint32_t asUint(const Json& value, const std::string& where) {
  if (!value.is_number_unsigned())
    throw ParseError(where, "expected a non-negative integer");
  return value.get<std::uint32_t>();
}

GridCoord parseCoord(const Json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2)
    throw ParseError(where, "expected [row, col]");
  return GridCoord{asUint(value[0], where + "/0"), asUint(value[1], where + "/1")};
}

Layout parseLayout(const Json& spec, const std::string& where) {
  if (!spec.is_object())
    throw ParseError(where, "expected an object");
  rejectUnknownKeys(spec, where, {"grid", "explicit"});
  if (spec.contains("grid") == spec.contains("explicit"))
    throw ParseError(where, "layout must be either 'grid' or 'explicit'");

  if (spec.contains("grid")) {
    const Json& g = spec["grid"];
    const std::string path = where + "/grid";
    if (!g.is_object())
      throw ParseError(path, "expected an object");
    rejectUnknownKeys(g, path, {"m", "n", "v", "h", "exit", "entry"});
    std::uint32_t m = asUint(require(g, path, "m"), path + "/m");
    std::uint32_t n = asUint(require(g, path, "n"), path + "/n");
    std::uint32_t v = asUint(require(g, path, "v"), path + "/v");
    std::uint32_t h = asUint(require(g, path, "h"), path + "/h");
    std::optional<Attachment> attach;
    if (g.contains("exit") || g.contains("entry")) {
      if (!g.contains("exit") || !g.contains("entry"))
        throw ParseError(path, "'exit' and 'entry' must be given together");
      attach = Attachment{parseCoord(g["exit"], path + "/exit"),
                          parseCoord(g["entry"], path + "/entry")};
    }
    try {
      return Layout::grid(m, n, v, h, attach);
    } catch (const std::invalid_argument& err) {
      throw ParseError(path, err.what());
    }
  }

  const Json& x = spec["explicit"];
  const std::string path = where + "/explicit";
  if (!x.is_object())
    throw ParseError(path, "expected an object");
  rejectUnknownKeys(x, path, {"nodes", "edges"});
  const Json& nodesJson = require(x, path, "nodes");
  const Json& edgesJson = require(x, path, "edges");
  if (!nodesJson.is_array() || !edgesJson.is_array())
    throw ParseError(path, "'nodes' and 'edges' must be arrays");

  std::vector<Node> nodes;
  for (std::size_t i = 0; i < nodesJson.size(); ++i) {
    const std::string npath = path + "/nodes/" + std::to_string(i);
    if (!nodesJson[i].is_string())
      throw ParseError(npath, "expected a node kind string");
    std::string kind = nodesJson[i].get<std::string>();
    if (kind == "major")
      nodes.push_back(Node{NodeKind::Major});
    else if (kind == "minor")
      nodes.push_back(Node{NodeKind::Minor});
    else if (kind == "processing")
      nodes.push_back(Node{NodeKind::Processing});
    else
      throw ParseError(npath, "unknown node kind '" + kind + "'");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edgesJson.size(); ++i) {
    const std::string epath = path + "/edges/" + std::to_string(i);
    const Json& e = edgesJson[i];
    if (!e.is_object())
      throw ParseError(epath, "expected an edge object");
    rejectUnknownKeys(e, epath, {"u", "v", "kind"});
    Edge edge;
    edge.u = asUint(require(e, epath, "u"), epath + "/u");
    edge.v = asUint(require(e, epath, "v"), epath + "/v");
    const Json& kindJson = require(e, epath, "kind");
    if (!kindJson.is_string())
      throw ParseError(epath + "/kind", "expected a kind string");
    std::string kind = kindJson.get<std::string>();
    if (kind == "memory")
      edge.kind = EdgeKind::Memory;
    else if (kind == "inbound")
      edge.kind = EdgeKind::Inbound;
    else if (kind == "outbound")
      edge.kind = EdgeKind::Outbound;
    else
      throw ParseError(epath + "/kind", "unknown edge kind '" + kind + "'");
    edges.push_back(edge);
  }
  try {
    return Layout::explicitGraph(std::move(nodes), std::move(edges));
  } catch (const std::invalid_argument& err) {
    throw ParseError(path, err.what());
  }
}

Json layoutToJson(const Layout& layout) {
  Json spec = Json::object();
  if (const auto& params = layout.gridParams()) {
    Json g = Json::object();
    g["m"] = params->m;
    g["n"] = params->n;
    g["v"] = params->v;
    g["h"] = params->h;
    g["exit"] = Json::array({params->attach.exit.row, params->attach.exit.col});
    g["entry"] =
        Json::array({params->attach.entry.row, params->attach.entry.col});
    spec["grid"] = std::move(g);
    return spec;
  }
  Json nodes = Json::array();
  for (const Node& node : layout.nodes())
    nodes.push_back(toString(node.kind));
  Json edges = Json::array();
  for (const Edge& edge : layout.edges()) {
    Json e = Json::object();
    e["u"] = edge.u;
    e["v"] = edge.v;
    e["kind"] = toString(edge.kind);
    edges.push_back(std::move(e));
  }
  Json x = Json::object();
  x["nodes"] = std::move(nodes);
  x["edges"] = std::move(edges);
  spec["explicit"] = std::move(x);
  return spec;
}

} // namespace

ProblemInstance parseProblem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError("/", err.what());
  }
  if (!doc.is_object())
    throw ParseError("/", "expected a JSON object");
  rejectUnknownKeys(doc, "", {"layout", "chains", "sequence", "metadata"});

  ProblemInstance problem{parseLayout(require(doc, "/", "layout"), "/layout"),
                          {},
                          {},
                          std::nullopt,
                          {}};

  const Json& chains = require(doc, "/", "chains");
  if (!chains.is_array())
    throw ParseError("/chains", "expected an array");
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const std::string cpath = "/chains/" + std::to_string(i);
    const Json& c = chains[i];
    if (!c.is_object())
      throw ParseError(cpath, "expected a chain object");
    rejectUnknownKeys(c, cpath, {"id", "edge"});
    std::uint32_t id = asUint(require(c, cpath, "id"), cpath + "/id");
    if (id != i)
      throw ParseError(cpath + "/id",
                       "chain ids must be contiguous and in order");
    problem.placement.push_back(
        asUint(require(c, cpath, "edge"), cpath + "/edge"));
  }

  const Json& sequence = require(doc, "/", "sequence");
  if (!sequence.is_array())
    throw ParseError("/sequence", "expected an array");
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    const std::string spath = "/sequence/" + std::to_string(j);
    const Json& element = sequence[j];
    if (!element.is_array())
      throw ParseError(spath, "expected an array of chain ids");
    SequenceElement out;
    for (std::size_t k = 0; k < element.size(); ++k)
      out.chains.push_back(asUint(element[k], spath + "/" + std::to_string(k)));
    std::sort(out.chains.begin(), out.chains.end());
    problem.sequence.elements.push_back(std::move(out));
  }

  if (doc.contains("metadata")) {
    const Json& meta = doc["metadata"];
    if (!meta.is_object())
      throw ParseError("/metadata", "expected an object");
    rejectUnknownKeys(meta, "/metadata", {"seed", "label"});
    if (meta.contains("seed")) {
      if (!meta["seed"].is_number_unsigned())
        throw ParseError("/metadata/seed", "expected a non-negative integer");
      problem.seed = meta["seed"].get<std::uint64_t>();
    }
    if (meta.contains("label")) {
      if (!meta["label"].is_string())
        throw ParseError("/metadata/label", "expected a string");
      problem.label = meta["label"].get<std::string>();
    }
  }

  try {
    validateProblem(problem);
  } catch (const std::invalid_argument& err) {
    throw ParseError("/", err.what());
  }
  return problem;
}

std::string serializeProblem(const ProblemInstance& problem) {
  Json doc = Json::object();
  doc["layout"] = layoutToJson(problem.layout);
  Json chains = Json::array();
  for (ChainIndex i = 0; i < problem.placement.size(); ++i) {
    Json c = Json::object();
    c["id"] = i;
    c["edge"] = problem.placement[i];
    chains.push_back(std::move(c));
  }
  doc["chains"] = std::move(chains);
  Json sequence = Json::array();
  for (const SequenceElement& element : problem.sequence.elements)
    sequence.push_back(element.chains);
  doc["sequence"] = std::move(sequence);
  if (problem.seed || !problem.label.empty()) {
    Json meta = Json::object();
    if (problem.seed)
      meta["seed"] = *problem.seed;
    if (!problem.label.empty())
      meta["label"] = problem.label;
    doc["metadata"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

ProblemInstance loadProblemFile(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open problem file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parseProblem(buffer.str());
}

void saveProblemFile(const ProblemInstance& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write problem file: " + path);
  out << serializeProblem(problem);
}

} // namespace shuttlesat
