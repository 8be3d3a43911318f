#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shuttlesat/Encoder.hpp"
#include "shuttlesat/SatBackend.hpp"
#include "support/Dpll.hpp"
#include "support/Fixtures.hpp"

#include <set>

using namespace shuttlesat;
using testsupport::projectedModelsOver;

namespace {

ProblemInstance lineProblem(std::uint32_t sites,
                            std::vector<EdgeIndex> placement,
                            Sequence sequence) {
  ProblemInstance problem{testsupport::lineLayout(sites), std::move(placement),
                          std::move(sequence), std::nullopt, ""};
  validateProblem(problem);
  return problem;
}

Sequence singleton(ChainIndex chain) {
  return Sequence{{SequenceElement{{chain}}}};
}

// One-hot helper: the set of positions a chain may occupy at time t,
// derived by exhaustive model projection over that chain's x-variables.
std::set<EdgeIndex> reachableAt(const ProblemInstance& problem,
                                std::uint32_t horizon, std::uint32_t t,
                                ChainIndex chain) {
  CnfInstance cnf = encode(problem, horizon);
  std::vector<std::uint32_t> vars;
  for (EdgeIndex e = 0; e < problem.layout.edgeCount(); ++e)
    vars.push_back(static_cast<std::uint32_t>(cnf.varmap.x(t, e, chain)));
  std::set<EdgeIndex> reachable;
  for (const std::vector<bool>& bits :
       projectedModelsOver(cnf.variableCount, cnf.clauses, vars)) {
    EdgeIndex edge = 0;
    int hits = 0;
    for (EdgeIndex e = 0; e < bits.size(); ++e)
      if (bits[e]) {
        edge = e;
        ++hits;
      }
    REQUIRE(hits == 1); // exactly-one placement must force one-hot rows
    reachable.insert(edge);
  }
  return reachable;
}

bool satisfiableWithUnits(const CnfInstance& cnf,
                          const std::vector<Lit>& units) {
  testsupport::Dpll solver(cnf.variableCount, cnf.clauses);
  return solver.satisfiableAssuming(units);
}

// For grid-sized probes the reference DPLL is too slow; the CDCL backend
// (differentially tested against the DPLL elsewhere) answers in
// milliseconds.
bool satisfiableWithUnitsCdcl(const CnfInstance& cnf,
                              const std::vector<Lit>& units) {
  std::vector<std::vector<Lit>> clauses = cnf.clauses;
  for (Lit unit : units)
    clauses.push_back({unit});
  return makeCdclBackend()
             ->solve(cnf.variableCount, clauses, std::nullopt)
             .verdict == SatVerdict::Sat;
}

} // namespace

TEST_CASE("variable counts follow the layout formula") {
  ProblemInstance problem = testsupport::tinyInstance(3);
  for (std::uint32_t T : {1u, 2u, 4u}) {
    CnfInstance cnf = encode(problem, T);
    const VarMap& vm = cnf.varmap;
    std::uint64_t xs = static_cast<std::uint64_t>(T + 1) *
                       problem.layout.edgeCount() * problem.chainCount();
    std::uint64_t ss = static_cast<std::uint64_t>(T) * problem.sequence.size();
    CHECK(vm.positionCount() == xs);
    CHECK(vm.sequenceCount() == ss);
    CHECK(cnf.variableCount == xs + ss + vm.auxRegistry().size());
    CHECK(cnf.stats.total() == cnf.clauses.size());
  }
  CHECK_THROWS_AS(encode(problem, 0), std::invalid_argument);
}

TEST_CASE("initial state pins every position variable at t=0") {
  // Four chains on a 4x4 double-site grid, interface empty.
  Layout layout = Layout::grid(4, 4, 2, 2);
  ProblemInstance problem{std::move(layout),
                          {0, 8, 26, 42},
                          singleton(3),
                          std::nullopt,
                          ""};
  validateProblem(problem);
  CnfInstance cnf = encode(problem, 1);
  const VarMap& vm = cnf.varmap;

  std::size_t units = static_cast<std::size_t>(problem.layout.edgeCount()) *
                      problem.chainCount();
  CHECK(cnf.stats.initialState == units);
  std::set<Lit> expected;
  for (EdgeIndex e = 0; e < problem.layout.edgeCount(); ++e)
    for (ChainIndex i = 0; i < problem.chainCount(); ++i)
      expected.insert(problem.placement[i] == e ? vm.x(0, e, i)
                                                : -vm.x(0, e, i));
  std::set<Lit> actual;
  for (std::size_t c = 0; c < units; ++c) {
    REQUIRE(cnf.clauses[c].size() == 1);
    actual.insert(cnf.clauses[c][0]);
  }
  CHECK(actual == expected);
}

TEST_CASE("encoding is deterministic") {
  ProblemInstance problem = testsupport::tinyInstance(7);
  CnfInstance a = encode(problem, 3);
  CnfInstance b = encode(problem, 3);
  CHECK(a.variableCount == b.variableCount);
  CHECK(a.clauses == b.clauses);
}

TEST_CASE("single chain roams its extended neighborhood") {
  // One chain at the far end of a 3-site street; with nothing in the way
  // it may stay, shift along the street, or exit through the interface.
  ProblemInstance problem = lineProblem(3, {2}, singleton(0));
  const Layout& layout = problem.layout;
  std::set<EdgeIndex> reachable = reachableAt(problem, 4, 1, 0);
  CHECK(reachable == std::set<EdgeIndex>{0, 1, 2, layout.outboundEdge()});
}

TEST_CASE("occupied interior edges block junction crossings") {
  // Chain 0 sits at the street's far end, chain 1 in the middle. Chain 0
  // cannot cross to the interface side while chain 1 blocks the path at
  // the pre-move state; it may only stay or slide next to the blocker if
  // the blocker leaves.
  ProblemInstance problem =
      lineProblem(3, {2, 1}, Sequence{{SequenceElement{{1}}}});
  std::set<EdgeIndex> reachable = reachableAt(problem, 5, 1, 0);
  CHECK(reachable == std::set<EdgeIndex>{1, 2});
}

TEST_CASE("state validity constraints exclude bad placements") {
  ProblemInstance problem = lineProblem(3, {2, 1},
                                        Sequence{{SequenceElement{{1}}}});
  CnfInstance cnf = encode(problem, 2);
  const VarMap& vm = cnf.varmap;

  // A chain on two edges at once.
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.x(1, 0, 0), vm.x(1, 1, 0)}));
  // A chain absent everywhere (forcing all-but-necessary off suffices:
  // pin every edge's variable false for chain 0 at t=1).
  {
    std::vector<Lit> units;
    for (EdgeIndex e = 0; e < problem.layout.edgeCount(); ++e)
      units.push_back(-vm.x(1, e, 0));
    CHECK_FALSE(satisfiableWithUnits(cnf, units));
  }
  // Two chains on one memory edge.
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.x(1, 2, 0), vm.x(1, 2, 1)}));
}

TEST_CASE("inbound edge holds up to two chains, never three") {
  // Three chains near the interface of a 4-site street.
  ProblemInstance problem =
      lineProblem(4, {0, 1, 2}, Sequence{{SequenceElement{{0, 1}}}});
  const EdgeIndex eIn = problem.layout.inboundEdge();
  CnfInstance cnf = encode(problem, 8);
  const VarMap& vm = cnf.varmap;

  // Two chains together on the inbound edge are allowed (and required by
  // the pair element).
  CHECK(satisfiableWithUnits(cnf, {vm.x(4, eIn, 0), vm.x(4, eIn, 1)}));
  // Three are not.
  CHECK_FALSE(satisfiableWithUnits(
      cnf, {vm.x(6, eIn, 0), vm.x(6, eIn, 1), vm.x(6, eIn, 2)}));
}

TEST_CASE("node crossing forbids swaps and double junction use") {
  // Two chains on a 2-site street cannot swap across the shared minor.
  ProblemInstance problem =
      lineProblem(2, {0, 1}, Sequence{{SequenceElement{{1}}}});
  CnfInstance cnf = encode(problem, 6);
  const VarMap& vm = cnf.varmap;
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.x(1, 1, 0), vm.x(1, 0, 1)}));

  // One chain crossing the junction while the other stays is fine.
  CHECK(satisfiableWithUnits(
      cnf, {vm.x(1, problem.layout.outboundEdge(), 0), vm.x(1, 1, 1)}));

  // No arrival indicators exist for t=0.
  for (const AuxVar& aux : vm.auxRegistry())
    if (aux.family == AuxFamily::Arrival)
      CHECK(aux.args[0] >= 1);
}

TEST_CASE("mutually blocked junction paths on the double-site grid") {
  // Two chains in one street between two junctions, each blocking the
  // other's way to one junction; only the moves passing the opposite
  // junction remain.
  Layout layout = Layout::grid(4, 4, 2, 2);
  EdgeIndex left = layout.horizontalEdge(0, 1, 0);   // at junction (0,1)
  EdgeIndex right = layout.horizontalEdge(0, 1, 1);  // at junction (0,2)
  ProblemInstance problem{std::move(layout),
                          {right, left},
                          singleton(0),
                          std::nullopt,
                          ""};
  validateProblem(problem);
  const Layout& g = problem.layout;
  CnfInstance cnf = encode(problem, 8);
  const VarMap& vm = cnf.varmap;

  // Chain 0 (at `right`) cannot pass junction (0,1): the path is blocked.
  CHECK_FALSE(satisfiableWithUnitsCdcl(
      cnf, {vm.x(1, g.horizontalEdge(0, 0, 1), 0)}));
  CHECK_FALSE(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.verticalEdge(0, 1, 0), 0)}));
  // It can pass the opposite junction (0,2).
  CHECK(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.horizontalEdge(0, 2, 0), 0)}));
  CHECK(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.verticalEdge(0, 2, 0), 0)}));

  // Chain 1 (at `left`) mirrors this: junction (0,2) is blocked...
  CHECK_FALSE(satisfiableWithUnitsCdcl(
      cnf, {vm.x(1, g.horizontalEdge(0, 2, 0), 1)}));
  CHECK_FALSE(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.verticalEdge(0, 2, 0), 1)}));
  // ...while junction (0,1) is passable.
  CHECK(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.horizontalEdge(0, 0, 1), 1)}));
  CHECK(satisfiableWithUnitsCdcl(cnf, {vm.x(1, g.verticalEdge(0, 1, 0), 1)}));
}

TEST_CASE("processing direction rules") {
  ProblemInstance problem = lineProblem(3, {0}, singleton(0));
  const Layout& layout = problem.layout;
  const EdgeIndex eOut = layout.outboundEdge();
  const EdgeIndex eIn = layout.inboundEdge();
  CnfInstance cnf = encode(problem, 6);
  const VarMap& vm = cnf.varmap;

  // From the outbound edge the chain must be on the inbound edge next.
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.x(2, eOut, 0), -vm.x(3, eIn, 0)}));
  // Appearing on the inbound edge without outbound/inbound history is
  // impossible (the chain starts in memory).
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.x(1, eIn, 0)}));
  // The chain may end the schedule on the outbound edge: no forced-move
  // instance exists for t = T.
  CHECK(satisfiableWithUnits(cnf, {vm.x(6, eOut, 0)}));
}

TEST_CASE("sequence constraints order the elements") {
  ProblemInstance problem = lineProblem(
      3, {0, 1}, Sequence{{SequenceElement{{0}}, SequenceElement{{1}}}});
  CnfInstance cnf = encode(problem, 8);
  const VarMap& vm = cnf.varmap;

  // Out-of-order satisfaction (element 1 before element 0) is excluded.
  CHECK_FALSE(satisfiableWithUnits(cnf, {vm.s(3, 1), vm.s(5, 0)}));
  // In-order satisfaction is fine.
  CHECK(satisfiableWithUnits(cnf, {vm.s(2, 0), vm.s(5, 1)}));
  // An element's chains must be on the inbound edge when it fires.
  CHECK_FALSE(satisfiableWithUnits(
      cnf, {vm.s(2, 0), -vm.x(2, problem.layout.inboundEdge(), 0)}));
}

TEST_CASE("decoding reads back positions and satisfaction times") {
  ProblemInstance problem = lineProblem(3, {0}, singleton(0));
  CnfInstance cnf = encode(problem, 2);
  std::unique_ptr<SatBackend> backend = makeCdclBackend();
  SatResult sat = backend->solve(cnf.variableCount, cnf.clauses, std::nullopt);
  REQUIRE(sat.verdict == SatVerdict::Sat);

  Schedule schedule = decodeSchedule(sat.model, cnf.varmap);
  CHECK(schedule.horizon == 2);
  CHECK(schedule.positions[0] == problem.placement);
  REQUIRE(schedule.satisfactionTimes.size() == 1);
  CHECK(schedule.satisfactionTimes[0] >= 1);
  CHECK(schedule.satisfactionTimes[0] <= 2);
  CHECK(schedule.positions[schedule.satisfactionTimes[0]][0] ==
        problem.layout.inboundEdge());

  // A model breaking exactly-one placement signals an encoder bug.
  std::vector<bool> broken = sat.model;
  broken[static_cast<std::size_t>(cnf.varmap.x(1, 0, 0))] = true;
  broken[static_cast<std::size_t>(cnf.varmap.x(1, 1, 0))] = true;
  CHECK_THROWS_AS(decodeSchedule(broken, cnf.varmap), std::logic_error);
}
