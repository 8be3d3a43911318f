#include "shuttlesat/Encoder.hpp"

#include <cassert>
#include <stdexcept>

namespace shuttlesat {

std::string toString(AuxFamily family) {
  switch (family) {
  case AuxFamily::Movement:
    return "movement";
  case AuxFamily::Arrival:
    return "arrival";
  case AuxFamily::Cardinality:
    return "cardinality";
  case AuxFamily::SequenceLater:
    return "seq-later";
  case AuxFamily::SequenceOrder:
    return "seq-order";
  }
  return "?";
}

CnfInstance encode(const ProblemInstance& problem, std::uint32_t horizon) {
  if (horizon < 1)
    throw std::invalid_argument("encoding horizon must be at least 1");

  const Layout& layout = problem.layout;
  const std::uint32_t T = horizon;
  const std::uint32_t E = layout.edgeCount();
  const std::uint32_t C = problem.chainCount();
  const auto S = static_cast<std::uint32_t>(problem.sequence.size());
  const EdgeIndex eIn = layout.inboundEdge();
  const EdgeIndex eOut = layout.outboundEdge();

  VarMap vm(T, E, C, S);
  CnfBuilder builder(vm.firstAuxVariable() - 1);
  CnfStats stats;

  auto newAux = [&](AuxFamily family, std::array<std::uint32_t, 4> args) {
    Lit lit = builder.newVariable();
    vm.registerAux(AuxVar{family, args});
    return lit;
  };
  // Cardinality gadgets allocate registers internally; tag them afterwards.
  auto tagCardinality = [&](std::uint32_t before,
                            std::array<std::uint32_t, 4> args) {
    for (std::uint32_t v = before; v < builder.variableCount(); ++v)
      vm.registerAux(AuxVar{AuxFamily::Cardinality, args});
  };
  auto clausesBefore = [&]() { return builder.clauseCount(); };

  // Initial state: positive unit for each placed (edge, chain) pair,
  // negative for everything else including the interface edges.
  {
    std::size_t mark = clausesBefore();
    for (EdgeIndex e = 0; e < E; ++e)
      for (ChainIndex i = 0; i < C; ++i)
        builder.addClause(
            {problem.placement[i] == e ? vm.x(0, e, i) : -vm.x(0, e, i)});
    stats.initialState = builder.clauseCount() - mark;
  }

  // Each chain occupies exactly one edge at every time step.
  {
    std::size_t mark = clausesBefore();
    std::vector<Lit> lits(E);
    for (std::uint32_t t = 0; t <= T; ++t)
      for (ChainIndex i = 0; i < C; ++i) {
        for (EdgeIndex e = 0; e < E; ++e)
          lits[e] = vm.x(t, e, i);
        std::uint32_t before = builder.variableCount();
        builder.atMostOne(lits);
        tagCardinality(before, {t, i, 0, 0});
        builder.atLeastOne(lits);
      }
    stats.chainPlacement = builder.clauseCount() - mark;
  }

  // Every edge holds at most one chain, except the inbound edge which
  // simulates the processing zone and holds up to two.
  {
    std::size_t mark = clausesBefore();
    std::vector<Lit> lits(C);
    for (std::uint32_t t = 0; t <= T; ++t)
      for (EdgeIndex e = 0; e < E; ++e) {
        for (ChainIndex i = 0; i < C; ++i)
          lits[i] = vm.x(t, e, i);
        std::uint32_t before = builder.variableCount();
        if (e == eIn)
          builder.atMostK(lits, 2);
        else
          builder.atMostOne(lits);
        tagCardinality(before, {t, e, 0, 0});
      }
    stats.edgeCapacity = builder.clauseCount() - mark;
  }

  // Movement: a chain on memory edge e stays or moves to some e* in N*(e)
  // whose connecting path is free of other chains at time t. Movement off
  // the interface edges is governed by the processing-zone constraints
  // below, so only memory edges appear as sources here.
  {
    std::size_t mark = clausesBefore();
    std::vector<Lit> options;
    for (std::uint32_t t = 0; t + 1 <= T; ++t)
      for (ChainIndex i = 0; i < C; ++i)
        for (EdgeIndex e = 0; e < layout.memoryEdgeCount(); ++e) {
          options.clear();
          options.push_back(-vm.x(t, e, i));
          for (EdgeIndex target : layout.extendedNeighbors(e)) {
            const std::vector<EdgeIndex>& path = layout.pathEdges(e, target);
            if (path.empty() || C == 1) {
              options.push_back(vm.x(t + 1, target, i));
              continue;
            }
            Lit option = newAux(AuxFamily::Movement, {t, i, e, target});
            builder.addClause({-option, vm.x(t + 1, target, i)});
            for (EdgeIndex blocked : path)
              for (ChainIndex other = 0; other < C; ++other)
                if (other != i)
                  builder.addClause({-option, -vm.x(t, blocked, other)});
            options.push_back(option);
          }
          builder.addClause(options);
        }
    stats.movement = builder.clauseCount() - mark;
  }

  // Node crossing: at most one chain may pass over any junction or minor
  // node per transition. An arrival indicator per (t, e, i) states that
  // chain i reached e this step from one of its former edges F(e); each
  // node then bounds the arrivals over its incident edges.
  {
    std::size_t mark = clausesBefore();
    std::vector<Lit> arrival(static_cast<std::size_t>(E) * C, 0);
    std::vector<Lit> lits;
    for (std::uint32_t t = 1; t <= T; ++t) {
      std::fill(arrival.begin(), arrival.end(), 0);
      for (EdgeIndex e = 0; e < E; ++e) {
        const std::vector<EdgeIndex>& former = layout.formerEdges(e);
        if (former.empty())
          continue;
        for (ChainIndex i = 0; i < C; ++i) {
          Lit moved = newAux(AuxFamily::Arrival, {t, e, i});
          arrival[static_cast<std::size_t>(e) * C + i] = moved;
          builder.addClause({-moved, vm.x(t, e, i)});
          std::vector<Lit> any{-moved};
          for (EdgeIndex f : former) {
            any.push_back(vm.x(t - 1, f, i));
            builder.addClause({moved, -vm.x(t, e, i), -vm.x(t - 1, f, i)});
          }
          builder.addClause(std::move(any));
        }
      }
      for (NodeIndex v = 0; v < layout.nodeCount(); ++v) {
        if (layout.node(v).kind == NodeKind::Processing)
          continue;
        lits.clear();
        for (EdgeIndex e : layout.sharingEdges(v))
          for (ChainIndex i = 0; i < C; ++i)
            if (Lit moved = arrival[static_cast<std::size_t>(e) * C + i])
              lits.push_back(moved);
        std::uint32_t before = builder.variableCount();
        builder.atMostOne(lits);
        tagCardinality(before, {t, v, 0, 0});
      }
    }
    stats.nodeCrossing = builder.clauseCount() - mark;
  }

  // Processing-zone direction: outbound forces inbound next; inbound
  // requires outbound or inbound before; from inbound, stay or re-enter
  // the memory zone through a neighbor of the inbound edge.
  {
    std::size_t mark = clausesBefore();
    for (std::uint32_t t = 0; t + 1 <= T; ++t)
      for (ChainIndex i = 0; i < C; ++i)
        builder.addClause({-vm.x(t, eOut, i), vm.x(t + 1, eIn, i)});
    for (std::uint32_t t = 1; t <= T; ++t)
      for (ChainIndex i = 0; i < C; ++i)
        builder.addClause(
            {-vm.x(t, eIn, i), vm.x(t - 1, eOut, i), vm.x(t - 1, eIn, i)});
    for (std::uint32_t t = 0; t + 1 <= T; ++t)
      for (ChainIndex i = 0; i < C; ++i) {
        std::vector<Lit> stayOrExit{-vm.x(t, eIn, i), vm.x(t + 1, eIn, i)};
        for (EdgeIndex n : layout.neighbors(eIn))
          if (n != eIn && n != eOut)
            stayOrExit.push_back(vm.x(t + 1, n, i));
        builder.addClause(std::move(stayOrExit));
      }
    stats.processingDirection = builder.clauseCount() - mark;
  }

  // Target sequence: s(t, j) asserts co-presence of the element's chains
  // at the inbound edge; each element is satisfied at most once and before
  // its successor; the final element merely has to happen.
  {
    std::size_t mark = clausesBefore();
    for (std::uint32_t t = 1; t <= T; ++t)
      for (std::uint32_t j = 0; j < S; ++j)
        for (ChainIndex i : problem.sequence.elements[j].chains)
          builder.addClause({-vm.s(t, j), vm.x(t, eIn, i)});

    std::vector<Lit> later(T + 2, 0);
    for (std::uint32_t j = 0; j + 1 < S; ++j) {
      // later[t] <=> some s(t', j+1) with t' >= t (one-sided).
      for (std::uint32_t t = 1; t <= T; ++t)
        later[t] = newAux(AuxFamily::SequenceLater, {t, j + 1});
      for (std::uint32_t t = 1; t < T; ++t)
        builder.addClause({-later[t], vm.s(t, j + 1), later[t + 1]});
      builder.addClause({-later[T], vm.s(T, j + 1)});

      std::vector<Lit> ordered;
      for (std::uint32_t t = 1; t < T; ++t) {
        Lit option = newAux(AuxFamily::SequenceOrder, {t, j});
        builder.addClause({-option, vm.s(t, j)});
        builder.addClause({-option, later[t + 1]});
        ordered.push_back(option);
      }
      builder.addClause(std::move(ordered));
    }
    std::vector<Lit> finalElement;
    for (std::uint32_t t = 1; t <= T; ++t)
      finalElement.push_back(vm.s(t, S - 1));
    builder.addClause(std::move(finalElement));

    std::vector<Lit> once(T);
    for (std::uint32_t j = 0; j < S; ++j) {
      for (std::uint32_t t = 1; t <= T; ++t)
        once[t - 1] = vm.s(t, j);
      std::uint32_t before = builder.variableCount();
      builder.atMostOne(once);
      tagCardinality(before, {0, j, 0, 0});
    }
    stats.sequence = builder.clauseCount() - mark;
  }

  assert(stats.total() == builder.clauseCount());
  std::uint32_t variableCount = builder.variableCount();
  return CnfInstance{variableCount, builder.takeClauses(), std::move(vm),
                     stats};
}

Schedule decodeSchedule(const std::vector<bool>& model, const VarMap& vm) {
  Schedule schedule;
  schedule.horizon = vm.horizon();
  schedule.positions.assign(vm.horizon() + 1,
                            std::vector<EdgeIndex>(vm.chainCount(), 0));
  for (std::uint32_t t = 0; t <= vm.horizon(); ++t)
    for (ChainIndex i = 0; i < vm.chainCount(); ++i) {
      int hits = 0;
      for (EdgeIndex e = 0; e < vm.edgeCount(); ++e)
        if (model.at(static_cast<std::size_t>(vm.x(t, e, i)))) {
          schedule.positions[t][i] = e;
          ++hits;
        }
      if (hits != 1)
        throw std::logic_error(
            "model places chain " + std::to_string(i) + " on " +
            std::to_string(hits) + " edges at t=" + std::to_string(t));
    }
  schedule.satisfactionTimes.assign(vm.sequenceLength(), 0);
  for (std::uint32_t j = 0; j < vm.sequenceLength(); ++j) {
    int hits = 0;
    for (std::uint32_t t = 1; t <= vm.horizon(); ++t)
      if (model.at(static_cast<std::size_t>(vm.s(t, j)))) {
        schedule.satisfactionTimes[j] = t;
        ++hits;
      }
    if (hits != 1)
      throw std::logic_error("model satisfies sequence element " +
                             std::to_string(j) + " " + std::to_string(hits) +
                             " times");
  }
  return schedule;
}

} // namespace shuttlesat
