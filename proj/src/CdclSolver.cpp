#include "shuttlesat/SatBackend.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace shuttlesat {

namespace {

using Clock = std::chrono::steady_clock;

// Internal literal encoding: variable v (0-based) yields literals 2v
// (positive) and 2v+1 (negative).
using ILit = std::uint32_t;
using Var = std::uint32_t;
using Ref = std::uint32_t;

constexpr ILit kLitUndef = 0xffffffffu;
constexpr Ref kRefUndef = 0xffffffffu;

inline Var litVar(ILit l) { return l >> 1; }
inline bool litSign(ILit l) { return (l & 1) != 0; }
inline ILit litNeg(ILit l) { return l ^ 1; }
inline ILit mkLit(Var v, bool sign) { return (v << 1) | (sign ? 1u : 0u); }

// Indexed max-heap over variable activities.
class VarHeap {
public:
  void grow(std::uint32_t n) { index_.resize(n, -1); }

  bool contains(Var v) const { return index_[v] >= 0; }
  bool empty() const { return heap_.empty(); }

  template <typename Better> void insert(Var v, Better better) {
    if (contains(v))
      return;
    index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(static_cast<int>(heap_.size()) - 1, better);
  }

  template <typename Better> Var pop(Better better) {
    Var top = heap_[0];
    index_[top] = -1;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      index_[heap_[0]] = 0;
      down(0, better);
    }
    return top;
  }

  template <typename Better> void increased(Var v, Better better) {
    if (contains(v))
      up(index_[v], better);
  }

private:
  template <typename Better> void up(int i, Better better) {
    Var v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) >> 1;
      if (!better(v, heap_[parent]))
        break;
      heap_[i] = heap_[parent];
      index_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  template <typename Better> void down(int i, Better better) {
    Var v = heap_[i];
    const int n = static_cast<int>(heap_.size());
    for (;;) {
      int child = 2 * i + 1;
      if (child >= n)
        break;
      if (child + 1 < n && better(heap_[child + 1], heap_[child]))
        ++child;
      if (!better(heap_[child], v))
        break;
      heap_[i] = heap_[child];
      index_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = v;
    index_[v] = i;
  }

  std::vector<Var> heap_;
  std::vector<int> index_;
};

// Clause arena. Layout per clause: header word (size << 2 | deleted << 1 |
// learnt), one activity word for learnt clauses, then the literals.
class Cdcl {
  struct ActivityGreater {
    const std::vector<double>* activity;
    bool operator()(Var a, Var b) const {
      return (*activity)[a] > (*activity)[b];
    }
  };
  ActivityGreater better() const { return ActivityGreater{&activity_}; }

public:
  explicit Cdcl(std::uint32_t variableCount) : numVars_(variableCount) {
    assigns_.assign(numVars_, 0);
    level_.assign(numVars_, 0);
    reason_.assign(numVars_, kRefUndef);
    activity_.assign(numVars_, 0.0);
    polarity_.assign(numVars_, 1);
    seen_.assign(numVars_, 0);
    watches_.assign(2 * static_cast<std::size_t>(numVars_), {});
    heap_.grow(numVars_);
    for (Var v = 0; v < numVars_; ++v)
      heap_.insert(v, better());
  }

  bool addClause(const std::vector<Lit>& extLits) {
    if (!ok_)
      return false;
    std::vector<ILit> lits;
    lits.reserve(extLits.size());
    for (Lit l : extLits) {
      Var v = static_cast<Var>(std::abs(l)) - 1;
      lits.push_back(mkLit(v, l < 0));
    }
    std::sort(lits.begin(), lits.end());
    std::size_t w = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (w > 0 && lits[i] == lits[w - 1])
        continue;
      if (w > 0 && lits[i] == litNeg(lits[w - 1]))
        return true; // tautology
      if (litTrue(lits[i]))
        return true; // satisfied at the root
      if (litFalse(lits[i]))
        continue;
      lits[w++] = lits[i];
    }
    lits.resize(w);

    if (lits.empty())
      return ok_ = false;
    if (lits.size() == 1) {
      uncheckedEnqueue(lits[0], kRefUndef);
      return true;
    }
    Ref ref = alloc(lits, false);
    problemRefs_.push_back(ref);
    attach(ref);
    return true;
  }

  SatResult solve(std::optional<double> timeoutSeconds) {
    SatResult result;
    if (timeoutSeconds)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(
                                         *timeoutSeconds));
    if (!ok_ || propagate() != kRefUndef) {
      result.verdict = SatVerdict::Unsat;
      return result;
    }
    maxLearnts_ =
        std::max<double>(4000.0, static_cast<double>(problemRefs_.size()) / 3.0);

    for (int restart = 0;; ++restart) {
      std::uint64_t budget =
          static_cast<std::uint64_t>(luby(2.0, restart) * 128.0);
      SatVerdict verdict = search(budget);
      if (verdict == SatVerdict::Sat) {
        result.verdict = verdict;
        result.model.assign(numVars_ + 1, false);
        for (Var v = 0; v < numVars_; ++v)
          result.model[v + 1] = assigns_[v] == 1;
        cancelUntil(0);
        return result;
      }
      if (verdict == SatVerdict::Unsat) {
        result.verdict = verdict;
        return result;
      }
      if (timedOut_) {
        cancelUntil(0);
        return result; // Unknown
      }
    }
  }

private:
  // ----- assignment handling -----

  bool litTrue(ILit l) const {
    return assigns_[litVar(l)] == (litSign(l) ? 2 : 1);
  }
  bool litFalse(ILit l) const {
    return assigns_[litVar(l)] == (litSign(l) ? 1 : 2);
  }
  bool litUnset(ILit l) const { return assigns_[litVar(l)] == 0; }

  int decisionLevel() const { return static_cast<int>(trailLim_.size()); }

  void uncheckedEnqueue(ILit l, Ref reason) {
    Var v = litVar(l);
    assigns_[v] = litSign(l) ? 2 : 1;
    level_[v] = decisionLevel();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  void cancelUntil(int targetLevel) {
    if (decisionLevel() <= targetLevel)
      return;
    int bound = trailLim_[targetLevel];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
      Var v = litVar(trail_[i]);
      assigns_[v] = 0;
      reason_[v] = kRefUndef;
      polarity_[v] = litSign(trail_[i]) ? 1 : 0;
      heap_.insert(v, better());
    }
    trail_.resize(bound);
    trailLim_.resize(targetLevel);
    qhead_ = bound;
  }

  // ----- clause arena -----

  std::uint32_t clauseSize(Ref r) const { return arena_[r] >> 2; }
  bool clauseLearnt(Ref r) const { return (arena_[r] & 1) != 0; }
  bool clauseDeleted(Ref r) const { return (arena_[r] & 2) != 0; }
  ILit* clauseLits(Ref r) { return &arena_[r + 1 + (arena_[r] & 1)]; }
  const ILit* clauseLits(Ref r) const {
    return &arena_[r + 1 + (arena_[r] & 1)];
  }
  float clauseActivity(Ref r) const {
    float f;
    std::uint32_t bits = arena_[r + 1];
    std::memcpy(&f, &bits, sizeof(f));
    return f;
  }
  void setClauseActivity(Ref r, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof(f));
    arena_[r + 1] = bits;
  }

  Ref alloc(const std::vector<ILit>& lits, bool learnt) {
    Ref r = static_cast<Ref>(arena_.size());
    arena_.push_back((static_cast<std::uint32_t>(lits.size()) << 2) |
                     (learnt ? 1u : 0u));
    if (learnt)
      arena_.push_back(0);
    arena_.insert(arena_.end(), lits.begin(), lits.end());
    return r;
  }

  void markDeleted(Ref r) {
    garbageWords_ += 1 + (clauseLearnt(r) ? 1 : 0) + clauseSize(r);
    arena_[r] |= 2;
  }

  struct Watcher {
    Ref ref;
    ILit blocker;
  };

  void attach(Ref r) {
    const ILit* lits = clauseLits(r);
    watches_[litNeg(lits[0])].push_back({r, lits[1]});
    watches_[litNeg(lits[1])].push_back({r, lits[0]});
  }

  bool locked(Ref r) const {
    ILit first = clauseLits(r)[0];
    Var v = litVar(first);
    return assigns_[v] != 0 && reason_[v] == r && litTrue(first);
  }

  // ----- propagation -----

  Ref propagate() {
    while (qhead_ < trail_.size()) {
      ILit p = trail_[qhead_++];
      ++propagations_;
      std::vector<Watcher>& ws = watches_[p];
      std::size_t i = 0, j = 0;
      const std::size_t n = ws.size();
      while (i < n) {
        Watcher w = ws[i];
        if (litTrue(w.blocker)) {
          ws[j++] = ws[i++];
          continue;
        }
        Ref ref = w.ref;
        ILit* lits = clauseLits(ref);
        const std::uint32_t size = clauseSize(ref);
        const ILit falseLit = litNeg(p);
        if (lits[0] == falseLit)
          std::swap(lits[0], lits[1]);
        ++i;

        ILit first = lits[0];
        if (first != w.blocker && litTrue(first)) {
          ws[j++] = {ref, first};
          continue;
        }

        bool moved = false;
        for (std::uint32_t k = 2; k < size; ++k) {
          if (!litFalse(lits[k])) {
            std::swap(lits[1], lits[k]);
            watches_[litNeg(lits[1])].push_back({ref, first});
            moved = true;
            break;
          }
        }
        if (moved)
          continue;

        ws[j++] = {ref, first};
        if (litFalse(first)) {
          // conflict: keep remaining watchers and bail out
          while (i < n)
            ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return ref;
        }
        uncheckedEnqueue(first, ref);
      }
      ws.resize(j);
    }
    return kRefUndef;
  }

  // ----- conflict analysis -----

  void analyze(Ref confl, std::vector<ILit>& outLearnt, int& outBtLevel) {
    int pathC = 0;
    ILit p = kLitUndef;
    outLearnt.clear();
    outLearnt.push_back(0);
    int index = static_cast<int>(trail_.size()) - 1;

    do {
      ILit* lits = clauseLits(confl);
      if (clauseLearnt(confl))
        bumpClause(confl);
      const std::uint32_t size = clauseSize(confl);
      for (std::uint32_t k = (p == kLitUndef) ? 0 : 1; k < size; ++k) {
        ILit q = lits[k];
        Var v = litVar(q);
        if (!seen_[v] && level_[v] > 0) {
          seen_[v] = 1;
          bumpVar(v);
          if (level_[v] >= decisionLevel())
            ++pathC;
          else
            outLearnt.push_back(q);
        }
      }
      while (!seen_[litVar(trail_[index--])])
        ;
      p = trail_[index + 1];
      confl = reason_[litVar(p)];
      seen_[litVar(p)] = 0;
      --pathC;
    } while (pathC > 0);
    outLearnt[0] = litNeg(p);

    // Minimize by removing literals implied by the rest of the clause.
    toClear_.assign(outLearnt.begin(), outLearnt.end());
    std::uint32_t levels = 0;
    for (std::size_t k = 1; k < outLearnt.size(); ++k)
      levels |= 1u << (level_[litVar(outLearnt[k])] & 31);
    std::size_t w = 1;
    for (std::size_t k = 1; k < outLearnt.size(); ++k) {
      Var v = litVar(outLearnt[k]);
      if (reason_[v] == kRefUndef || !litRedundant(outLearnt[k], levels))
        outLearnt[w++] = outLearnt[k];
    }
    outLearnt.resize(w);
    for (ILit l : toClear_)
      seen_[litVar(l)] = 0;

    if (outLearnt.size() == 1) {
      outBtLevel = 0;
    } else {
      std::size_t maxIdx = 1;
      for (std::size_t k = 2; k < outLearnt.size(); ++k)
        if (level_[litVar(outLearnt[k])] > level_[litVar(outLearnt[maxIdx])])
          maxIdx = k;
      std::swap(outLearnt[1], outLearnt[maxIdx]);
      outBtLevel = level_[litVar(outLearnt[1])];
    }
  }

  bool litRedundant(ILit p, std::uint32_t levels) {
    stack_.clear();
    stack_.push_back(p);
    const std::size_t top = toClear_.size();
    while (!stack_.empty()) {
      ILit cur = stack_.back();
      stack_.pop_back();
      Ref ref = reason_[litVar(cur)];
      assert(ref != kRefUndef);
      const ILit* lits = clauseLits(ref);
      const std::uint32_t size = clauseSize(ref);
      for (std::uint32_t k = 1; k < size; ++k) {
        ILit q = lits[k];
        Var v = litVar(q);
        if (seen_[v] || level_[v] == 0)
          continue;
        if (reason_[v] != kRefUndef &&
            ((1u << (level_[v] & 31)) & levels) != 0) {
          seen_[v] = 1;
          stack_.push_back(q);
          toClear_.push_back(q);
        } else {
          for (std::size_t j = top; j < toClear_.size(); ++j)
            seen_[litVar(toClear_[j])] = 0;
          toClear_.resize(top);
          return false;
        }
      }
    }
    return true;
  }

  void recordLearnt(std::vector<ILit>& lits) {
    if (lits.size() == 1) {
      uncheckedEnqueue(lits[0], kRefUndef);
      return;
    }
    Ref ref = alloc(lits, true);
    learntRefs_.push_back(ref);
    setClauseActivity(ref, static_cast<float>(claInc_));
    attach(ref);
    uncheckedEnqueue(lits[0], ref);
  }

  // ----- activities -----

  void bumpVar(Var v) {
    activity_[v] += varInc_;
    if (activity_[v] > 1e100) {
      for (double& a : activity_)
        a *= 1e-100;
      varInc_ *= 1e-100;
    }
    heap_.increased(v, better());
  }

  void bumpClause(Ref r) {
    float a = clauseActivity(r) + static_cast<float>(claInc_);
    setClauseActivity(r, a);
    if (a > 1e20f) {
      for (Ref lr : learntRefs_)
        if (!clauseDeleted(lr))
          setClauseActivity(lr, clauseActivity(lr) * 1e-20f);
      claInc_ *= 1e-20;
    }
  }

  // ----- learnt database management -----

  void reduceDB() {
    std::vector<Ref> order;
    order.reserve(learntRefs_.size());
    for (Ref r : learntRefs_)
      if (!clauseDeleted(r))
        order.push_back(r);
    std::sort(order.begin(), order.end(), [this](Ref a, Ref b) {
      bool binA = clauseSize(a) == 2;
      bool binB = clauseSize(b) == 2;
      if (binA != binB)
        return binB; // non-binary first (removal candidates)
      return clauseActivity(a) < clauseActivity(b);
    });
    std::size_t removed = 0;
    const std::size_t target = order.size() / 2;
    for (Ref r : order) {
      if (removed >= target)
        break;
      if (clauseSize(r) == 2 || locked(r))
        continue;
      markDeleted(r);
      ++removed;
    }
    for (auto& ws : watches_)
      ws.erase(std::remove_if(
                   ws.begin(), ws.end(),
                   [this](const Watcher& w) { return clauseDeleted(w.ref); }),
               ws.end());
    learntRefs_.erase(std::remove_if(learntRefs_.begin(), learntRefs_.end(),
                                     [this](Ref r) { return clauseDeleted(r); }),
                      learntRefs_.end());
    if (garbageWords_ * 2 > arena_.size())
      collectGarbage();
  }

  void collectGarbage() {
    std::vector<std::uint32_t> fresh;
    fresh.reserve(arena_.size() - garbageWords_);
    // problemRefs_ and learntRefs_ are in ascending arena order, problem
    // clauses first, so the old->new pairs come out sorted by old ref.
    std::vector<std::pair<Ref, Ref>> refMap;
    refMap.reserve(problemRefs_.size() + learntRefs_.size());
    for (std::vector<Ref>* refs : {&problemRefs_, &learntRefs_}) {
      for (Ref& r : *refs) {
        Ref nr = static_cast<Ref>(fresh.size());
        std::uint32_t words = 1 + (clauseLearnt(r) ? 1 : 0) + clauseSize(r);
        fresh.insert(fresh.end(), arena_.begin() + r,
                     arena_.begin() + r + words);
        refMap.emplace_back(r, nr);
        r = nr;
      }
    }
    for (Var v = 0; v < numVars_; ++v) {
      if (reason_[v] == kRefUndef)
        continue;
      auto it = std::lower_bound(
          refMap.begin(), refMap.end(), reason_[v],
          [](const std::pair<Ref, Ref>& p, Ref r) { return p.first < r; });
      assert(it != refMap.end() && it->first == reason_[v]);
      reason_[v] = it->second;
    }
    arena_ = std::move(fresh);
    garbageWords_ = 0;
    for (auto& ws : watches_)
      ws.clear();
    for (std::vector<Ref>* refs : {&problemRefs_, &learntRefs_})
      for (Ref r : *refs)
        attach(r);
  }

  // ----- search -----

  bool timeExceeded() {
    if (!deadline_)
      return false;
    if (Clock::now() >= *deadline_) {
      timedOut_ = true;
      return true;
    }
    return false;
  }

  SatVerdict search(std::uint64_t conflictBudget) {
    std::uint64_t conflictsHere = 0;
    std::vector<ILit> learnt;
    for (;;) {
      Ref confl = propagate();
      if (confl != kRefUndef) {
        ++conflicts_;
        ++conflictsHere;
        if (decisionLevel() == 0)
          return SatVerdict::Unsat;
        int btLevel = 0;
        analyze(confl, learnt, btLevel);
        cancelUntil(btLevel);
        recordLearnt(learnt);
        varInc_ /= 0.95;
        claInc_ /= 0.999;
        if ((conflicts_ & 255) == 0 && timeExceeded())
          return SatVerdict::Unknown;
      } else {
        if (conflictsHere >= conflictBudget) {
          cancelUntil(0);
          return SatVerdict::Unknown;
        }
        if (static_cast<double>(learntRefs_.size()) >=
            maxLearnts_ + static_cast<double>(trail_.size())) {
          reduceDB();
          maxLearnts_ *= 1.05;
        }
        ++decisions_;
        if ((decisions_ & 4095) == 0 && timeExceeded())
          return SatVerdict::Unknown;
        Var next = kLitUndef;
        while (!heap_.empty()) {
          Var v = heap_.pop(better());
          if (assigns_[v] == 0) {
            next = v;
            break;
          }
        }
        if (next == kLitUndef)
          return SatVerdict::Sat;
        trailLim_.push_back(static_cast<int>(trail_.size()));
        uncheckedEnqueue(mkLit(next, polarity_[next] != 0), kRefUndef);
      }
    }
  }

  static double luby(double y, int i) {
    int size = 1, seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != i) {
      size = (size - 1) / 2;
      --seq;
      i = i % size;
    }
    return std::pow(y, seq);
  }

  std::uint32_t numVars_;
  bool ok_ = true;
  bool timedOut_ = false;
  std::optional<Clock::time_point> deadline_;

  std::vector<std::uint32_t> arena_;
  std::size_t garbageWords_ = 0;
  std::vector<Ref> problemRefs_;
  std::vector<Ref> learntRefs_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<std::uint8_t> assigns_;
  std::vector<int> level_;
  std::vector<Ref> reason_;
  std::vector<ILit> trail_;
  std::vector<int> trailLim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double varInc_ = 1.0;
  double claInc_ = 1.0;
  std::vector<std::uint8_t> polarity_;
  std::vector<std::uint8_t> seen_;
  std::vector<ILit> toClear_;
  std::vector<ILit> stack_;
  VarHeap heap_;
  double maxLearnts_ = 4000.0;

  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  std::uint64_t propagations_ = 0;
};

class CdclBackend : public SatBackend {
public:
  SatResult solve(std::uint32_t variableCount,
                  const std::vector<std::vector<Lit>>& clauses,
                  std::optional<double> timeoutSeconds) override {
    Cdcl solver(variableCount);
    for (const std::vector<Lit>& clause : clauses)
      if (!solver.addClause(clause))
        return SatResult{SatVerdict::Unsat, {}};
    return solver.solve(timeoutSeconds);
  }

  std::string name() const override { return "cdcl"; }
};

} // namespace

std::unique_ptr<SatBackend> makeCdclBackend() {
  return std::make_unique<CdclBackend>();
}

std::unique_ptr<SatBackend> makeDefaultBackend() {
  const char* env = std::getenv("SHUTTLESAT_SOLVER");
  if (env != nullptr && *env != '\0')
    return makeExternalBackend(env);
  return makeCdclBackend();
}

} // namespace shuttlesat
