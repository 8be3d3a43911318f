#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace shuttlesat {

/// A literal in DIMACS convention: +v for the positive, -v for the negated
/// occurrence of variable v (v >= 1).
using Lit = std::int32_t;

/// Accumulates CNF clauses and hands out fresh variables. Single-writer;
/// the finished clause set is immutable and may be shared freely.
class CnfBuilder {
public:
  CnfBuilder() = default;
  /// Starts with `presetVariables` variables already allocated (ids
  /// 1..presetVariables), as used by the encoder's fixed variable layout.
  explicit CnfBuilder(std::uint32_t presetVariables)
      : variableCount_(presetVariables) {}

  /// Allocates a fresh variable and returns its positive literal.
  Lit newVariable() { return static_cast<Lit>(++variableCount_); }

  std::uint32_t variableCount() const { return variableCount_; }
  std::size_t clauseCount() const { return clauses_.size(); }
  const std::vector<std::vector<Lit>>& clauses() const { return clauses_; }
  std::vector<std::vector<Lit>> takeClauses() { return std::move(clauses_); }

  void addClause(std::vector<Lit> lits);
  void addClause(std::initializer_list<Lit> lits) {
    addClause(std::vector<Lit>(lits));
  }

  /// Appends the single clause (l1 v ... v lk). Empty input is a domain
  /// error; an empty clause can still be emitted deliberately via
  /// addClause({}).
  void atLeastOne(const std::vector<Lit>& lits);

  /// Constrains at most one of `lits` to be true. Pairwise clauses for
  /// small inputs, sequential counter above.
  void atMostOne(const std::vector<Lit>& lits);

  /// Constrains at most k of `lits` to be true (k >= 1), using the
  /// sequential-counter translation. Register variables are one-sided:
  /// every assignment with <= k true literals extends to the registers, so
  /// projection onto `lits` is preserved. k >= |lits| emits nothing.
  void atMostK(const std::vector<Lit>& lits, std::uint32_t k);

  /// Returns a fresh literal y with clauses enforcing y <-> AND(lits).
  Lit defineAnd(const std::vector<Lit>& lits);

  /// Returns a fresh literal y with clauses enforcing y <-> OR(lits).
  Lit defineOr(const std::vector<Lit>& lits);

private:
  void sequentialCounter(const std::vector<Lit>& lits, std::uint32_t k);

  std::uint32_t variableCount_ = 0;
  std::vector<std::vector<Lit>> clauses_;
};

} // namespace shuttlesat
