#include "shuttlesat/Cnf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace shuttlesat {

namespace {
constexpr std::size_t kPairwiseLimit = 8;
}

void CnfBuilder::addClause(std::vector<Lit> lits) {
  for (Lit l : lits) {
    std::uint32_t var = static_cast<std::uint32_t>(std::abs(l));
    if (var == 0 || var > variableCount_)
      throw std::logic_error("clause references an unallocated variable");
  }
  clauses_.push_back(std::move(lits));
}

void CnfBuilder::atLeastOne(const std::vector<Lit>& lits) {
  if (lits.empty())
    throw std::domain_error("atLeastOne over an empty literal set");
  addClause(lits);
}

void CnfBuilder::atMostOne(const std::vector<Lit>& lits) {
  if (lits.size() <= kPairwiseLimit) {
    for (std::size_t i = 0; i < lits.size(); ++i)
      for (std::size_t j = i + 1; j < lits.size(); ++j)
        addClause({-lits[i], -lits[j]});
    return;
  }
  sequentialCounter(lits, 1);
}

void CnfBuilder::atMostK(const std::vector<Lit>& lits, std::uint32_t k) {
  if (k < 1)
    throw std::domain_error("atMostK requires k >= 1");
  if (k >= lits.size())
    return;
  if (k == 1) {
    atMostOne(lits);
    return;
  }
  sequentialCounter(lits, k);
}

// Sinz-style sequential counter for sum(lits) <= k. Registers r(i, j)
// track "at least j of the first i literals are true".
void CnfBuilder::sequentialCounter(const std::vector<Lit>& lits,
                                   std::uint32_t k) {
  const std::size_t n = lits.size();
  std::vector<Lit> reg((n - 1) * k);
  for (Lit& r : reg)
    r = newVariable();
  auto r = [&](std::size_t i, std::uint32_t j) -> Lit {
    return reg[(i - 1) * k + (j - 1)];
  };

  addClause({-lits[0], r(1, 1)});
  for (std::uint32_t j = 2; j <= k; ++j)
    addClause({-r(1, j)});
  for (std::size_t i = 2; i < n; ++i) {
    addClause({-lits[i - 1], r(i, 1)});
    addClause({-r(i - 1, 1), r(i, 1)});
    for (std::uint32_t j = 2; j <= k; ++j) {
      addClause({-lits[i - 1], -r(i - 1, j - 1), r(i, j)});
      addClause({-r(i - 1, j), r(i, j)});
    }
    addClause({-lits[i - 1], -r(i - 1, k)});
  }
  addClause({-lits[n - 1], -r(n - 1, k)});
}

Lit CnfBuilder::defineAnd(const std::vector<Lit>& lits) {
  if (lits.empty())
    throw std::domain_error("defineAnd over an empty literal set");
  Lit y = newVariable();
  std::vector<Lit> reverse{y};
  for (Lit l : lits) {
    addClause({-y, l});
    reverse.push_back(-l);
  }
  addClause(std::move(reverse));
  return y;
}

Lit CnfBuilder::defineOr(const std::vector<Lit>& lits) {
  if (lits.empty())
    throw std::domain_error("defineOr over an empty literal set");
  Lit y = newVariable();
  std::vector<Lit> forward{-y};
  for (Lit l : lits) {
    addClause({y, -l});
    forward.push_back(l);
  }
  addClause(std::move(forward));
  return y;
}

} // namespace shuttlesat
