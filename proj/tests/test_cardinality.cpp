#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shuttlesat/Cnf.hpp"
#include "support/Dpll.hpp"

#include <set>
#include <vector>

using namespace shuttlesat;
using testsupport::projectedModels;

namespace {

std::uint32_t popcount(const std::vector<bool>& bits) {
  std::uint32_t count = 0;
  for (bool b : bits)
    count += b ? 1 : 0;
  return count;
}

// Semantic reference: all n-bit assignments passing `keep`.
template <typename Keep>
std::set<std::vector<bool>> semanticModels(std::uint32_t n, Keep keep) {
  std::set<std::vector<bool>> models;
  std::vector<bool> bits(n, false);
  for (std::uint64_t word = 0; word < (1ULL << n); ++word) {
    for (std::uint32_t v = 0; v < n; ++v)
      bits[v] = (word >> v) & 1;
    if (keep(bits))
      models.insert(bits);
  }
  return models;
}

std::vector<Lit> freshVariables(CnfBuilder& builder, std::uint32_t n) {
  std::vector<Lit> lits;
  for (std::uint32_t v = 0; v < n; ++v)
    lits.push_back(builder.newVariable());
  return lits;
}

} // namespace

TEST_CASE("atLeastOne emits the single clause") {
  CnfBuilder builder;
  std::vector<Lit> lits = freshVariables(builder, 3);
  builder.atLeastOne(lits);
  REQUIRE(builder.clauseCount() == 1);
  CHECK(builder.clauses()[0] == std::vector<Lit>{1, 2, 3});

  CnfBuilder single;
  Lit a = single.newVariable();
  single.atLeastOne({a});
  CHECK(single.clauses()[0] == std::vector<Lit>{a});

  CHECK_THROWS_AS(builder.atLeastOne({}), std::domain_error);

  // All-false assignments are excluded, everything else kept.
  CHECK(projectedModels(builder.variableCount(), builder.clauses(), 3) ==
        semanticModels(3, [](const std::vector<bool>& bits) {
          return popcount(bits) >= 1;
        }));
}

TEST_CASE("atMostOne pairwise on small sets") {
  CnfBuilder builder;
  std::vector<Lit> lits = freshVariables(builder, 2);
  builder.atMostOne(lits);
  REQUIRE(builder.clauseCount() == 1);
  CHECK(builder.clauses()[0] == std::vector<Lit>{-1, -2});
  CHECK(builder.variableCount() == 2); // no auxiliaries
}

TEST_CASE("atMostOne model projection equals the counting oracle") {
  // Exhaustive check across the pairwise/sequential boundary.
  for (std::uint32_t n = 1; n <= 11; ++n) {
    CnfBuilder builder;
    std::vector<Lit> lits = freshVariables(builder, n);
    builder.atMostOne(lits);
    CAPTURE(n);
    CHECK(projectedModels(builder.variableCount(), builder.clauses(), n) ==
          semanticModels(n, [](const std::vector<bool>& bits) {
            return popcount(bits) <= 1;
          }));
  }
}

TEST_CASE("atMostK sequential counter projection") {
  for (std::uint32_t n = 2; n <= 6; ++n)
    for (std::uint32_t k = 1; k < n; ++k) {
      CnfBuilder builder;
      std::vector<Lit> lits = freshVariables(builder, n);
      builder.atMostK(lits, k);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(projectedModels(builder.variableCount(), builder.clauses(), n) ==
            semanticModels(n, [k](const std::vector<bool>& bits) {
              return popcount(bits) <= k;
            }));
    }
}

TEST_CASE("atMostK edge cases") {
  CnfBuilder builder;
  std::vector<Lit> lits = freshVariables(builder, 4);
  builder.atMostK(lits, 4);
  CHECK(builder.clauseCount() == 0); // k >= |lits| constrains nothing
  builder.atMostK(lits, 7);
  CHECK(builder.clauseCount() == 0);
  CHECK_THROWS_AS(builder.atMostK(lits, 0), std::domain_error);

  // k=2 over 4 inputs: C(4,0)+C(4,1)+C(4,2) = 11 projected models.
  CnfBuilder counted;
  std::vector<Lit> four = freshVariables(counted, 4);
  counted.atMostK(four, 2);
  CHECK(projectedModels(counted.variableCount(), counted.clauses(), 4).size() ==
        11);
}

TEST_CASE("defineAnd and defineOr are biconditional") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    CnfBuilder andBuilder;
    std::vector<Lit> lits = freshVariables(andBuilder, n);
    Lit y = andBuilder.defineAnd(lits);
    CHECK(y == static_cast<Lit>(n + 1));
    // Project onto inputs plus y: y must equal the conjunction exactly.
    CHECK(projectedModels(andBuilder.variableCount(), andBuilder.clauses(),
                          n + 1) ==
          semanticModels(n + 1, [n](const std::vector<bool>& bits) {
            bool all = true;
            for (std::uint32_t v = 0; v < n; ++v)
              all = all && bits[v];
            return bits[n] == all;
          }));

    CnfBuilder orBuilder;
    std::vector<Lit> orLits = freshVariables(orBuilder, n);
    Lit z = orBuilder.defineOr(orLits);
    CHECK(z == static_cast<Lit>(n + 1));
    CHECK(projectedModels(orBuilder.variableCount(), orBuilder.clauses(),
                          n + 1) ==
          semanticModels(n + 1, [n](const std::vector<bool>& bits) {
            bool any = false;
            for (std::uint32_t v = 0; v < n; ++v)
              any = any || bits[v];
            return bits[n] == any;
          }));
  }

  CnfBuilder builder;
  CHECK_THROWS_AS(builder.defineAnd({}), std::domain_error);
  CHECK_THROWS_AS(builder.defineOr({}), std::domain_error);

  // Single-literal definition behaves as the literal itself.
  CnfBuilder one;
  Lit a = one.newVariable();
  Lit y = one.defineAnd({a});
  CHECK(projectedModels(one.variableCount(), one.clauses(), 2) ==
        semanticModels(2, [](const std::vector<bool>& bits) {
          return bits[0] == bits[1];
        }));
  CHECK(y != a);
}

TEST_CASE("clause emission is deterministic and validated") {
  CnfBuilder a;
  CnfBuilder b;
  std::vector<Lit> la = freshVariables(a, 9);
  std::vector<Lit> lb = freshVariables(b, 9);
  a.atMostOne(la);
  b.atMostOne(lb);
  CHECK(a.clauses() == b.clauses());
  CHECK(a.variableCount() == b.variableCount());

  CHECK_THROWS_AS(a.addClause({99}), std::logic_error);
  a.addClause({});
  CHECK(a.clauses().back().empty()); // deliberate falsity is allowed
}
