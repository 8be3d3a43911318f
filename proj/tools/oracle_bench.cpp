#include "shuttlesat/Problem.hpp"
#include "shuttlesat/Verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

// Compares the serial oracle reference against the OpenMP frontier
// expansion on instances above the default guard, checking that both
// produce identical results.

using namespace shuttlesat;

namespace {

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct Case {
  const char* name;
  std::uint32_t m, n, v, h;
  std::uint32_t chains;
  std::uint32_t seqLen;
  std::uint64_t seed;
};

} // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  const Case cases[] = {
      {"L(2,2,1,2) c3 s4", 2, 2, 1, 2, 3, 4, 11},
      {"L(2,2,1,3) c4 s4", 2, 2, 1, 3, 4, 4, 7},
      {"L(2,2,2,2) c4 s5", 2, 2, 2, 2, 4, 5, 5},
      {"L(3,3,1,1) c4 s5", 3, 3, 1, 1, 4, 5, 3},
  };

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled (serial fallback)\n");
#endif
  std::printf("%-22s %8s %12s %12s %9s\n", "case", "T", "serial[s]",
              "parallel[s]", "speedup");

  int failures = 0;
  for (const Case& c : cases) {
    Layout layout = Layout::grid(c.m, c.n, c.v, c.h);
    Sequence sequence;
    for (std::uint32_t j = 0; j < c.seqLen; ++j)
      sequence.elements.push_back(SequenceElement{{j % c.chains}});
    ProblemInstance problem{layout, randomPlacement(layout, c.chains, c.seed),
                            std::move(sequence), c.seed, ""};

    OracleGuard open;
    open.enforce = false;

    OracleResult serial, parallel;
    double serialBest = 1e30, parallelBest = 1e30;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      serial = oracleMinimalSerial(problem, 24, open);
      serialBest = std::min(serialBest, seconds(t0));
      t0 = std::chrono::steady_clock::now();
      parallel = oracleMinimal(problem, 24, open);
      parallelBest = std::min(parallelBest, seconds(t0));
    }

    bool same = serial.minimalT == parallel.minimalT &&
                serial.exploredStates == parallel.exploredStates &&
                serial.witness == parallel.witness;
    if (!same) {
      std::printf("%-22s MISMATCH between serial and parallel results\n",
                  c.name);
      ++failures;
      continue;
    }
    std::printf("%-22s %8u %12.3f %12.3f %8.2fx\n", c.name,
                serial.minimalT.value_or(0), serialBest, parallelBest,
                serialBest / parallelBest);
  }
  return failures == 0 ? 0 : 1;
}
