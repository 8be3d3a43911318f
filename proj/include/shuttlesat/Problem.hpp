#pragma once

#include "shuttlesat/Layout.hpp"
#include "shuttlesat/Types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shuttlesat {

/// One element of the target sequence: the set of chains (one or two) that
/// must occupy the inbound edge together. Stored sorted.
struct SequenceElement {
  std::vector<ChainIndex> chains;

  bool operator==(const SequenceElement&) const = default;
};

struct Sequence {
  std::vector<SequenceElement> elements;

  std::size_t size() const { return elements.size(); }
  bool operator==(const Sequence&) const = default;
};

/// A shuttling problem: the layout, the initial chain placement on memory
/// edges (interface edges start empty), and the target sequence.
struct ProblemInstance {
  Layout layout;
  std::vector<EdgeIndex> placement; // chain index -> memory edge
  Sequence sequence;
  std::optional<std::uint64_t> seed;
  std::string label;

  std::uint32_t chainCount() const {
    return static_cast<std::uint32_t>(placement.size());
  }
};

/// Maps an ordered gate list (each gate a set of qubit indices) onto a
/// chain sequence via `qubitToChain`. One element per gate, gate order
/// preserved; consecutive duplicates are retained.
Sequence sequenceFromGateList(const std::vector<std::vector<std::uint32_t>>& gates,
                              const std::vector<ChainIndex>& qubitToChain);

/// The ascending full-register-access sequence [i0; i1; ...].
Sequence fullRegisterAccessSequence(std::uint32_t numChains);

/// Gate list of a textbook quantum Fourier transform on `qubits` qubits:
/// for each target k, one single-qubit gate followed by the controlled
/// rotations (k, j) for j > k. Yields q(q+1)/2 gates.
std::vector<std::vector<std::uint32_t>> qftGateList(std::uint32_t qubits);

/// Draws an injective placement of `numChains` chains onto memory edges,
/// uniformly without replacement, from the deterministic splitmix64
/// generator (see docs/FORMATS.md).
std::vector<EdgeIndex> randomPlacement(const Layout& layout,
                                       std::uint32_t numChains,
                                       std::uint64_t seed);

/// Validates a fully-assembled instance (injective placement on memory
/// edges, sequence references known chains, element sizes 1..2).
void validateProblem(const ProblemInstance& problem);

ProblemInstance parseProblem(const std::string& text);
std::string serializeProblem(const ProblemInstance& problem);

ProblemInstance loadProblemFile(const std::string& path);
void saveProblemFile(const ProblemInstance& problem, const std::string& path);

} // namespace shuttlesat
