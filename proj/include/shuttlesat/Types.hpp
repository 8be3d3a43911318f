#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shuttlesat {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;
using ChainIndex = std::uint32_t;

enum class NodeKind : std::uint8_t { Major, Minor, Processing };
enum class EdgeKind : std::uint8_t { Memory, Inbound, Outbound };

std::string toString(NodeKind kind);
std::string toString(EdgeKind kind);

/// Thrown when an input document is syntactically or semantically invalid.
/// `location` is a JSON-pointer-like path into the offending document.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string location, const std::string& message)
      : std::runtime_error(location + ": " + message),
        location_(std::move(location)) {}

  const std::string& location() const { return location_; }

private:
  std::string location_;
};

/// Deterministic, platform-independent 64-bit PRNG (splitmix64).
/// Used everywhere reproducibility across runs and platforms is required;
/// the exact algorithm is pinned in docs/FORMATS.md.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, bound). bound must be positive.
  std::uint64_t nextBelow(std::uint64_t bound) { return next() % bound; }

private:
  std::uint64_t state_;
};

} // namespace shuttlesat
