#include "shuttlesat/Viz.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shuttlesat {

namespace {

constexpr std::size_t kCellWidth = 5;

std::string chainLabel(ChainIndex i) { return "i" + std::to_string(i); }

std::string edgeCell(const std::vector<ChainIndex>& occupants, char fill) {
  std::string cell(kCellWidth, fill);
  if (occupants.empty())
    return cell;
  std::string label = chainLabel(occupants.front());
  std::size_t at = (kCellWidth - std::min(label.size(), kCellWidth)) / 2;
  for (std::size_t k = 0; k < label.size() && at + k < kCellWidth; ++k)
    cell[at + k] = label[k];
  return cell;
}

void renderGridFrame(const ProblemInstance& problem,
                     const std::vector<EdgeIndex>& positions,
                     std::ostringstream& out) {
  const Layout& layout = problem.layout;
  const Layout::GridParams& g = *layout.gridParams();

  std::map<EdgeIndex, std::vector<ChainIndex>> occupants;
  for (ChainIndex i = 0; i < positions.size(); ++i)
    occupants[positions[i]].push_back(i);
  auto at = [&](EdgeIndex e) -> std::vector<ChainIndex> {
    auto it = occupants.find(e);
    return it == occupants.end() ? std::vector<ChainIndex>{} : it->second;
  };

  const std::size_t segmentSpan = g.h * kCellWidth + (g.h - 1);
  auto junctionMark = [&](std::uint32_t row, std::uint32_t col) {
    NodeIndex node = layout.majorNode(row, col);
    return node == layout.exitNode() || node == layout.entryNode() ? '*' : '+';
  };

  for (std::uint32_t row = 0; row < g.m; ++row) {
    std::string line;
    line += junctionMark(row, 0);
    for (std::uint32_t col = 0; col + 1 < g.n; ++col) {
      for (std::uint32_t slot = 0; slot < g.h; ++slot) {
        if (slot > 0)
          line += '.';
        line += edgeCell(at(layout.horizontalEdge(row, col, slot)), '-');
      }
      line += junctionMark(row, col + 1);
    }
    out << line << "\n";
    if (row + 1 == g.m)
      break;
    for (std::uint32_t slot = 0; slot < 2 * g.v - 1; ++slot) {
      std::string vline(1 + (g.n - 1) * (segmentSpan + 1), ' ');
      for (std::uint32_t col = 0; col < g.n; ++col) {
        std::size_t pos = col * (segmentSpan + 1);
        if (slot % 2 == 1) {
          vline[pos] = '.';
          continue;
        }
        std::vector<ChainIndex> on =
            at(layout.verticalEdge(row, col, slot / 2));
        if (on.empty()) {
          vline[pos] = '|';
        } else {
          std::string label = chainLabel(on.front());
          for (std::size_t k = 0; k < label.size() && pos + k < vline.size();
               ++k)
            vline[pos + k] = label[k];
        }
      }
      while (!vline.empty() && vline.back() == ' ')
        vline.pop_back();
      out << vline << "\n";
    }
  }
}

std::string occupantList(const std::vector<EdgeIndex>& positions,
                         EdgeIndex edge) {
  std::string text = "[";
  bool firstEntry = true;
  for (ChainIndex i = 0; i < positions.size(); ++i)
    if (positions[i] == edge) {
      if (!firstEntry)
        text += " ";
      text += chainLabel(i);
      firstEntry = false;
    }
  return text + "]";
}

} // namespace

std::string renderFrames(const ProblemInstance& problem,
                         const Schedule& schedule) {
  if (schedule.positions.empty() ||
      schedule.positions.front().size() != problem.chainCount())
    throw std::invalid_argument("schedule does not match the problem's chains");
  for (const std::vector<EdgeIndex>& row : schedule.positions)
    for (EdgeIndex e : row)
      if (e >= problem.layout.edgeCount())
        throw std::invalid_argument("schedule references an edge outside the layout");

  std::ostringstream out;
  for (std::uint32_t t = 0; t < schedule.positions.size(); ++t) {
    const std::vector<EdgeIndex>& positions = schedule.positions[t];
    out << "t=" << t;
    for (std::size_t j = 0; j < schedule.satisfactionTimes.size(); ++j)
      if (schedule.satisfactionTimes[j] == t && t > 0) {
        out << "  satisfies element " << j << " {";
        const std::vector<ChainIndex>& chains =
            problem.sequence.elements[j].chains;
        for (std::size_t k = 0; k < chains.size(); ++k)
          out << (k ? " " : "") << chainLabel(chains[k]);
        out << "}";
      }
    out << "\n";

    if (problem.layout.gridParams()) {
      renderGridFrame(problem, positions, out);
    } else {
      for (ChainIndex i = 0; i < positions.size(); ++i)
        out << "  " << chainLabel(i) << " @ e" << positions[i] << "\n";
    }
    out << "out: " << occupantList(positions, problem.layout.outboundEdge())
        << "  in: " << occupantList(positions, problem.layout.inboundEdge())
        << "\n\n";
  }
  return out.str();
}

} // namespace shuttlesat
