#include "kzmc/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

namespace kzmc {

namespace {

struct Node {
  LabelSet set;
  int x = 0;
  unsigned height = 0;
  int left = -1;
  int right = -1;
};

struct Layout {
  std::vector<Node> nodes;  // root first
  std::vector<unsigned> leaves;
  int root = 0;
};

constexpr int leaf_spacing = 4;

int build(const MaximalCommutingFamily& family, LabelSet set, Layout& layout) {
  const int id = static_cast<int>(layout.nodes.size());
  layout.nodes.push_back(Node{set});
  if (set.size() == 1) {
    layout.nodes[id].x = static_cast<int>(layout.leaves.size()) * leaf_spacing;
    layout.leaves.push_back(set.min());
    return id;
  }
  const auto [a, b] = family.children(set);
  const int l = build(family, a, layout);
  const int r = build(family, b, layout);
  Node& node = layout.nodes[id];
  node.left = l;
  node.right = r;
  node.x = (layout.nodes[l].x + layout.nodes[r].x) / 2;
  node.height = 1 + std::max(layout.nodes[l].height, layout.nodes[r].height);
  return id;
}

Layout layout_of(const MaximalCommutingFamily& family) {
  Layout layout;
  layout.root = build(family, family.labels(), layout);
  return layout;
}

// +1 when the left part lost, -1 when the right part lost, 0 without a winner.
int losing_side(const std::optional<LoserMap>& losers, const Layout& layout, const Node& node) {
  if (!losers) return 0;
  return losers->loser(node.set) == layout.nodes[node.left].set ? 1 : -1;
}

std::string render_ascii(const Layout& layout, const std::optional<LoserMap>& losers) {
  const unsigned top = layout.nodes[layout.root].height;
  const int width = static_cast<int>(layout.leaves.size() - 1) * leaf_spacing + 3;
  const int rows = 2 * static_cast<int>(top) + 2;
  std::vector<std::vector<std::string>> grid(rows, std::vector<std::string>(width, " "));
  auto junction_row = [&](const Node& n) { return 2 * static_cast<int>(top - n.height) + 1; };

  grid[0][layout.nodes[layout.root].x] = "│";
  for (const Node& n : layout.nodes) {
    if (n.left < 0) continue;
    const int row = junction_row(n);
    const Node& l = layout.nodes[n.left];
    const Node& r = layout.nodes[n.right];
    for (int x = l.x + 1; x < r.x; ++x) grid[row][x] = "─";
    grid[row][l.x] = "┌";
    grid[row][r.x] = "┐";
    const int side = losing_side(losers, layout, n);
    grid[row][n.x] = side > 0 ? "└" : side < 0 ? "┘" : "┴";
    if (side > 0) grid[row][n.x - 1] = " ";
    if (side < 0) grid[row][n.x + 1] = " ";
    for (const Node* c : {&l, &r}) {
      const int end = c->left < 0 ? rows - 2 : junction_row(*c) - 1;
      for (int y = row + 1; y <= end; ++y) grid[y][c->x] = "│";
    }
  }
  for (const Node& n : layout.nodes)
    if (n.left < 0) {
      const std::string label = std::to_string(n.set.min());
      for (std::size_t k = 0; k < label.size(); ++k) grid[rows - 1][n.x + static_cast<int>(k)] = label.substr(k, 1);
    }

  std::string out;
  for (auto& line : grid) {
    while (!line.empty() && line.back() == " ") line.pop_back();
    for (const auto& cell : line) out += cell;
    out += '\n';
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string render_tex(const Layout& layout, const std::optional<LoserMap>& losers, const MaximalCommutingFamily& family) {
  // Units of 1mm; leaves 6 apart, levels 5 apart.
  const double dx = 1.5;
  const double dy = 5;
  const double gap = 1;
  const unsigned top = layout.nodes[layout.root].height;
  auto px = [&](const Node& n) { return n.x * dx; };
  auto py = [&](const Node& n) { return n.height * dy; };

  std::ostringstream s;
  s << "\\documentclass{article}\n"
    << "\\begin{document}\n"
    << "% " << serialize(family) << "\n"
    << "\\setlength{\\unitlength}{1mm}\n"
    << "\\begin{picture}(" << fmt(static_cast<double>(layout.leaves.size() - 1) * leaf_spacing * dx) << ","
    << fmt(top * dy + 7) << ")(0,-4)\n";
  for (const Node& n : layout.nodes) {
    if (n.left < 0) {
      s << "\\put(" << fmt(px(n)) << ",-1){\\makebox(0,0)[t]{$" << n.set.min() << "$}}\n";
      continue;
    }
    const Node& l = layout.nodes[n.left];
    const Node& r = layout.nodes[n.right];
    const double y = py(n);
    const int side = losing_side(losers, layout, n);
    const double left_end = px(n) - (side > 0 ? gap : 0);
    const double right_start = px(n) + (side < 0 ? gap : 0);
    s << "\\put(" << fmt(px(l)) << "," << fmt(y) << "){\\line(1,0){" << fmt(left_end - px(l)) << "}}\n";
    s << "\\put(" << fmt(right_start) << "," << fmt(y) << "){\\line(1,0){" << fmt(px(r) - right_start) << "}}\n";
    for (const Node* c : {&l, &r})
      s << "\\put(" << fmt(px(*c)) << "," << fmt(py(*c)) << "){\\line(0,1){" << fmt(y - py(*c)) << "}}\n";
  }
  const Node& root = layout.nodes[layout.root];
  s << "\\put(" << fmt(px(root)) << "," << fmt(py(root)) << "){\\line(0,1){3}}\n"
    << "\\end{picture}\n"
    << "\\end{document}\n";
  return s.str();
}

}  // namespace

std::string render_family(const MaximalCommutingFamily& family, std::optional<unsigned> winner, RenderFormat format) {
  std::optional<LoserMap> losers;
  if (winner) {
    if (!family.labels().contains(*winner)) throw domain_error("render: winner is not a label of the family");
    losers = LoserMap::canonical(family, *winner);
  }
  const Layout layout = layout_of(family);
  return format == RenderFormat::ascii ? render_ascii(layout, losers) : render_tex(layout, losers, family);
}

}  // namespace kzmc
