#include "hyperset/decoration.hpp"

#include <algorithm>

namespace hyperset {

Decoration decorate(const SetGraph& g) {
  const Partition part = coarsest_bisimulation(g);

  // quotient graph: one node per block
  SetGraph q(part.block_count);
  for (NodeId a = 0; a < g.node_count(); ++a)
    for (NodeId b : g.children(a)) q.add_edge(part.block_of[a], part.block_of[b]);

  std::vector<std::optional<SetValue>> block_value(part.block_count);
  Decoration d;
  d.reserve(g.node_count());
  for (NodeId a = 0; a < g.node_count(); ++a) {
    auto& cached = block_value[part.block_of[a]];
    if (!cached) cached = canon(q, part.block_of[a]);
    d.push_back(*cached);
  }
  return d;
}

Decoration decorate_labeled(const SetGraph& g, const Labeling& labels) {
  const std::size_t n = g.node_count();
  std::size_t total = n;
  for (const auto& [node, label] : labels) {
    if (node >= n) throw Error("decorate_labeled: label on nonexistent node");
    total += label.node_count();
  }

  // splice: below each labeled node, a private copy of its label's elements
  SetGraph spliced(total);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b : g.children(a)) spliced.add_edge(a, b);
  NodeId off = static_cast<NodeId>(n);
  for (const auto& [node, label] : labels) {
    for (NodeId v = 0; v < label.node_count(); ++v)
      for (NodeId c : label.children_ids(v)) spliced.add_edge(off + v, off + c);
    for (NodeId c : label.children_ids(label.point())) spliced.add_edge(node, off + c);
    off += static_cast<NodeId>(label.node_count());
  }

  Decoration d = decorate(spliced);
  d.erase(d.begin() + static_cast<std::ptrdiff_t>(n), d.end());
  return d;
}

Decoration decorate_acyclic(const SetGraph& g, const Labeling& labels) {
  const std::size_t n = g.node_count();

  // reverse topological order by iterative DFS; grey hit = cycle
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<NodeId> postorder;
  postorder.reserve(n);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (color[start] != kWhite) continue;
    color[start] = kGrey;
    stack.emplace_back(start, 0);
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      const auto& kids = g.children(v);
      if (idx == kids.size()) {
        color[v] = kBlack;
        postorder.push_back(v);
        stack.pop_back();
        continue;
      }
      const NodeId c = kids[idx++];
      if (color[c] == kGrey) throw Error("decorate_acyclic: graph has a cycle");
      if (color[c] == kWhite) {
        color[c] = kGrey;
        stack.emplace_back(c, 0);
      }
    }
  }

  std::vector<std::optional<SetValue>> values(n);
  for (NodeId v : postorder) {
    std::vector<SetValue> elems;
    elems.reserve(g.children(v).size());
    for (NodeId c : g.children(v)) elems.push_back(*values[c]);
    SetValue base = make_set(elems);
    const auto it = labels.find(v);
    values[v] = it == labels.end() ? std::move(base) : union2(base, it->second);
  }

  Decoration d;
  d.reserve(n);
  for (NodeId v = 0; v < n; ++v) d.push_back(*values[v]);
  return d;
}

DecorationCheck check_decoration(const SetGraph& g, const Decoration& d,
                                 const Labeling* labels) {
  DecorationCheck result;
  if (d.size() != g.node_count()) throw Error("check_decoration: decoration not total");
  for (NodeId a = 0; a < g.node_count(); ++a) {
    std::vector<SetValue> elems;
    elems.reserve(g.children(a).size());
    for (NodeId b : g.children(a)) elems.push_back(d[b]);
    SetValue required = make_set(elems);
    if (labels) {
      const auto it = labels->find(a);
      if (it != labels->end()) required = union2(required, it->second);
    }
    if (!(d[a] == required)) {
      result.holds = false;
      result.node = a;
      result.found = d[a];
      result.required = std::move(required);
      return result;
    }
  }
  return result;
}

}  // namespace hyperset
