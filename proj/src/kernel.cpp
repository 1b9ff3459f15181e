#include "hyperset/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <deque>

namespace hyperset {

namespace {

std::atomic<std::size_t> g_node_limit{1'000'000};

void check_budget(std::size_t nodes) {
  if (nodes > g_node_limit.load(std::memory_order_relaxed)) {
    throw LimitError("graph exceeds node limit (" + std::to_string(nodes) + " > " +
                     std::to_string(g_node_limit.load(std::memory_order_relaxed)) + ")");
  }
}

using Adjacency = std::vector<std::vector<NodeId>>;

// Exact signature refinement on an already-minimal graph. Returns one rank per
// node; ranks are invariant under node renumbering and, because no two nodes
// of a minimal graph are bisimilar, all distinct.
std::vector<NodeId> canonical_ranks(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<NodeId> rank(n, 0);
  if (n <= 1) return rank;
  std::size_t distinct = 1;
  for (;;) {
    // signature = (current rank, sorted distinct child ranks)
    std::vector<std::pair<std::vector<NodeId>, NodeId>> sigs(n);
    for (NodeId v = 0; v < n; ++v) {
      std::vector<NodeId> s;
      s.reserve(adj[v].size() + 1);
      s.push_back(rank[v]);
      std::vector<NodeId> cr;
      cr.reserve(adj[v].size());
      for (NodeId c : adj[v]) cr.push_back(rank[c]);
      std::sort(cr.begin(), cr.end());
      cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
      s.insert(s.end(), cr.begin(), cr.end());
      sigs[v] = {std::move(s), v};
    }
    std::sort(sigs.begin(), sigs.end());
    std::size_t new_distinct = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0 || sigs[i].first != sigs[i - 1].first) ++new_distinct;
      rank[sigs[i].second] = static_cast<NodeId>(new_distinct - 1);
    }
    if (new_distinct == distinct) break;
    distinct = new_distinct;
  }
  assert(distinct == n && "rank pass requires a bisimulation-minimal graph");
  return rank;
}

// Deterministic renumbering of a minimal graph: BFS from the point, children
// visited in increasing canonical rank. The point becomes node 0.
Adjacency renumber_from(const Adjacency& adj, NodeId point) {
  const std::size_t n = adj.size();
  const std::vector<NodeId> rank = canonical_ranks(adj);
  constexpr NodeId kUnseen = static_cast<NodeId>(-1);
  std::vector<NodeId> new_id(n, kUnseen);
  std::vector<NodeId> order;
  order.reserve(n);
  new_id[point] = 0;
  order.push_back(point);
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId v = order[head];
    std::vector<NodeId> kids = adj[v];
    std::sort(kids.begin(), kids.end(),
              [&](NodeId a, NodeId b) { return rank[a] < rank[b]; });
    for (NodeId c : kids) {
      if (new_id[c] == kUnseen) {
        new_id[c] = static_cast<NodeId>(order.size());
        order.push_back(c);
      }
    }
  }
  assert(order.size() == n && "all nodes must be reachable from the point");
  Adjacency out(n);
  for (NodeId v = 0; v < n; ++v) {
    auto& kids = out[new_id[v]];
    kids.reserve(adj[v].size());
    for (NodeId c : adj[v]) kids.push_back(new_id[c]);
    std::sort(kids.begin(), kids.end());
  }
  return out;
}

std::size_t hash_adjacency(const Adjacency& adj) {
  // FNV-1a over the flattened structure
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(adj.size());
  for (const auto& kids : adj) {
    mix(kids.size());
    for (NodeId c : kids) mix(c);
  }
  return static_cast<std::size_t>(h);
}

// Restrict to the subgraph reachable from point; returns the local adjacency
// and maps the point to local node 0... not necessarily: keeps discovery order.
Adjacency reachable_subgraph(const Adjacency& adj, NodeId point, NodeId* local_point) {
  const std::size_t n = adj.size();
  constexpr NodeId kUnseen = static_cast<NodeId>(-1);
  std::vector<NodeId> local(n, kUnseen);
  std::vector<NodeId> order;
  local[point] = 0;
  order.push_back(point);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId c : adj[order[head]]) {
      if (local[c] == kUnseen) {
        local[c] = static_cast<NodeId>(order.size());
        order.push_back(c);
      }
    }
  }
  Adjacency out(order.size());
  for (std::size_t v = 0; v < order.size(); ++v) {
    const auto& kids = adj[order[v]];
    out[v].reserve(kids.size());
    for (NodeId c : kids) out[v].push_back(local[c]);
    std::sort(out[v].begin(), out[v].end());
  }
  *local_point = 0;
  return out;
}

Partition refine_partition(const Adjacency& adj) {
  const std::size_t n = adj.size();
  Partition part;
  part.block_of.assign(n, 0);
  if (n == 0) return part;

  std::vector<std::vector<NodeId>> preds(n);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b : adj[a]) preds[b].push_back(a);

  std::vector<std::vector<NodeId>> blocks(1);
  blocks[0].reserve(n);
  for (NodeId v = 0; v < n; ++v) blocks[0].push_back(v);

  std::deque<NodeId> worklist{0};
  std::vector<char> queued{1};
  std::vector<char> mark(n, 0);

  while (!worklist.empty()) {
    const NodeId s = worklist.front();
    worklist.pop_front();
    queued[s] = 0;

    // nodes with at least one child in the splitter
    std::vector<NodeId> pre;
    for (NodeId v : blocks[s]) {
      for (NodeId p : preds[v]) {
        if (!mark[p]) {
          mark[p] = 1;
          pre.push_back(p);
        }
      }
    }
    for (NodeId p : pre) mark[p] = 0;

    std::vector<std::pair<NodeId, NodeId>> grouped;  // (block, node)
    grouped.reserve(pre.size());
    for (NodeId p : pre) grouped.emplace_back(part.block_of[p], p);
    std::sort(grouped.begin(), grouped.end());

    for (std::size_t i = 0; i < grouped.size();) {
      const NodeId b = grouped[i].first;
      std::size_t j = i;
      while (j < grouped.size() && grouped[j].first == b) ++j;
      if (j - i < blocks[b].size()) {
        // split: members with a child in s keep block b, the rest move out
        for (std::size_t k = i; k < j; ++k) mark[grouped[k].second] = 1;
        std::vector<NodeId> stay, move;
        stay.reserve(j - i);
        for (NodeId v : blocks[b]) (mark[v] ? stay : move).push_back(v);
        for (std::size_t k = i; k < j; ++k) mark[grouped[k].second] = 0;

        const NodeId nb = static_cast<NodeId>(blocks.size());
        blocks[b] = std::move(stay);
        blocks.push_back(std::move(move));
        for (NodeId v : blocks[nb]) part.block_of[v] = nb;
        queued.push_back(0);
        if (!queued[b]) {
          queued[b] = 1;
          worklist.push_back(b);
        }
        queued[nb] = 1;
        worklist.push_back(nb);
      }
      i = j;
    }
  }
  part.block_count = blocks.size();
  return part;
}

// Quotient of adj by the partition; block adjacency, sorted-unique.
Adjacency quotient(const Adjacency& adj, const Partition& part) {
  Adjacency q(part.block_count);
  for (NodeId v = 0; v < adj.size(); ++v) {
    auto& kids = q[part.block_of[v]];
    for (NodeId c : adj[v]) kids.push_back(part.block_of[c]);
  }
  for (auto& kids : q) {
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
  }
  return q;
}

Adjacency graph_adjacency(const SetGraph& g) {
  Adjacency adj(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) adj[v] = g.children(v);
  return adj;
}

}  // namespace

NodeId SetGraph::add_node() {
  adj_.emplace_back();
  return static_cast<NodeId>(adj_.size() - 1);
}

void SetGraph::add_edge(NodeId parent, NodeId child) {
  if (parent >= adj_.size() || child >= adj_.size())
    throw Error("add_edge: node id out of range");
  auto& kids = adj_[parent];
  auto it = std::lower_bound(kids.begin(), kids.end(), child);
  if (it == kids.end() || *it != child) kids.insert(it, child);
}

const std::vector<NodeId>& SetGraph::children(NodeId n) const {
  if (n >= adj_.size()) throw Error("children: node id out of range");
  return adj_[n];
}

std::vector<Edge> SetGraph::edges() const {
  std::vector<Edge> out;
  for (NodeId v = 0; v < adj_.size(); ++v)
    for (NodeId c : adj_[v]) out.emplace_back(v, c);
  return out;
}

Partition coarsest_bisimulation(const SetGraph& g) {
  return refine_partition(graph_adjacency(g));
}

std::size_t node_limit() { return g_node_limit.load(std::memory_order_relaxed); }

void set_node_limit(std::size_t limit) {
  g_node_limit.store(limit, std::memory_order_relaxed);
}

SetGraph SetValue::as_graph() const {
  SetGraph g(node_count());
  for (NodeId v = 0; v < node_count(); ++v)
    for (NodeId c : rep_->adj[v]) g.add_edge(v, c);
  return g;
}

bool SetValue::operator==(const SetValue& other) const {
  if (rep_ == other.rep_) return true;
  if (rep_->hash != other.rep_->hash) return false;
  return rep_->adj == other.rep_->adj;
}

bool SetValue::operator<(const SetValue& other) const {
  if (rep_ == other.rep_) return false;
  if (node_count() != other.node_count()) return node_count() < other.node_count();
  return rep_->adj < other.rep_->adj;
}

namespace detail {

SetValue make_canonical(Adjacency adj) {
  auto rep = std::make_shared<SetValue::Rep>();
  rep->hash = hash_adjacency(adj);
  rep->adj = std::move(adj);
  return SetValue(std::move(rep));
}

}  // namespace detail

namespace {

// Canonical form of a node of an already-minimal graph: restriction stays
// minimal, so only the deterministic renumbering is needed.
SetValue canon_of_minimal(const Adjacency& adj, NodeId point) {
  NodeId local_point = 0;
  Adjacency local = reachable_subgraph(adj, point, &local_point);
  return detail::make_canonical(renumber_from(local, local_point));
}

}  // namespace

SetValue canon(const SetGraph& g, NodeId point) {
  if (point >= g.node_count()) throw Error("canon: point out of range");
  check_budget(g.node_count());
  NodeId local_point = 0;
  Adjacency local = reachable_subgraph(graph_adjacency(g), point, &local_point);
  Partition part = refine_partition(local);
  Adjacency q = quotient(local, part);
  return detail::make_canonical(renumber_from(q, part.block_of[local_point]));
}

SetValue make_set(std::span<const SetValue> elements) {
  std::size_t total = 1;
  for (const SetValue& e : elements) total += e.node_count();
  check_budget(total);
  SetGraph g(total);
  NodeId off = 1;
  for (const SetValue& e : elements) {
    for (NodeId v = 0; v < e.node_count(); ++v)
      for (NodeId c : e.children_ids(v)) g.add_edge(off + v, off + c);
    g.add_edge(0, off);  // element points are node 0 of their own graphs
    off += static_cast<NodeId>(e.node_count());
  }
  return canon(g, 0);
}

SetValue make_set(std::initializer_list<SetValue> elements) {
  return make_set(std::span<const SetValue>(elements.begin(), elements.size()));
}

bool bisimilar(const SetValue& x, const SetValue& y) { return x == y; }

std::vector<SetValue> children(const SetValue& x) {
  std::vector<SetValue> out;
  out.reserve(x.children_ids(0).size());
  Adjacency adj(x.node_count());
  for (NodeId v = 0; v < x.node_count(); ++v) adj[v] = x.children_ids(v);
  for (NodeId c : x.children_ids(0)) out.push_back(canon_of_minimal(adj, c));
  return out;
}

bool elem(const SetValue& x, const SetValue& y) {
  Adjacency adj(y.node_count());
  for (NodeId v = 0; v < y.node_count(); ++v) adj[v] = y.children_ids(v);
  for (NodeId c : y.children_ids(0))
    if (canon_of_minimal(adj, c) == x) return true;
  return false;
}

bool subset(const SetValue& x, const SetValue& y) {
  const std::vector<SetValue> ys = children(y);
  for (const SetValue& cx : children(x)) {
    bool found = false;
    for (const SetValue& cy : ys) {
      if (cx == cy) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

SetValue union2(const SetValue& x, const SetValue& y) {
  std::vector<SetValue> elems = children(x);
  for (SetValue& cy : children(y)) elems.push_back(std::move(cy));
  return make_set(elems);
}

SetValue intersect(const SetValue& x, const SetValue& y) {
  const std::vector<SetValue> ys = children(y);
  std::vector<SetValue> elems;
  for (SetValue& cx : children(x)) {
    for (const SetValue& cy : ys) {
      if (cx == cy) {
        elems.push_back(std::move(cx));
        break;
      }
    }
  }
  return make_set(elems);
}

SetValue diff(const SetValue& x, const SetValue& y) {
  const std::vector<SetValue> ys = children(y);
  std::vector<SetValue> elems;
  for (SetValue& cx : children(x)) {
    bool found = false;
    for (const SetValue& cy : ys) {
      if (cx == cy) {
        found = true;
        break;
      }
    }
    if (!found) elems.push_back(std::move(cx));
  }
  return make_set(elems);
}

SetValue monadic_union(const SetValue& a) {
  std::vector<SetValue> elems;
  for (const SetValue& e : children(a))
    for (SetValue& z : children(e)) elems.push_back(std::move(z));
  return make_set(elems);
}

bool is_normal(const SetValue& x) { return !elem(x, x); }

bool is_well_founded(const SetValue& x) {
  // acyclicity by iterative DFS; on a minimal apg every cycle is reachable
  const std::size_t n = x.node_count();
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (color[start] != kWhite) continue;
    color[start] = kGrey;
    stack.emplace_back(start, 0);
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      const auto& kids = x.children_ids(v);
      if (idx == kids.size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const NodeId c = kids[idx++];
      if (color[c] == kGrey) return false;
      if (color[c] == kWhite) {
        color[c] = kGrey;
        stack.emplace_back(c, 0);
      }
    }
  }
  return true;
}

namespace {

void unfold_into(UnfoldNode& node, std::size_t remaining) {
  if (remaining == 0) return;
  for (SetValue& c : children(node.value())) {
    UnfoldNode child;
    child.chain = node.chain;
    child.chain.push_back(std::move(c));
    unfold_into(child, remaining - 1);
    node.children.push_back(std::move(child));
  }
}

}  // namespace

UnfoldNode unfold_tree(const SetValue& x, std::size_t depth) {
  UnfoldNode root;
  root.chain.push_back(x);
  unfold_into(root, depth);
  return root;
}

}  // namespace hyperset
