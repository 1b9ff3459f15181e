#ifndef HYPERSET_KERNEL_HPP
#define HYPERSET_KERNEL_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hyperset/errors.hpp"

namespace hyperset {

/// Dense node index within one SetGraph.
using NodeId = std::uint32_t;

/// Ordered edge (parent, child): the child is an element of the parent.
using Edge = std::pair<NodeId, NodeId>;

/// Finite directed graph read as a system of set equations: node a denotes
/// the set whose elements are the sets denoted by a's children. The edge
/// collection is a set (duplicates are ignored).
class SetGraph {
 public:
  SetGraph() = default;
  explicit SetGraph(std::size_t node_count) : adj_(node_count) {}

  NodeId add_node();
  /// Inserts (parent, child); a duplicate edge is a no-op.
  void add_edge(NodeId parent, NodeId child);

  std::size_t node_count() const { return adj_.size(); }
  /// Children of a node, ascending, no duplicates.
  const std::vector<NodeId>& children(NodeId n) const;
  /// All edges, ordered by (parent, child).
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adj_;
};

/// Coarsest-bisimulation witness: block indices are dense, 0-based.
struct Partition {
  std::vector<NodeId> block_of;  // node -> block
  std::size_t block_count = 0;

  bool same_block(NodeId a, NodeId b) const { return block_of[a] == block_of[b]; }
};

/// Coarsest bisimulation of a graph, by splitter-queue partition refinement.
/// Two nodes end in the same block iff they denote the same set.
Partition coarsest_bisimulation(const SetGraph& g);

class SetValue;

namespace detail {
/// Wraps an adjacency that is already canonical (minimal, renumbered).
/// Internal building block for canon and the child-extraction fast path.
SetValue make_canonical(std::vector<std::vector<NodeId>> adj);
}  // namespace detail

/// A canonical hyperset: the bisimulation-minimal accessible pointed graph,
/// renumbered so that structurally equal sets are bit-identical. The point is
/// always node 0. Instances are immutable and cheap to copy (shared storage).
class SetValue {
 public:
  std::size_t node_count() const { return rep_->adj.size(); }
  NodeId point() const { return 0; }
  const std::vector<NodeId>& children_ids(NodeId n) const { return rep_->adj[n]; }

  /// The minimal graph itself, usable as input to canon/decorate again.
  SetGraph as_graph() const;

  std::size_t hash() const { return rep_->hash; }

  bool operator==(const SetValue& other) const;
  bool operator!=(const SetValue& other) const { return !(*this == other); }
  /// Total order on canonical forms (node count, then adjacency, lexicographic).
  bool operator<(const SetValue& other) const;

 private:
  struct Rep {
    std::vector<std::vector<NodeId>> adj;
    std::size_t hash = 0;
  };
  explicit SetValue(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;

  friend SetValue detail::make_canonical(std::vector<std::vector<NodeId>> adj);
};

struct SetValueHash {
  std::size_t operator()(const SetValue& v) const { return v.hash(); }
};

/// Guard against runaway constructions (dual towers and the like). Applies to
/// every graph handed to canon and to the graphs built by the set operations.
std::size_t node_limit();
void set_node_limit(std::size_t limit);

/// Canonical form of the set denoted by `point`: restrict to the reachable
/// subgraph, quotient by the coarsest bisimulation, renumber deterministically.
/// Idempotent. Throws Error if point is out of range, LimitError over budget.
SetValue canon(const SetGraph& g, NodeId point);

/// The set whose elements are exactly the given values (duplicates collapse).
SetValue make_set(std::span<const SetValue> elements);
SetValue make_set(std::initializer_list<SetValue> elements);
inline SetValue empty_set() { return make_set({}); }

/// Set equality. Canonical forms make this structural identity.
bool bisimilar(const SetValue& x, const SetValue& y);

/// The elements of x, pairwise distinct, in the canonical child order.
std::vector<SetValue> children(const SetValue& x);

/// Membership: some element of y equals x.
bool elem(const SetValue& x, const SetValue& y);

/// Inclusion: every element of x is an element of y.
bool subset(const SetValue& x, const SetValue& y);

SetValue union2(const SetValue& x, const SetValue& y);
SetValue intersect(const SetValue& x, const SetValue& y);
/// x - y = x - (x ∩ y): the elements of x that are not elements of y.
SetValue diff(const SetValue& x, const SetValue& y);
/// Union of the elements of a: { z | z ∈ e for some e ∈ a }.
SetValue monadic_union(const SetValue& a);

/// x is normal iff x ∉ x.
bool is_normal(const SetValue& x);
/// True iff the minimal graph is acyclic (no infinite membership chain).
bool is_well_founded(const SetValue& x);

/// Node of the canonical unfolding tree of a set, truncated at a fixed depth.
/// `chain` is the membership chain from the unfolded set down to this node
/// (front = the root set, back = this node's set).
struct UnfoldNode {
  std::vector<SetValue> chain;
  std::vector<UnfoldNode> children;

  const SetValue& value() const { return chain.back(); }
};

/// The unfolding tree of x with edge-depth at most `depth`. Non-well-founded
/// sets unfold to infinite trees, so truncation is not optional.
UnfoldNode unfold_tree(const SetValue& x, std::size_t depth);

}  // namespace hyperset

#endif  // HYPERSET_KERNEL_HPP
