#ifndef HYPERSET_DECORATION_HPP
#define HYPERSET_DECORATION_HPP

#include <map>
#include <optional>
#include <vector>

#include "hyperset/kernel.hpp"

namespace hyperset {

/// Per-node label sets; a node without an entry carries the empty label.
using Labeling = std::map<NodeId, SetValue>;

/// Total assignment node -> canonical set, indexed by NodeId.
using Decoration = std::vector<SetValue>;

/// The unique decoration of a finite graph: every node receives the canonical
/// set whose elements are its children's sets. The graph need not be pointed
/// or accessible; one shared minimization pass serves all nodes.
Decoration decorate(const SetGraph& g);

/// The unique labeled decoration: node a receives {d(b) | a -> b} ∪ label(a).
/// Built by splicing each label's elements below its node and decorating the
/// spliced graph, which reduces the labeled problem to the plain one.
Decoration decorate_labeled(const SetGraph& g, const Labeling& labels);

/// Bottom-up construction for well-founded graphs, in reverse topological
/// order. Independent of the quotient path used by decorate; also the natural
/// fast path when the graph is known acyclic. Throws Error on a cyclic graph.
Decoration decorate_acyclic(const SetGraph& g, const Labeling& labels = {});

/// Verification outcome; on failure carries the first offending node together
/// with the value found and the value the defining equation demands.
struct DecorationCheck {
  bool holds = true;
  std::optional<NodeId> node;
  std::optional<SetValue> found;
  std::optional<SetValue> required;

  explicit operator bool() const { return holds; }
};

/// Checks the defining equation at every node, with set equality throughout.
/// Pass labels to check a labeled decoration.
DecorationCheck check_decoration(const SetGraph& g, const Decoration& d,
                                 const Labeling* labels = nullptr);

}  // namespace hyperset

#endif  // HYPERSET_DECORATION_HPP
