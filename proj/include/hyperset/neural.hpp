#ifndef HYPERSET_NEURAL_HPP
#define HYPERSET_NEURAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperset/decoration.hpp"
#include "hyperset/encodings.hpp"
#include "hyperset/kernel.hpp"

namespace hyperset {

/// Weighted threshold network over a directed graph. An edge a -> b is the
/// synapse from neuron a to neuron b: signals flow along edge direction, and
/// the same edges are read as the membership graph when the state is
/// decorated (the point's set collects the sets of the neurons it feeds).
/// One learning rate and one threshold apply network-wide; at most one
/// synapse per ordered pair. Per-neuron thresholds would slot into
/// mcp_voltage's single comparison, but are not provided.
class NeuralNet {
 public:
  NeuralNet(SetGraph graph, Rational alpha, Rational theta, NodeId point);

  const SetGraph& graph() const { return graph_; }
  /// All synapses ordered by (source, target); states index weights by this.
  const std::vector<Edge>& synapses() const { return synapses_; }
  std::optional<std::size_t> synapse_index(NodeId source, NodeId target) const;
  std::size_t neuron_count() const { return graph_.node_count(); }
  const Rational& alpha() const { return alpha_; }
  const Rational& theta() const { return theta_; }
  NodeId point() const { return point_; }

 private:
  SetGraph graph_;
  std::vector<Edge> synapses_;
  Rational alpha_;
  Rational theta_;
  NodeId point_;
};

/// Frozen snapshot of the coupled dynamics: exact rational weights (parallel
/// to net.synapses()), binary voltages per neuron, and the step counter.
struct NeuralState {
  std::vector<Rational> weights;
  std::vector<std::uint8_t> voltages;
  std::int64_t time = 0;

  bool operator==(const NeuralState&) const = default;
};

/// Throws Error unless the state is total and binary-valued for the net.
void validate_state(const NeuralNet& net, const NeuralState& state);

/// In-edges (p, a) whose source is currently firing.
std::vector<Edge> active_in_edges(const NeuralNet& net, const NeuralState& state, NodeId a);

/// Threshold update: 1 iff sum of w(p->a) * v(p) over in-edges reaches theta.
/// The threshold itself fires (Heaviside value 1 at 0).
int mcp_voltage(const NeuralNet& net, const NeuralState& state, NodeId a);

/// Weight update for one synapse given the freshly computed voltages:
/// w + alpha * v_old(source) * v_new(target).
Rational hebb_weight(const NeuralNet& net, const NeuralState& state,
                     const std::vector<std::uint8_t>& v_new, Edge synapse);

/// One synchronous step: all voltages from the old state, then all weights
/// from old voltages and new target voltages. Deterministic.
NeuralState step(const NeuralNet& net, const NeuralState& state);

/// Per-neuron labels: the histogram of weights on currently active in-edges,
/// encoded as a set. Neurons with no active in-edge carry the empty label.
/// Edge identity is forgotten; only the weight multiset matters.
Labeling state_labeling(const NeuralNet& net, const NeuralState& state);

/// The labeled decoration of the state: d(a) = {d(b) | a -> b} ∪ label(a).
Decoration mz_decorate(const NeuralNet& net, const NeuralState& state);

/// The set decorating the distinguished neuron.
SetValue thema(const NeuralNet& net, const NeuralState& state);

/// The thema filtered by the selector it parameterizes: k_a(t, t) for
/// t = thema(net, state).
SetValue thema_quale(const NeuralNet& net, const NeuralState& state);

struct TrajectoryEntry {
  NeuralState state;
  SetValue thema;
  std::optional<Decoration> decoration;
};

/// States after 0, 1, ..., steps applications of step(), each labeled and
/// decorated as-is (entry times increase by one from the initial time).
struct Trajectory {
  std::vector<TrajectoryEntry> entries;
};

Trajectory run(const NeuralNet& net, const NeuralState& initial, std::size_t steps,
               bool record_decorations = true);

}  // namespace hyperset

#endif  // HYPERSET_NEURAL_HPP
