#include "hyperset/neural.hpp"

#include <algorithm>

#include "hyperset/operators.hpp"

namespace hyperset {

NeuralNet::NeuralNet(SetGraph graph, Rational alpha, Rational theta, NodeId point)
    : graph_(std::move(graph)),
      synapses_(graph_.edges()),
      alpha_(alpha),
      theta_(theta),
      point_(point) {
  if (point_ >= graph_.node_count()) throw Error("neural net: point out of range");
}

std::optional<std::size_t> NeuralNet::synapse_index(NodeId source, NodeId target) const {
  const Edge key{source, target};
  const auto it = std::lower_bound(synapses_.begin(), synapses_.end(), key);
  if (it == synapses_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - synapses_.begin());
}

void validate_state(const NeuralNet& net, const NeuralState& state) {
  if (state.weights.size() != net.synapses().size())
    throw Error("neural state: weights not total on synapses");
  if (state.voltages.size() != net.neuron_count())
    throw Error("neural state: voltages not total on neurons");
  for (const std::uint8_t v : state.voltages)
    if (v > 1) throw Error("neural state: voltages must be 0 or 1");
}

std::vector<Edge> active_in_edges(const NeuralNet& net, const NeuralState& state, NodeId a) {
  validate_state(net, state);
  std::vector<Edge> active;
  for (const Edge& e : net.synapses())
    if (e.second == a && state.voltages[e.first] == 1) active.push_back(e);
  return active;
}

int mcp_voltage(const NeuralNet& net, const NeuralState& state, NodeId a) {
  validate_state(net, state);
  Rational sum(0);
  const auto& synapses = net.synapses();
  for (std::size_t i = 0; i < synapses.size(); ++i)
    if (synapses[i].second == a && state.voltages[synapses[i].first] == 1)
      sum = sum + state.weights[i];
  return sum >= net.theta() ? 1 : 0;
}

Rational hebb_weight(const NeuralNet& net, const NeuralState& state,
                     const std::vector<std::uint8_t>& v_new, Edge synapse) {
  validate_state(net, state);
  const auto idx = net.synapse_index(synapse.first, synapse.second);
  if (!idx) throw Error("hebb_weight: no such synapse");
  if (v_new.size() != net.neuron_count())
    throw Error("hebb_weight: new voltages not total");
  const Rational w = state.weights[*idx];
  if (state.voltages[synapse.first] == 1 && v_new[synapse.second] == 1)
    return w + net.alpha();
  return w;
}

NeuralState step(const NeuralNet& net, const NeuralState& state) {
  validate_state(net, state);
  NeuralState next;
  next.voltages.reserve(net.neuron_count());
  for (NodeId a = 0; a < net.neuron_count(); ++a)
    next.voltages.push_back(static_cast<std::uint8_t>(mcp_voltage(net, state, a)));
  next.weights.reserve(net.synapses().size());
  for (const Edge& e : net.synapses())
    next.weights.push_back(hebb_weight(net, state, next.voltages, e));
  next.time = state.time + 1;
  return next;
}

Labeling state_labeling(const NeuralNet& net, const NeuralState& state) {
  validate_state(net, state);
  const auto& synapses = net.synapses();
  std::vector<std::vector<Rational>> active_weights(net.neuron_count());
  for (std::size_t i = 0; i < synapses.size(); ++i)
    if (state.voltages[synapses[i].first] == 1)
      active_weights[synapses[i].second].push_back(state.weights[i]);

  Labeling labels;
  for (NodeId a = 0; a < net.neuron_count(); ++a) {
    if (active_weights[a].empty()) continue;  // empty histogram, empty label
    labels.emplace(a, histogram_to_set(histogram_of(active_weights[a])));
  }
  return labels;
}

Decoration mz_decorate(const NeuralNet& net, const NeuralState& state) {
  return decorate_labeled(net.graph(), state_labeling(net, state));
}

SetValue thema(const NeuralNet& net, const NeuralState& state) {
  return mz_decorate(net, state)[net.point()];
}

SetValue thema_quale(const NeuralNet& net, const NeuralState& state) {
  const SetValue t = thema(net, state);
  return k_a(t, t);
}

Trajectory run(const NeuralNet& net, const NeuralState& initial, std::size_t steps,
               bool record_decorations) {
  validate_state(net, initial);
  Trajectory trajectory;
  trajectory.entries.reserve(steps + 1);
  NeuralState current = initial;
  for (std::size_t t = 0;; ++t) {
    Decoration d = mz_decorate(net, current);
    TrajectoryEntry entry{current, d[net.point()], std::nullopt};
    if (record_decorations) entry.decoration = std::move(d);
    trajectory.entries.push_back(std::move(entry));
    if (t == steps) break;
    current = step(net, current);
  }
  return trajectory;
}

}  // namespace hyperset
