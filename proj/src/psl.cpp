#include "pbn/psl.hpp"

#include <algorithm>
#include <cmath>

namespace pbn {

std::string_view schedule_name(Schedule s) {
  return s == Schedule::TopologicalSweep ? "sweep" : "async";
}

PslNetwork::PslNetwork(std::size_t n_nodes, double gain)
    : gain_(gain),
      bias_(n_nodes, 0.0),
      in_edges_(n_nodes),
      kinds_(n_nodes, NodeKind::Regular),
      names_(n_nodes) {
  if (!(gain > 0.0)) raise(errc::invalid_input, "gain I0 must be positive");
  for (std::size_t i = 0; i < n_nodes; ++i) names_[i] = "n" + std::to_string(i);
}

void PslNetwork::set_gain(double gain) {
  if (!(gain > 0.0)) raise(errc::invalid_input, "gain I0 must be positive");
  gain_ = gain;
}

void PslNetwork::add_edge(std::size_t from, std::size_t to, double weight) {
  if (from >= size() || to >= size()) raise(errc::invalid_input, "edge endpoint out of range");
  if (from == to) raise(errc::validation, "self-coupling J_ii rejected on node " + names_[to]);
  for (const Edge& e : in_edges_[to])
    if (e.from == from)
      raise(errc::validation, "duplicate coupling " + names_[from] + " -> " + names_[to]);
  in_edges_[to].push_back({from, weight});
  order_.clear();  // structure changed; any cached order is stale
}

double PslNetwork::coupling(std::size_t to, std::size_t from) const {
  for (const Edge& e : in_edges_.at(to))
    if (e.from == from) return e.weight;
  return 0.0;
}

std::size_t PslNetwork::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  raise(errc::invalid_input, "no node named '" + std::string(name) + "'");
}

void PslNetwork::check_order_valid(const std::vector<std::size_t>& order) const {
  if (order.size() != size()) raise(errc::validation, "update order must list every node once");
  std::vector<std::size_t> position(size(), size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t node = order[pos];
    if (node >= size() || position[node] != size())
      raise(errc::validation, "update order is not a permutation of the nodes");
    position[node] = pos;
  }
  for (std::size_t to = 0; to < size(); ++to)
    for (const Edge& e : in_edges_[to])
      if (position[e.from] > position[to])
        raise(errc::validation, "update order places " + names_[to] + " before its parent " +
                                    names_[e.from]);
}

void PslNetwork::set_update_order(std::vector<std::size_t> order) {
  check_order_valid(order);
  order_ = std::move(order);
}

void PslNetwork::finalize() {
  if (order_.empty() && size() > 0) {
    // Kahn's algorithm, smallest index first for determinism.
    std::vector<std::size_t> indegree(size(), 0);
    std::vector<std::vector<std::size_t>> out(size());
    for (std::size_t to = 0; to < size(); ++to)
      for (const Edge& e : in_edges_[to]) {
        out[e.from].push_back(to);
        ++indegree[to];
      }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < size(); ++i)
      if (indegree[i] == 0) ready.push_back(i);
    std::vector<std::size_t> order;
    order.reserve(size());
    while (!ready.empty()) {
      std::sort(ready.begin(), ready.end(), std::greater<>());
      const std::size_t node = ready.back();
      ready.pop_back();
      order.push_back(node);
      for (std::size_t child : out[node])
        if (--indegree[child] == 0) ready.push_back(child);
    }
    if (order.size() != size())
      raise(errc::validation, "coupling graph has a cycle; only DAG networks are supported");
    order_ = std::move(order);
  } else {
    check_order_valid(order_);
  }
}

SampleTrace::SampleTrace(std::size_t n_nodes, Schedule schedule, std::uint64_t seed,
                         std::size_t burn_in)
    : n_nodes_(n_nodes), schedule_(schedule), seed_(seed), burn_in_(burn_in) {}

void SampleTrace::append(const NodeState& state) {
  data_.insert(data_.end(), state.begin(), state.end());
}

std::vector<std::int8_t> SampleTrace::node_series(std::size_t i) const {
  if (i >= n_nodes_) raise(errc::invalid_input, "node index out of range");
  std::vector<std::int8_t> series(samples());
  for (std::size_t t = 0; t < series.size(); ++t) series[t] = data_[t * n_nodes_ + i];
  return series;
}

std::int8_t pbit_update(double input, SplitStream& rng) {
  if (!std::isfinite(input)) raise(errc::domain, "p-bit input must be finite");
  const double u = rng.uniform_pm1();
  return (u + std::tanh(input)) >= 0.0 ? std::int8_t(1) : std::int8_t(-1);
}

double synapse_input(const PslNetwork& net, std::size_t i, const NodeState& state) {
  if (i >= net.size()) raise(errc::invalid_input, "node index out of range");
  if (state.size() != net.size()) raise(errc::invalid_input, "state size mismatch");
  double acc = net.bias(i);
  for (const Edge& e : net.in_edges(i)) acc += e.weight * state[e.from];
  return net.gain() * acc;
}

void sweep_topological(const PslNetwork& net, NodeState& state, NodeRngPool& rng) {
  for (std::size_t node : net.update_order())
    state[node] = pbit_update(synapse_input(net, node, state), rng.node(node));
}

void step_async(const PslNetwork& net, NodeState& state, NodeRngPool& rng) {
  const std::size_t node = rng.scheduler().uniform_below(net.size());
  state[node] = pbit_update(synapse_input(net, node, state), rng.node(node));
}

SampleTrace run(const PslNetwork& net, Schedule schedule, std::size_t n_samples,
                std::size_t burn_in, std::uint64_t seed) {
  if (n_samples == 0) raise(errc::invalid_input, "at least one sample must be requested");
  if (net.size() == 0) raise(errc::invalid_input, "cannot sample an empty network");
  if (schedule == Schedule::TopologicalSweep && net.update_order().empty())
    raise(errc::validation, "network has no update order; call finalize() first");

  NodeRngPool rng(seed, net.size());
  NodeState state(net.size(), 1);
  SampleTrace trace(net.size(), schedule, seed, burn_in);
  trace.reserve(n_samples);

  const std::size_t total = burn_in + n_samples;
  for (std::size_t snap = 0; snap < total; ++snap) {
    if (schedule == Schedule::TopologicalSweep) {
      sweep_topological(net, state, rng);
    } else {
      for (std::size_t k = 0; k < net.size(); ++k) step_async(net, state, rng);
    }
    if (snap >= burn_in) trace.append(state);
  }
  return trace;
}

double correlation(const SampleTrace& trace, std::size_t i, std::size_t j) {
  if (trace.samples() == 0) raise(errc::invalid_input, "correlation of an empty trace");
  if (i >= trace.nodes() || j >= trace.nodes())
    raise(errc::invalid_input, "node index out of range");
  std::int64_t acc = 0;
  const std::size_t n = trace.samples();
  for (std::size_t t = 0; t < n; ++t)
    acc += std::int64_t(trace.at(t, i)) * std::int64_t(trace.at(t, j));
  return static_cast<double>(acc) / static_cast<double>(n);
}

}  // namespace pbn
