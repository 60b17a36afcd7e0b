#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbn/errors.hpp"
#include "pbn/rng.hpp"

namespace pbn {

enum class NodeKind : std::uint8_t { Regular, Auxiliary };

enum class Schedule : std::uint8_t { TopologicalSweep, RandomAsync };

std::string_view schedule_name(Schedule s);

// Bipolar node states, one entry per node, each exactly -1 or +1.
using NodeState = std::vector<std::int8_t>;

struct Edge {
  std::size_t from;
  double weight;  // dimensionless coupling J
};

// Directed weighted p-bit network: couplings J (row i receives from column j),
// per-node bias h, global gain I0. The nonzero-coupling graph must be acyclic;
// update_order is a topological sort of it (parents before children).
class PslNetwork {
 public:
  PslNetwork() : PslNetwork(0) {}
  explicit PslNetwork(std::size_t n_nodes, double gain = 1.0);

  std::size_t size() const { return bias_.size(); }
  double gain() const { return gain_; }
  void set_gain(double gain);

  double bias(std::size_t i) const { return bias_.at(i); }
  void set_bias(std::size_t i, double h) { bias_.at(i) = h; }

  // Adds coupling from -> to. Self-edges and duplicates are rejected.
  void add_edge(std::size_t from, std::size_t to, double weight);
  std::span<const Edge> in_edges(std::size_t to) const { return in_edges_.at(to); }
  // J_{to,from}; zero when no edge is stored.
  double coupling(std::size_t to, std::size_t from) const;

  NodeKind kind(std::size_t i) const { return kinds_.at(i); }
  void set_kind(std::size_t i, NodeKind k) { kinds_.at(i) = k; }

  const std::string& name(std::size_t i) const { return names_.at(i); }
  void set_name(std::size_t i, std::string name) { names_.at(i) = std::move(name); }
  // Index of a named node; throws invalid_input when absent.
  std::size_t index_of(std::string_view name) const;

  const std::vector<std::size_t>& update_order() const { return order_; }
  void set_update_order(std::vector<std::size_t> order);
  // Computes a topological order (Kahn, smallest index first) if none was set,
  // then checks every structural invariant. Throws validation errors.
  void finalize();
  bool finalized() const { return !order_.empty() || size() == 0; }

 private:
  void check_order_valid(const std::vector<std::size_t>& order) const;

  double gain_;
  std::vector<double> bias_;
  std::vector<std::vector<Edge>> in_edges_;
  std::vector<NodeKind> kinds_;
  std::vector<std::string> names_;
  std::vector<std::size_t> order_;
};

// Time series of bipolar snapshots. One snapshot per sweep (clocked) or per
// n_nodes single-site updates (clockless), so sample counts are comparable
// across schedules. Row-major, n_nodes entries per snapshot.
class SampleTrace {
 public:
  SampleTrace(std::size_t n_nodes, Schedule schedule, std::uint64_t seed, std::size_t burn_in);

  std::size_t nodes() const { return n_nodes_; }
  std::size_t samples() const { return n_nodes_ == 0 ? 0 : data_.size() / n_nodes_; }
  std::int8_t at(std::size_t t, std::size_t i) const { return data_[t * n_nodes_ + i]; }
  std::span<const std::int8_t> snapshot(std::size_t t) const {
    return {data_.data() + t * n_nodes_, n_nodes_};
  }
  // Column extraction (strided copy).
  std::vector<std::int8_t> node_series(std::size_t i) const;

  void append(const NodeState& state);
  void reserve(std::size_t n_samples) { data_.reserve(n_samples * n_nodes_); }
  const std::vector<std::int8_t>& data() const { return data_; }

  Schedule schedule() const { return schedule_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t burn_in() const { return burn_in_; }

 private:
  std::size_t n_nodes_;
  Schedule schedule_;
  std::uint64_t seed_;
  std::size_t burn_in_;
  std::vector<std::int8_t> data_;
};

// One p-bit draw: sgn(rand(-1,1) + tanh I), sgn(0) := +1.
// Returns +1 with probability (1 + tanh I)/2.
std::int8_t pbit_update(double input, SplitStream& rng);

// Synapse: I_i = I0 * (h_i + sum_j J_ij m_j).
double synapse_input(const PslNetwork& net, std::size_t i, const NodeState& state);

// Updates every node once in topological order. One sweep produces one exact
// ancestral sample of the compiled Bayesian network, whatever the prior state.
void sweep_topological(const PslNetwork& net, NodeState& state, NodeRngPool& rng);

// Clockless step: picks one node uniformly at random and updates only it.
void step_async(const PslNetwork& net, NodeState& state, NodeRngPool& rng);

// Runs the sampler: burn_in snapshots discarded, n_samples recorded.
// Deterministic for fixed (seed, schedule). Initial state is all +1.
SampleTrace run(const PslNetwork& net, Schedule schedule, std::size_t n_samples,
                std::size_t burn_in, std::uint64_t seed);

// Time-average of m_i(t) * m_j(t) over the recorded snapshots.
double correlation(const SampleTrace& trace, std::size_t i, std::size_t j);

}  // namespace pbn
