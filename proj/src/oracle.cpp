#include "pbn/oracle.hpp"

#include <cmath>

namespace pbn {

JointDistribution::JointDistribution(std::size_t n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes > max_nodes)
    raise(errc::capacity, "joint over " + std::to_string(n_nodes) + " nodes exceeds the 2^" +
                              std::to_string(max_nodes) + " enumeration bound");
  p_.assign(std::size_t(1) << n_nodes, 0.0);
}

void JointDistribution::check_normalized() const {
  double sum = 0.0;
  for (double p : p_) {
    if (p < 0.0) raise(errc::validation, "negative probability in joint distribution");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    raise(errc::validation, "joint distribution sums to " + std::to_string(sum));
}

namespace {

// Shared enumeration: tables[i] indexed like CptNode::table over parents[i].
JointDistribution enumerate(const std::vector<std::vector<std::size_t>>& parents,
                            const std::vector<std::vector<double>>& tables) {
  const std::size_t n = parents.size();
  JointDistribution joint(n);
  const std::size_t n_states = std::size_t(1) << n;
  for (std::size_t state = 0; state < n_states; ++state) {
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t combo = 0;
      for (std::size_t k = 0; k < parents[i].size(); ++k)
        if (state >> parents[i][k] & 1) combo |= std::size_t(1) << k;
      const double p_plus = tables[i][combo];
      p *= (state >> i & 1) ? p_plus : 1.0 - p_plus;
    }
    joint[state] = p;
  }
  return joint;
}

}  // namespace

JointDistribution exact_joint(const BayesNet& bn) {
  if (!bn.validated()) raise(errc::validation, "Bayesian network must be validated first");
  std::vector<std::vector<std::size_t>> parents(bn.size());
  std::vector<std::vector<double>> tables(bn.size());
  for (std::size_t i = 0; i < bn.size(); ++i) {
    parents[i] = bn.parent_ids(i);
    tables[i] = bn.node(i).table;
  }
  return enumerate(parents, tables);
}

JointDistribution exact_joint(const CompileResult& compiled) {
  const PslNetwork& net = compiled.network;
  std::vector<std::vector<std::size_t>> parents(compiled.bn_nodes);
  std::vector<std::vector<double>> tables(compiled.bn_nodes);
  for (std::size_t i = 0; i < compiled.bn_nodes; ++i) {
    for (const Edge& e : net.in_edges(i))
      if (net.kind(e.from) == NodeKind::Regular) parents[i].push_back(e.from);
    tables[i] = reconstruct_cpt(compiled, i);
  }
  return enumerate(parents, tables);
}

double exact_correlation(const JointDistribution& d, std::size_t i, std::size_t j) {
  if (i >= d.nodes() || j >= d.nodes()) raise(errc::invalid_input, "node index out of range");
  double acc = 0.0;
  for (std::size_t state = 0; state < d.states(); ++state) {
    const int mi = (state >> i & 1) ? 1 : -1;
    const int mj = (state >> j & 1) ? 1 : -1;
    acc += d.probability(state) * mi * mj;
  }
  return acc;
}

double total_variation(const JointDistribution& p, const JointDistribution& q) {
  if (p.nodes() != q.nodes())
    raise(errc::invalid_input, "total variation over mismatched state spaces");
  double acc = 0.0;
  for (std::size_t state = 0; state < p.states(); ++state)
    acc += std::fabs(p.probability(state) - q.probability(state));
  return acc / 2.0;
}

JointDistribution empirical_joint(const SampleTrace& trace, std::size_t n_nodes) {
  if (trace.samples() == 0) raise(errc::invalid_input, "empirical joint of an empty trace");
  if (n_nodes > trace.nodes()) raise(errc::invalid_input, "node count exceeds trace width");
  JointDistribution joint(n_nodes);
  const double weight = 1.0 / static_cast<double>(trace.samples());
  for (std::size_t t = 0; t < trace.samples(); ++t) {
    std::size_t state = 0;
    for (std::size_t i = 0; i < n_nodes; ++i)
      if (trace.at(t, i) > 0) state |= std::size_t(1) << i;
    joint[state] += weight;
  }
  return joint;
}

}  // namespace pbn
