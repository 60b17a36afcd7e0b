#pragma once

#include <cstdint>
#include <vector>

#include "pbn/bayes.hpp"
#include "pbn/compile.hpp"
#include "pbn/psl.hpp"

namespace pbn {

// Full joint over n bipolar nodes, indexed by bitmask (bit i set = node i +1).
// Brute-force enumeration only; capped at 2^20 states.
class JointDistribution {
 public:
  static constexpr std::size_t max_nodes = 20;

  explicit JointDistribution(std::size_t n_nodes);

  std::size_t nodes() const { return n_nodes_; }
  std::size_t states() const { return p_.size(); }
  double probability(std::size_t state) const { return p_.at(state); }
  double& operator[](std::size_t state) { return p_[state]; }

  // Throws unless the entries are nonnegative and sum to 1 within 1e-12.
  void check_normalized() const;

 private:
  std::size_t n_nodes_;
  std::vector<double> p_;
};

// P(state) = prod_i P_i(m_i | parents), factors straight from the CPTs.
JointDistribution exact_joint(const BayesNet& bn);

// Same, with factors from reconstruct_cpt; auxiliary nodes are deterministic
// given their parents and marginalize away, so the joint is over the BN nodes.
JointDistribution exact_joint(const CompileResult& compiled);

// sum_states P(state) * m_i * m_j.
double exact_correlation(const JointDistribution& d, std::size_t i, std::size_t j);

// (1/2) sum |p - q|; distributions must share the state space.
double total_variation(const JointDistribution& p, const JointDistribution& q);

// Histogram of the first n_nodes columns of a trace, as a distribution.
JointDistribution empirical_joint(const SampleTrace& trace, std::size_t n_nodes);

}  // namespace pbn
