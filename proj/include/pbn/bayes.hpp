#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbn/errors.hpp"

namespace pbn {

// One node of a Bayesian network: 0, 1 or 2 parents and a table giving
// P(node = +1) per parent-value combination. Table index: bit k set iff
// parent k is +1, so for two parents (m1, m2)
//   [3] = P(+|++), [2] = P(+|-+), [1] = P(+|+-), [0] = P(+|--).
struct CptNode {
  std::string name;
  std::vector<std::string> parents;
  std::vector<double> table;

  static std::size_t combo_index(std::span<const std::int8_t> parent_values) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < parent_values.size(); ++k)
      if (parent_values[k] > 0) idx |= std::size_t(1) << k;
    return idx;
  }
};

class BayesNet {
 public:
  // Validates name uniqueness, arity <= 2, table size 2^arity, and that every
  // probability lies in [0, 1]. Parent names resolve at validate().
  void add_node(CptNode node);

  std::size_t size() const { return nodes_.size(); }
  const CptNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t index_of(std::string_view name) const;  // throws when absent
  bool contains(std::string_view name) const;

  // Parent indices of node i, in CPT order.
  const std::vector<std::size_t>& parent_ids(std::size_t i) const { return parent_ids_.at(i); }

  // Resolves parents and checks acyclicity. Must be called before use.
  void validate();
  bool validated() const { return validated_; }

  // Topological order, parents before children (valid after validate()).
  const std::vector<std::size_t>& topological_order() const { return order_; }

 private:
  std::vector<CptNode> nodes_;
  std::vector<std::vector<std::size_t>> parent_ids_;
  std::vector<std::size_t> order_;
  bool validated_ = false;
};

}  // namespace pbn
