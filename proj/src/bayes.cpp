#include "pbn/bayes.hpp"

#include <algorithm>

namespace pbn {

void BayesNet::add_node(CptNode node) {
  if (node.name.empty()) raise(errc::invalid_input, "node name must not be empty");
  if (contains(node.name)) raise(errc::duplicate_node, "duplicate node '" + node.name + "'");
  if (node.parents.size() > 2)
    raise(errc::arity, "node '" + node.name + "' has " + std::to_string(node.parents.size()) +
                           " parents; at most 2 are supported");
  const std::size_t expected = std::size_t(1) << node.parents.size();
  if (node.table.size() != expected)
    raise(errc::invalid_input, "node '" + node.name + "' needs " + std::to_string(expected) +
                                   " table entries, got " + std::to_string(node.table.size()));
  for (double p : node.table)
    if (!(p >= 0.0 && p <= 1.0))
      raise(errc::bad_probability,
            "node '" + node.name + "' has probability " + std::to_string(p) + " outside [0, 1]");
  nodes_.push_back(std::move(node));
  validated_ = false;
}

std::size_t BayesNet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return i;
  raise(errc::unknown_parent, "no node named '" + std::string(name) + "'");
}

bool BayesNet::contains(std::string_view name) const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [&](const CptNode& n) { return n.name == name; });
}

void BayesNet::validate() {
  parent_ids_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const std::string& parent : nodes_[i].parents) {
      if (!contains(parent))
        raise(errc::unknown_parent,
              "node '" + nodes_[i].name + "' references unknown parent '" + parent + "'");
      parent_ids_[i].push_back(index_of(parent));
    }
  }

  // Kahn's algorithm over the parent graph; smallest index first.
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  std::vector<std::vector<std::size_t>> children(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    for (std::size_t p : parent_ids_[i]) {
      children[p].push_back(i);
      ++indegree[i];
    }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (indegree[i] == 0) ready.push_back(i);
  order_.clear();
  order_.reserve(nodes_.size());
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    const std::size_t node = ready.back();
    ready.pop_back();
    order_.push_back(node);
    for (std::size_t child : children[node])
      if (--indegree[child] == 0) ready.push_back(child);
  }
  if (order_.size() != nodes_.size())
    raise(errc::validation, "Bayesian network contains a cycle");
  validated_ = true;
}

}  // namespace pbn
