#include "pbn/compile.hpp"

#include <cmath>

namespace pbn {

namespace {

// atanh(2p-1)/I0, the common translation of a conditional probability.
double bias_units(double p, double gain) {
  if (!(p > 0.0 && p < 1.0))
    raise(errc::domain, "probability " + std::to_string(p) + " must be clamped inside (0, 1)");
  return std::atanh(2.0 * p - 1.0) / gain;
}

void check_gain(double gain) {
  if (!(gain > 0.0)) raise(errc::invalid_input, "gain I0 must be positive");
}

}  // namespace

double clamp_probability(double p, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    raise(errc::invalid_input, "epsilon must lie in (0, 0.5)");
  if (!(p >= 0.0 && p <= 1.0))
    raise(errc::bad_probability, "probability " + std::to_string(p) + " outside [0, 1]");
  return std::min(std::max(p, epsilon), 1.0 - epsilon);
}

double compile_zero_parent(double p, double gain) {
  check_gain(gain);
  return bias_units(p, gain);
}

std::pair<double, double> compile_one_parent(double q, double r, double gain) {
  check_gain(gain);
  const double bq = bias_units(q, gain);
  const double br = bias_units(r, gain);
  return {(bq + br) / 2.0, (bq - br) / 2.0};
}

TwoParentSolution compile_two_parent(double s, double t, double u, double v, double gain,
                                     double tol) {
  check_gain(gain);
  const double bs = bias_units(s, gain);
  const double bt = bias_units(t, gain);
  const double bu = bias_units(u, gain);
  const double bv = bias_units(v, gain);

  TwoParentSolution sol;
  sol.residual = bs - bt - bu + bv;
  if (std::fabs(sol.residual) <= tol) {
    // Consistent: rows [1, m1, m2] over (++, -+, +-, --) have the unique
    // least-squares solution below, exact because the residual vanishes.
    sol.h = (bs + bt + bu + bv) / 4.0;
    sol.j1 = (bs - bt + bu - bv) / 4.0;
    sol.j2 = (bs + bt - bu - bv) / 4.0;
  } else {
    // Full-rank 4x4 system with the AND column m_X = (+1, -1, -1, -1).
    sol.h = (bs + bv) / 2.0;
    sol.j1 = (bu - bv) / 2.0;
    sol.j2 = (bt - bv) / 2.0;
    sol.j_aux = sol.residual / 2.0;
  }
  return sol;
}

AndNodeParams synthesize_and_node(double gain_a) {
  if (!(gain_a > 0.0)) raise(errc::invalid_input, "AND gain must be positive");
  return {-gain_a, gain_a, gain_a};
}

CompileResult compile_network(const BayesNet& bn, const CompileOptions& options) {
  if (!bn.validated()) raise(errc::validation, "Bayesian network must be validated first");
  check_gain(options.gain);

  // First pass: solve every node so the aux count is known up front.
  std::vector<TwoParentSolution> solutions(bn.size());
  std::vector<std::vector<double>> clamped(bn.size());
  std::size_t n_aux = 0;
  for (std::size_t i = 0; i < bn.size(); ++i) {
    const CptNode& node = bn.node(i);
    clamped[i].reserve(node.table.size());
    for (double p : node.table) clamped[i].push_back(clamp_probability(p, options.epsilon));
    const auto& tab = clamped[i];
    switch (node.parents.size()) {
      case 0:
        solutions[i].h = compile_zero_parent(tab[0], options.gain);
        break;
      case 1: {
        const auto [h, j] = compile_one_parent(tab[1], tab[0], options.gain);
        solutions[i].h = h;
        solutions[i].j1 = j;
        break;
      }
      case 2:
        solutions[i] = compile_two_parent(tab[3], tab[2], tab[1], tab[0], options.gain,
                                          options.consistency_tol);
        if (solutions[i].j_aux) ++n_aux;
        break;
      default:
        raise(errc::arity, "node '" + node.name + "' has unsupported parent count");
    }
  }

  CompileResult result;
  result.epsilon = options.epsilon;
  result.bn_nodes = bn.size();
  result.network = PslNetwork(bn.size() + n_aux, options.gain);
  PslNetwork& net = result.network;

  for (std::size_t i = 0; i < bn.size(); ++i) net.set_name(i, bn.node(i).name);

  // The aux node's effective input must be A * (-1 + m1 + m2) regardless of
  // I0, so its stored parameters are divided by the gain.
  const AndNodeParams aux = synthesize_and_node(options.aux_gain);
  std::size_t next_aux = bn.size();
  std::vector<std::size_t> order;
  order.reserve(net.size());

  for (std::size_t i : bn.topological_order()) {
    const auto& parents = bn.parent_ids(i);
    net.set_bias(i, solutions[i].h);
    if (parents.size() >= 1) net.add_edge(parents[0], i, solutions[i].j1);
    if (parents.size() == 2) net.add_edge(parents[1], i, solutions[i].j2);
    if (solutions[i].j_aux) {
      const std::size_t x = next_aux++;
      net.set_kind(x, NodeKind::Auxiliary);
      std::string aux_name = bn.node(i).name + "_aux";
      while (bn.contains(aux_name)) aux_name += "_";  // keep netlist names unique
      net.set_name(x, aux_name);
      net.set_bias(x, aux.h / options.gain);
      net.add_edge(parents[0], x, aux.j1 / options.gain);
      net.add_edge(parents[1], x, aux.j2 / options.gain);
      net.add_edge(x, i, *solutions[i].j_aux);
      result.aux_map.emplace(i, x);
      order.push_back(x);  // between its parents and its child
    }
    order.push_back(i);
  }

  net.set_update_order(std::move(order));
  return result;
}

std::vector<double> reconstruct_cpt(const CompileResult& result, std::size_t bn_node) {
  if (bn_node >= result.bn_nodes) raise(errc::invalid_input, "node index out of range");
  const PslNetwork& net = result.network;

  // Regular in-edges, in insertion order, are the CPT parents; an edge from an
  // auxiliary node carries J_iX.
  std::vector<std::size_t> parents;
  double j_parent[2] = {0.0, 0.0};
  double j_aux = 0.0;
  bool has_aux = false;
  for (const Edge& e : net.in_edges(bn_node)) {
    if (net.kind(e.from) == NodeKind::Auxiliary) {
      j_aux = e.weight;
      has_aux = true;
    } else {
      if (parents.size() == 2)
        raise(errc::arity, "node '" + net.name(bn_node) + "' has more than two parents");
      j_parent[parents.size()] = e.weight;
      parents.push_back(e.from);
    }
  }

  std::vector<double> table(std::size_t(1) << parents.size());
  for (std::size_t combo = 0; combo < table.size(); ++combo) {
    double m1 = 0.0, m2 = 0.0;
    if (!parents.empty()) m1 = (combo & 1) ? 1.0 : -1.0;
    if (parents.size() == 2) m2 = (combo & 2) ? 1.0 : -1.0;
    double acc = net.bias(bn_node) + j_parent[0] * m1 + j_parent[1] * m2;
    if (has_aux) {
      const double m_x = (m1 > 0.0 && m2 > 0.0) ? 1.0 : -1.0;  // deterministic AND
      acc += j_aux * m_x;
    }
    table[combo] = (1.0 + std::tanh(net.gain() * acc)) / 2.0;
  }
  return table;
}

}  // namespace pbn
