#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pbn/bayes.hpp"
#include "pbn/psl.hpp"

namespace pbn {

struct CompileOptions {
  double gain = 1.0;              // I0
  double epsilon = 1e-4;          // CPT clamping constant
  double aux_gain = 7.5;          // A; tanh(7.5) is within 1e-6 of 1
  double consistency_tol = 1e-9;  // |b_s - b_t - b_u + b_v| threshold, atanh units
};

// h, J1, J2 and, when the four CPT equations are linearly independent, the
// coupling to a synthesized AND node.
struct TwoParentSolution {
  double h = 0.0;
  double j1 = 0.0;
  double j2 = 0.0;
  std::optional<double> j_aux;
  double residual = 0.0;  // b_s - b_t - b_u + b_v
};

// Bias and parent couplings of an auxiliary p-bit computing AND(m1, m2).
struct AndNodeParams {
  double h;
  double j1;
  double j2;
};

struct CompileResult {
  PslNetwork network;
  // BN node index -> auxiliary node index in `network` (only aux-bearing nodes).
  std::unordered_map<std::size_t, std::size_t> aux_map;
  double epsilon = 0.0;
  std::size_t bn_nodes = 0;  // nodes 0..bn_nodes-1 mirror the BN; aux nodes follow
};

// min(max(p, eps), 1-eps); keeps atanh(2p-1) finite.
double clamp_probability(double p, double epsilon);

// h = atanh(2p-1)/I0. p must already be clamped away from {0, 1}.
double compile_zero_parent(double p, double gain);

// (h, J) from the conditionals q = P(+|parent +1), r = P(+|parent -1).
std::pair<double, double> compile_one_parent(double q, double r, double gain);

// Solves the four CPT equations for (h, J1, J2); when the consistency residual
// exceeds tol, adds a coupling to an AND auxiliary node and solves the full
// 4x4 system exactly. s = P(+|++), t = P(+|-+), u = P(+|+-), v = P(+|--).
TwoParentSolution compile_two_parent(double s, double t, double u, double v, double gain,
                                     double tol);

// h_X = -A, J_X1 = J_X2 = +A: tanh of the summed input reproduces AND(m1, m2)
// to within the tanh saturation error at argument A.
AndNodeParams synthesize_and_node(double gain_a);

// Applies the per-arity rule to every node, inserting auxiliary nodes where
// needed; the update order places each aux node between its parents and child.
CompileResult compile_network(const BayesNet& bn, const CompileOptions& options = {});

// Conditional table of a compiled node, evaluated from the network parameters
// with the aux node folded in at its deterministic value. Indexed like
// CptNode::table.
std::vector<double> reconstruct_cpt(const CompileResult& result, std::size_t bn_node);

}  // namespace pbn
