#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbn/bayes.hpp"
#include "pbn/circuit.hpp"
#include "pbn/compile.hpp"
#include "pbn/psl.hpp"

namespace pbn {

enum class ScenarioKind : std::uint8_t { Unrelated, FirstCousins, DoubleCousins, Custom };

// Which second-set grandparents copy their first-set counterparts. The kinship
// between the two grandchildren follows from the linked pairs: FF+MF makes the
// fathers siblings, all four makes the children double cousins.
struct Scenario {
  ScenarioKind kind = ScenarioKind::Unrelated;
  double epsilon_one_parent = 0.0099;  // identity CPT ~ coupling 2.3026
  double epsilon_two_parent = 1e-4;    // blend CPT  ~ coupling 2.3026
  std::array<bool, 4> links{false, false, false, false};  // FF, MF, FM, MM

  static Scenario unrelated();
  static Scenario first_cousins();
  static Scenario double_cousins();
  void validate() const;
};

std::optional<ScenarioKind> scenario_from_name(std::string_view name);
std::string_view scenario_name(ScenarioKind kind);
Scenario make_scenario(ScenarioKind kind);

// Three-generation, 14-node family tree:
//   FF1 MF1 FM1 MM1   unbiased roots
//   FF2 MF2 FM2 MM2   one-parent copies of the first set (per scenario links)
//   F1(FF1,MF1) M1(FM1,MM1) F2(FF2,MF2) M2(FM2,MM2) C1(F1,M1) C2(F2,M2)
// with the two-parent blend CPT s = 1-eps2, t = u = 0.5, v = eps2.
BayesNet build_family_tree(const Scenario& scenario);

enum class Method : std::uint8_t { Exact, Psl, Circuit };
std::optional<Method> method_from_name(std::string_view name);
std::string_view method_name(Method m);

struct PairCorrelation {
  std::string a, b;
  std::optional<double> exact, psl, circuit;
};

struct RunReport {
  std::vector<PairCorrelation> pairs;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  Schedule schedule = Schedule::TopologicalSweep;
  double wall_seconds = 0.0;  // not serialized
};

// The benchmark pairs: grandchildren, parent-child, grandparent, siblings.
std::vector<std::pair<std::string, std::string>> default_family_pairs();

struct RelatednessOptions {
  Schedule schedule = Schedule::TopologicalSweep;
  std::size_t burn_in = 1000;
  CircuitSpec circuit_spec{};
  // Readout for the circuit method: sample period and RC in seconds.
  double readout_dt = 1e-12;
  double readout_rc = 1e-8;
  std::vector<std::pair<std::string, std::string>> pairs = default_family_pairs();
};

// Compiles the BN once and estimates every requested pair correlation with
// each method. Deterministic for a fixed seed; the circuit method runs on a
// decorrelated stream split from the same seed.
RunReport relatedness_table(const BayesNet& bn, const std::vector<Method>& methods,
                            std::size_t n_samples, std::uint64_t seed,
                            const RelatednessOptions& options = {});

// Line-oriented BN description:
//   NODE <name>
//   PARENTS <p1> [<p2>]          (omitted for root nodes)
//   P <combination> <probability>  with '-' for zero-parent, else one +/- per
//                                   parent, e.g. 'P +- 0.5'
// '#' starts a comment. Diagnostics carry the line number and node name.
BayesNet parse_bn_file(std::istream& in, std::string_view filename = "<input>");
BayesNet parse_bn_string(std::string_view text, std::string_view filename = "<input>");

// CSV columns: pair,exact,psl,circuit,n,seed. JSON mirrors the same fields.
std::string format_report_csv(const RunReport& report);
std::string format_report_json(const RunReport& report);

}  // namespace pbn
