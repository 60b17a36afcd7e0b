#include "pbn/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "pbn/oracle.hpp"

namespace pbn {

Scenario Scenario::unrelated() { return make_scenario(ScenarioKind::Unrelated); }
Scenario Scenario::first_cousins() { return make_scenario(ScenarioKind::FirstCousins); }
Scenario Scenario::double_cousins() { return make_scenario(ScenarioKind::DoubleCousins); }

void Scenario::validate() const {
  if (!(epsilon_one_parent > 0.0 && epsilon_one_parent < 0.5) ||
      !(epsilon_two_parent > 0.0 && epsilon_two_parent < 0.5))
    raise(errc::invalid_input, "scenario epsilons must lie in (0, 0.5)");
}

std::optional<ScenarioKind> scenario_from_name(std::string_view name) {
  if (name == "unrelated") return ScenarioKind::Unrelated;
  if (name == "cousins") return ScenarioKind::FirstCousins;
  if (name == "double-cousins") return ScenarioKind::DoubleCousins;
  return std::nullopt;
}

std::string_view scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Unrelated: return "unrelated";
    case ScenarioKind::FirstCousins: return "cousins";
    case ScenarioKind::DoubleCousins: return "double-cousins";
    case ScenarioKind::Custom: return "custom";
  }
  return "unknown";
}

Scenario make_scenario(ScenarioKind kind) {
  Scenario s;
  s.kind = kind;
  switch (kind) {
    case ScenarioKind::Unrelated:
    case ScenarioKind::Custom:
      break;
    case ScenarioKind::FirstCousins:
      s.links = {true, true, false, false};  // FF and MF: the fathers become siblings
      break;
    case ScenarioKind::DoubleCousins:
      s.links = {true, true, true, true};
      break;
  }
  return s;
}

BayesNet build_family_tree(const Scenario& scenario) {
  scenario.validate();
  const double e1 = scenario.epsilon_one_parent;
  const double e2 = scenario.epsilon_two_parent;

  BayesNet bn;
  const char* first_set[4] = {"FF1", "MF1", "FM1", "MM1"};
  const char* second_set[4] = {"FF2", "MF2", "FM2", "MM2"};

  for (const char* name : first_set) bn.add_node({name, {}, {0.5}});
  for (int k = 0; k < 4; ++k) {
    // Table index 0 = parent -1, 1 = parent +1.
    if (scenario.links[k])
      bn.add_node({second_set[k], {first_set[k]}, {e1, 1.0 - e1}});
    else
      bn.add_node({second_set[k], {first_set[k]}, {0.5, 0.5}});
  }

  // Blend CPT: copy when the parents agree, coin flip otherwise.
  const std::vector<double> blend{e2, 0.5, 0.5, 1.0 - e2};
  bn.add_node({"F1", {"FF1", "MF1"}, blend});
  bn.add_node({"M1", {"FM1", "MM1"}, blend});
  bn.add_node({"F2", {"FF2", "MF2"}, blend});
  bn.add_node({"M2", {"FM2", "MM2"}, blend});
  bn.add_node({"C1", {"F1", "M1"}, blend});
  bn.add_node({"C2", {"F2", "M2"}, blend});

  bn.validate();
  return bn;
}

std::optional<Method> method_from_name(std::string_view name) {
  if (name == "exact") return Method::Exact;
  if (name == "psl") return Method::Psl;
  if (name == "circuit") return Method::Circuit;
  return std::nullopt;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Exact: return "exact";
    case Method::Psl: return "psl";
    case Method::Circuit: return "circuit";
  }
  return "unknown";
}

std::vector<std::pair<std::string, std::string>> default_family_pairs() {
  return {{"C1", "C2"}, {"C1", "F1"}, {"C1", "FF1"}, {"F1", "F2"}};
}

RunReport relatedness_table(const BayesNet& bn, const std::vector<Method>& methods,
                            std::size_t n_samples, std::uint64_t seed,
                            const RelatednessOptions& options) {
  if (n_samples == 0) raise(errc::invalid_input, "at least one sample must be requested");
  const auto t0 = std::chrono::steady_clock::now();

  const CompileResult compiled = compile_network(bn);

  RunReport report;
  report.n_samples = n_samples;
  report.seed = seed;
  report.schedule = options.schedule;
  for (const auto& [a, b] : options.pairs) {
    bn.index_of(a);  // surface unknown-pair errors before any sampling
    bn.index_of(b);
    report.pairs.push_back({a, b, {}, {}, {}});
  }

  for (Method m : methods) {
    switch (m) {
      case Method::Exact: {
        const JointDistribution joint = exact_joint(compiled);
        for (PairCorrelation& pc : report.pairs)
          pc.exact = exact_correlation(joint, bn.index_of(pc.a), bn.index_of(pc.b));
        break;
      }
      case Method::Psl: {
        const SampleTrace trace =
            run(compiled.network, options.schedule, n_samples, options.burn_in, seed);
        for (PairCorrelation& pc : report.pairs)
          pc.psl = correlation(trace, bn.index_of(pc.a), bn.index_of(pc.b));
        break;
      }
      case Method::Circuit: {
        const CircuitParams cp = map_to_circuit(compiled.network, options.circuit_spec);
        // Decorrelated from the PSL stream so agreement is a real comparison.
        const std::uint64_t circuit_seed = mix64(seed ^ 0x63697263ULL);
        const SampleTrace trace = run_circuit(cp, compiled.network, options.schedule, n_samples,
                                              options.burn_in, circuit_seed);
        for (PairCorrelation& pc : report.pairs)
          pc.circuit = xnor_rc_correlator(trace, bn.index_of(pc.a), bn.index_of(pc.b),
                                          options.readout_rc, options.readout_dt)
                           .final_value;
        break;
      }
    }
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

[[noreturn]] void parse_fail(errc code, std::string_view file, std::size_t line,
                             const std::string& what) {
  raise(code, std::string(file) + ":" + std::to_string(line) + ": " + what);
}

struct PendingNode {
  std::string name;
  std::vector<std::string> parents;
  std::vector<std::optional<double>> table;
  bool parents_seen = false;
  bool probabilities_seen = false;
  std::size_t line = 0;
};

std::string combo_string(std::size_t index, std::size_t n_parents) {
  if (n_parents == 0) return "-";
  std::string combo(n_parents, '-');
  for (std::size_t k = 0; k < n_parents; ++k)
    if (index >> k & 1) combo[k] = '+';
  return combo;
}

void flush_node(BayesNet& bn, PendingNode& node, std::string_view file) {
  if (node.name.empty()) return;
  std::vector<double> table;
  for (std::size_t i = 0; i < node.table.size(); ++i) {
    if (!node.table[i])
      parse_fail(errc::parse, file, node.line,
                 "node '" + node.name + "' is missing a P line for combination '" +
                     combo_string(i, node.parents.size()) + "'");
    table.push_back(*node.table[i]);
  }
  bn.add_node({node.name, node.parents, std::move(table)});
  node = {};
}

}  // namespace

BayesNet parse_bn_file(std::istream& in, std::string_view filename) {
  BayesNet bn;
  PendingNode current;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;

    if (keyword == "NODE") {
      flush_node(bn, current, filename);
      std::string name;
      if (!(fields >> name)) parse_fail(errc::parse, filename, line_no, "NODE needs a name");
      if (bn.contains(name))
        parse_fail(errc::duplicate_node, filename, line_no, "duplicate node '" + name + "'");
      current.name = name;
      current.line = line_no;
      current.table.assign(1, std::nullopt);  // zero-parent until PARENTS appears
    } else if (keyword == "PARENTS") {
      if (current.name.empty())
        parse_fail(errc::parse, filename, line_no, "PARENTS before any NODE");
      if (current.parents_seen)
        parse_fail(errc::parse, filename, line_no,
                   "repeated PARENTS for node '" + current.name + "'");
      if (current.probabilities_seen)
        parse_fail(errc::parse, filename, line_no,
                   "PARENTS must precede the P lines of node '" + current.name + "'");
      std::string parent;
      while (fields >> parent) current.parents.push_back(parent);
      if (current.parents.empty())
        parse_fail(errc::parse, filename, line_no, "PARENTS needs at least one name");
      if (current.parents.size() > 2)
        parse_fail(errc::arity, filename, line_no,
                   "node '" + current.name + "' lists " + std::to_string(current.parents.size()) +
                       " parents; at most 2 are supported");
      current.parents_seen = true;
      current.table.assign(std::size_t(1) << current.parents.size(), std::nullopt);
    } else if (keyword == "P") {
      if (current.name.empty()) parse_fail(errc::parse, filename, line_no, "P before any NODE");
      std::string combo, prob;
      if (!(fields >> combo >> prob))
        parse_fail(errc::parse, filename, line_no, "P needs a combination and a probability");
      std::size_t index = 0;
      if (current.parents.empty()) {
        if (combo != "-")
          parse_fail(errc::parse, filename, line_no,
                     "zero-parent node '" + current.name + "' expects combination '-'");
      } else {
        if (combo.size() != current.parents.size())
          parse_fail(errc::parse, filename, line_no,
                     "combination '" + combo + "' does not match the parent count of '" +
                         current.name + "'");
        for (std::size_t k = 0; k < combo.size(); ++k) {
          if (combo[k] == '+')
            index |= std::size_t(1) << k;
          else if (combo[k] != '-')
            parse_fail(errc::parse, filename, line_no,
                       "combination '" + combo + "' may contain only '+' and '-'");
        }
      }
      double p = 0.0;
      std::size_t consumed = 0;
      try {
        p = std::stod(prob, &consumed);
      } catch (const std::exception&) {
        consumed = std::string::npos;
      }
      if (consumed != prob.size())
        parse_fail(errc::parse, filename, line_no, "bad probability '" + prob + "'");
      if (!(p >= 0.0 && p <= 1.0))
        parse_fail(errc::bad_probability, filename, line_no,
                   "probability " + prob + " for node '" + current.name + "' outside [0, 1]");
      if (current.table[index])
        parse_fail(errc::parse, filename, line_no,
                   "repeated combination '" + combo + "' for node '" + current.name + "'");
      current.table[index] = p;
      current.probabilities_seen = true;
    } else {
      parse_fail(errc::parse, filename, line_no, "unknown keyword '" + keyword + "'");
    }
  }
  flush_node(bn, current, filename);
  if (bn.size() == 0) raise(errc::parse, std::string(filename) + ": no nodes defined");
  bn.validate();
  return bn;
}

BayesNet parse_bn_string(std::string_view text, std::string_view filename) {
  std::istringstream in{std::string(text)};
  return parse_bn_file(in, filename);
}

namespace {

std::string fixed6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace

std::string format_report_csv(const RunReport& report) {
  std::string out = "pair,exact,psl,circuit,n,seed\n";
  for (const PairCorrelation& pc : report.pairs) {
    out += pc.a + "-" + pc.b + ",";
    out += (pc.exact ? fixed6(*pc.exact) : std::string()) + ",";
    out += (pc.psl ? fixed6(*pc.psl) : std::string()) + ",";
    out += (pc.circuit ? fixed6(*pc.circuit) : std::string()) + ",";
    out += std::to_string(report.n_samples) + "," + std::to_string(report.seed) + "\n";
  }
  return out;
}

std::string format_report_json(const RunReport& report) {
  nlohmann::json j;
  j["n"] = report.n_samples;
  j["seed"] = report.seed;
  j["schedule"] = std::string(schedule_name(report.schedule));
  j["pairs"] = nlohmann::json::array();
  for (const PairCorrelation& pc : report.pairs) {
    nlohmann::json entry;
    entry["pair"] = pc.a + "-" + pc.b;
    if (pc.exact) entry["exact"] = round6(*pc.exact);
    if (pc.psl) entry["psl"] = round6(*pc.psl);
    if (pc.circuit) entry["circuit"] = round6(*pc.circuit);
    j["pairs"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

}  // namespace pbn
