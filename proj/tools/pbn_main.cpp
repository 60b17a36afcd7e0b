// p-bit network toolkit CLI: compile Bayesian networks to p-bit parameters,
// sample them, compare against exact inference, export circuit netlists, and
// characterize the stochastic magnet device.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbn/bench.hpp"
#include "pbn/circuit.hpp"
#include "pbn/compile.hpp"
#include "pbn/oracle.hpp"
#include "pbn/psl.hpp"
#include "pbn/sllg.hpp"

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::size_t samples = 1000000;
  std::string schedule = "sweep";
  std::string scenario;
  std::string bn_file;
  double epsilon1 = 0.0099;
  double epsilon2 = 1e-4;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, GlobalOpts& g, bool with_sampling) {
  cmd->add_option("--bn", g.bn_file, "Bayesian network description file");
  cmd->add_option("--scenario", g.scenario,
                  "family-tree scenario: unrelated|cousins|double-cousins");
  cmd->add_option("--epsilon1", g.epsilon1, "one-parent identity CPT epsilon");
  cmd->add_option("--epsilon2", g.epsilon2, "two-parent blend CPT epsilon");
  cmd->add_option("--out", g.out, "output path (default stdout)");
  cmd->add_option("--format", g.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  if (with_sampling) {
    cmd->add_option("--seed", g.seed, "RNG root seed");
    cmd->add_option("--samples", g.samples, "number of recorded snapshots");
    cmd->add_option("--schedule", g.schedule, "update schedule: sweep|async")
        ->check(CLI::IsMember({"sweep", "async"}));
  }
}

pbn::BayesNet load_network(const GlobalOpts& g) {
  if (!g.bn_file.empty()) {
    std::ifstream in(g.bn_file);
    if (!in) pbn::raise(pbn::errc::io, "cannot open '" + g.bn_file + "'");
    return pbn::parse_bn_file(in, g.bn_file);
  }
  if (!g.scenario.empty()) {
    const auto kind = pbn::scenario_from_name(g.scenario);
    if (!kind) pbn::raise(pbn::errc::invalid_input, "unknown scenario '" + g.scenario + "'");
    pbn::Scenario s = pbn::make_scenario(*kind);
    s.epsilon_one_parent = g.epsilon1;
    s.epsilon_two_parent = g.epsilon2;
    return pbn::build_family_tree(s);
  }
  pbn::raise(pbn::errc::invalid_input, "either --bn or --scenario is required");
}

pbn::Schedule schedule_of(const GlobalOpts& g) {
  return g.schedule == "async" ? pbn::Schedule::RandomAsync : pbn::Schedule::TopologicalSweep;
}

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) pbn::raise(pbn::errc::io, "cannot open '" + g.out + "' for writing");
  out << text;
  if (!out) pbn::raise(pbn::errc::io, "write to '" + g.out + "' failed");
}

std::string tidy(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_compile(const GlobalOpts& g) {
  const pbn::BayesNet bn = load_network(g);
  pbn::CompileOptions opts;
  opts.epsilon = g.epsilon2;
  const pbn::CompileResult result = pbn::compile_network(bn, opts);
  const pbn::PslNetwork& net = result.network;

  if (g.format == "json") {
    nlohmann::json j;
    j["i0"] = net.gain();
    j["epsilon"] = result.epsilon;
    j["nodes"] = nlohmann::json::array();
    j["edges"] = nlohmann::json::array();
    for (std::size_t i = 0; i < net.size(); ++i)
      j["nodes"].push_back({{"name", net.name(i)},
                            {"h", net.bias(i)},
                            {"aux", net.kind(i) == pbn::NodeKind::Auxiliary}});
    for (std::size_t to = 0; to < net.size(); ++to)
      for (const pbn::Edge& e : net.in_edges(to))
        j["edges"].push_back(
            {{"from", net.name(e.from)}, {"to", net.name(to)}, {"j", e.weight}});
    write_output(g, j.dump(2) + "\n");
  } else {
    std::string out = "kind,a,b,value\n";
    out += "gain,,," + tidy(net.gain()) + "\n";
    for (std::size_t i = 0; i < net.size(); ++i)
      out += "bias," + net.name(i) + ",," + tidy(net.bias(i)) + "\n";
    for (std::size_t to = 0; to < net.size(); ++to)
      for (const pbn::Edge& e : net.in_edges(to))
        out += "coupling," + net.name(e.from) + "," + net.name(to) + "," + tidy(e.weight) + "\n";
    write_output(g, out);
  }
  return 0;
}

int cmd_sample(const GlobalOpts& g, std::size_t burn_in) {
  const pbn::BayesNet bn = load_network(g);
  pbn::CompileOptions opts;
  opts.epsilon = g.epsilon2;
  const pbn::CompileResult result = pbn::compile_network(bn, opts);
  const pbn::SampleTrace trace =
      pbn::run(result.network, schedule_of(g), g.samples, burn_in, g.seed);

  if (g.format == "json") {
    nlohmann::json j;
    j["seed"] = trace.seed();
    j["schedule"] = std::string(pbn::schedule_name(trace.schedule()));
    j["burn_in"] = trace.burn_in();
    j["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < result.bn_nodes; ++i)
      j["nodes"].push_back(result.network.name(i));
    j["samples"] = nlohmann::json::array();
    for (std::size_t t = 0; t < trace.samples(); ++t) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t i = 0; i < result.bn_nodes; ++i) row.push_back(int(trace.at(t, i)));
      j["samples"].push_back(row);
    }
    write_output(g, j.dump() + "\n");
  } else {
    std::string out = "t";
    for (std::size_t i = 0; i < result.bn_nodes; ++i) out += "," + result.network.name(i);
    out += "\n";
    for (std::size_t t = 0; t < trace.samples(); ++t) {
      out += std::to_string(t);
      for (std::size_t i = 0; i < result.bn_nodes; ++i)
        out += trace.at(t, i) > 0 ? ",1" : ",-1";
      out += "\n";
    }
    write_output(g, out);
  }
  return 0;
}

int cmd_exact(const GlobalOpts& g) {
  const pbn::BayesNet bn = load_network(g);
  const pbn::JointDistribution joint = pbn::exact_joint(bn);

  if (g.format == "json") {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < bn.size(); ++i) j["nodes"].push_back(bn.node(i).name);
    j["states"] = nlohmann::json::array();
    for (std::size_t s = 0; s < joint.states(); ++s) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t i = 0; i < joint.nodes(); ++i) row.push_back(s >> i & 1 ? 1 : -1);
      j["states"].push_back({{"state", row}, {"p", joint.probability(s)}});
    }
    write_output(g, j.dump() + "\n");
  } else {
    std::string out;
    for (std::size_t i = 0; i < bn.size(); ++i)
      out += bn.node(i).name + ",";
    out += "probability\n";
    for (std::size_t s = 0; s < joint.states(); ++s) {
      for (std::size_t i = 0; i < joint.nodes(); ++i) out += (s >> i & 1) ? "1," : "-1,";
      out += tidy(joint.probability(s)) + "\n";
    }
    write_output(g, out);
  }
  return 0;
}

int cmd_relatedness(const GlobalOpts& g, const std::string& methods_csv) {
  const pbn::BayesNet bn = load_network(g);
  std::vector<pbn::Method> methods;
  std::stringstream ss{methods_csv};
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto m = pbn::method_from_name(token);
    if (!m) pbn::raise(pbn::errc::invalid_input, "unknown method '" + token + "'");
    methods.push_back(*m);
  }
  pbn::RelatednessOptions opts;
  opts.schedule = schedule_of(g);
  const pbn::RunReport report = pbn::relatedness_table(bn, methods, g.samples, g.seed, opts);
  std::cerr << "relatedness: " << report.pairs.size() << " pairs in " << report.wall_seconds
            << " s\n";
  write_output(g, g.format == "json" ? pbn::format_report_json(report)
                                     : pbn::format_report_csv(report));
  return 0;
}

int cmd_netlist(const GlobalOpts& g, const pbn::CircuitSpec& spec) {
  const pbn::BayesNet bn = load_network(g);
  pbn::CompileOptions opts;
  opts.epsilon = g.epsilon2;
  const pbn::CompileResult result = pbn::compile_network(bn, opts);
  write_output(g, pbn::export_netlist(pbn::map_to_circuit(result.network, spec)));
  return 0;
}

int cmd_device_sweep(const GlobalOpts& g, double i_max, std::size_t points, double t_avg,
                     double dt, const std::string& trajectory_out) {
  pbn::MagnetParams params = pbn::default_magnet();
  std::vector<double> currents;
  if (points == 1) {
    currents.push_back(0.0);
  } else {
    for (std::size_t k = 0; k < points; ++k)
      currents.push_back(-i_max + 2.0 * i_max * double(k) / double(points - 1));
  }
  const pbn::SweepResult sweep = pbn::sigmoid_response(params, currents, t_avg, dt, g.seed);

  if (!trajectory_out.empty()) {
    const pbn::Trajectory traj = pbn::run_trajectory(params, currents.front(), t_avg, dt, g.seed);
    std::string out = "time_s,m_x,m_y,m_z\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const pbn::Vec3& m = traj.states[k];
      out += tidy(traj.time_at(k)) + "," + tidy(m.x) + "," + tidy(m.y) + "," + tidy(m.z) + "\n";
    }
    std::ofstream f(trajectory_out, std::ios::binary);
    if (!f) pbn::raise(pbn::errc::io, "cannot open '" + trajectory_out + "' for writing");
    f << out;
  }

  if (g.format == "json") {
    nlohmann::json j;
    j["i_scale"] = sweep.i_scale;
    j["r_squared"] = sweep.r_squared;
    j["low_flip_warning"] = sweep.low_flip_warning;
    j["points"] = nlohmann::json::array();
    for (const pbn::SweepPoint& p : sweep.points)
      j["points"].push_back(
          {{"I_S", p.i_s}, {"avg_sgn_mz", p.avg_sgn_mz}, {"flips", p.flips}});
    write_output(g, j.dump(2) + "\n");
  } else {
    std::string out = "I_S,avg_sgn_mz\n";
    for (const pbn::SweepPoint& p : sweep.points)
      out += tidy(p.i_s) + "," + tidy(p.avg_sgn_mz) + "\n";
    write_output(g, out);
    std::cerr << "fit: i_scale=" << sweep.i_scale << " R2=" << sweep.r_squared
              << (sweep.low_flip_warning ? " (low flip count at zero bias)" : "") << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-bit network compiler and sampler"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::size_t burn_in = 0;
  std::string methods_csv = "exact,psl";
  pbn::CircuitSpec spec;
  double i_max = 5e-4;  // the sigmoid saturates near 4x the ~1.3e-4 A scale current
  std::size_t points = 11;
  double t_avg = 2e-6;
  double dt = 1e-12;
  std::string trajectory_out;

  CLI::App* compile = app.add_subcommand("compile", "translate a BN into p-bit parameters");
  add_common(compile, g, false);

  CLI::App* sample = app.add_subcommand("sample", "sample a compiled network");
  add_common(sample, g, true);
  sample->add_option("--burn-in", burn_in, "snapshots to discard before recording");

  CLI::App* exact = app.add_subcommand("exact", "brute-force joint distribution");
  add_common(exact, g, false);

  CLI::App* relatedness =
      app.add_subcommand("relatedness", "pair-correlation table across methods");
  add_common(relatedness, g, true);
  relatedness->add_option("--methods", methods_csv, "comma list of exact,psl,circuit");

  CLI::App* netlist = app.add_subcommand("netlist", "export the electrical netlist");
  add_common(netlist, g, false);
  netlist->add_option("--vdd", spec.v_dd, "supply voltage, volts");
  netlist->add_option("--v0", spec.v_0, "sigmoid width, volts");
  netlist->add_option("--rf", spec.r_f, "feedback resistance, ohms");

  CLI::App* device = app.add_subcommand("device-sweep", "magnet sigmoid characterization");
  device->add_option("--seed", g.seed, "RNG root seed");
  device->add_option("--out", g.out, "output path (default stdout)");
  device->add_option("--format", g.format, "output format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  device->add_option("--i-max", i_max, "sweep endpoint, amperes");
  device->add_option("--points", points, "sweep point count");
  device->add_option("--t-avg", t_avg, "averaging window per point, seconds");
  device->add_option("--dt", dt, "integrator step, seconds");
  device->add_option("--trajectory-out", trajectory_out,
                     "also write the first point's trajectory CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) return cmd_compile(g);
    if (sample->parsed()) return cmd_sample(g, burn_in);
    if (exact->parsed()) return cmd_exact(g);
    if (relatedness->parsed()) return cmd_relatedness(g, methods_csv);
    if (netlist->parsed()) return cmd_netlist(g, spec);
    if (device->parsed()) return cmd_device_sweep(g, i_max, points, t_avg, dt, trajectory_out);
  } catch (const pbn::Error& e) {
    std::cerr << "error[" << pbn::errc_name(e.code()) << "] " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error[internal] " << e.what() << "\n";
    return 1;
  }
  return 1;
}
