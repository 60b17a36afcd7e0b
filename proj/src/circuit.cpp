#include "pbn/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "pbn/errors.hpp"

namespace pbn {

void CircuitSpec::validate() const {
  if (!(v_dd > 0.0 && v_0 > 0.0 && r_f > 0.0))
    raise(errc::invalid_input, "circuit spec values must be strictly positive");
}

void CircuitParams::validate() const {
  spec.validate();
  if (!(g_b > 0.0)) raise(errc::validation, "bias conductance G_b must be positive");
  if (names.size() != v_bias.size())
    raise(errc::validation, "node name list does not match bias list");
  const double implied = g_b * spec.r_f * spec.v_dd / (2.0 * spec.v_0);
  if (std::fabs(implied - gain) > 1e-12 * std::fabs(implied))
    raise(errc::validation, "implied I0 is inconsistent with G_b, R_f, V_DD, V_0");
  for (const CircuitEdge& e : edges)
    if (e.from >= size() || e.to >= size() || e.from == e.to)
      raise(errc::validation, "netlist edge endpoints invalid");
}

CircuitParams map_to_circuit(const PslNetwork& net, const CircuitSpec& spec) {
  spec.validate();
  CircuitParams cp;
  cp.spec = spec;
  cp.gain = net.gain();
  cp.g_b = 2.0 * spec.v_0 * net.gain() / (spec.r_f * spec.v_dd);
  cp.v_bias.resize(net.size());
  cp.names.resize(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    cp.v_bias[i] = net.bias(i) * spec.v_dd / 2.0;
    cp.names[i] = net.name(i);
  }
  for (std::size_t to = 0; to < net.size(); ++to)
    for (const Edge& e : net.in_edges(to)) cp.edges.push_back({e.from, to, e.weight * cp.g_b});
  return cp;
}

PslNetwork map_to_psl(const CircuitParams& params) {
  params.validate();
  PslNetwork net(params.size(), params.gain);
  for (std::size_t i = 0; i < params.size(); ++i) {
    net.set_bias(i, 2.0 * params.v_bias[i] / params.spec.v_dd);
    net.set_name(i, params.names[i]);
  }
  for (const CircuitEdge& e : params.edges)
    net.add_edge(e.from, e.to, e.conductance / params.g_b);
  net.finalize();
  return net;
}

double behavioral_pbit_voltage(double v_in, const CircuitSpec& spec, SplitStream& rng) {
  if (!std::isfinite(v_in)) raise(errc::domain, "p-bit input voltage must be finite");
  spec.validate();
  const double u = rng.uniform_pm1();
  const double half = spec.v_dd / 2.0;
  return (u + std::tanh(v_in / spec.v_0)) >= 0.0 ? half : -half;
}

SampleTrace run_circuit(const CircuitParams& params, const PslNetwork& net, Schedule schedule,
                        std::size_t n_samples, std::size_t burn_in, std::uint64_t seed) {
  params.validate();
  if (params.size() != net.size())
    raise(errc::invalid_input, "circuit and network disagree on node count");
  if (n_samples == 0) raise(errc::invalid_input, "at least one sample must be requested");
  if (schedule == Schedule::TopologicalSweep && net.update_order().empty() && net.size() > 0)
    raise(errc::validation, "network has no update order; call finalize() first");

  // Incoming-edge view for the synapse sum.
  std::vector<std::vector<CircuitEdge>> incoming(params.size());
  for (const CircuitEdge& e : params.edges) incoming[e.to].push_back(e);

  const double half = params.spec.v_dd / 2.0;
  const double rf = params.spec.r_f;
  NodeRngPool rng(seed, params.size());
  std::vector<double> v_out(params.size(), half);
  SampleTrace trace(params.size(), schedule, seed, burn_in);
  trace.reserve(n_samples);

  auto update_node = [&](std::size_t i) {
    double v_in = params.v_bias[i] * params.g_b * rf;
    for (const CircuitEdge& e : incoming[i]) v_in += v_out[e.from] * e.conductance * rf;
    v_out[i] = behavioral_pbit_voltage(v_in, params.spec, rng.node(i));
  };

  NodeState snapshot(params.size());
  const std::size_t total = burn_in + n_samples;
  for (std::size_t snap = 0; snap < total; ++snap) {
    if (schedule == Schedule::TopologicalSweep) {
      for (std::size_t node : net.update_order()) update_node(node);
    } else {
      for (std::size_t k = 0; k < params.size(); ++k)
        update_node(rng.scheduler().uniform_below(params.size()));
    }
    if (snap >= burn_in) {
      for (std::size_t i = 0; i < params.size(); ++i)
        snapshot[i] = v_out[i] > 0.0 ? std::int8_t(1) : std::int8_t(-1);
      trace.append(snapshot);
    }
  }
  return trace;
}

RcReadout::RcReadout(double rc_seconds, double dt_seconds, double y0)
    : rc_(rc_seconds), dt_(dt_seconds), coeff_(dt_seconds / rc_seconds), y_(y0) {
  if (!(dt_ > 0.0 && dt_ < rc_))
    raise(errc::invalid_input, "RC readout requires 0 < dt < RC");
}

CorrelatorResult xnor_rc_correlator(std::span<const std::int8_t> series_i,
                                    std::span<const std::int8_t> series_j, double rc_seconds,
                                    double dt_seconds) {
  if (series_i.size() != series_j.size())
    raise(errc::invalid_input, "correlator traces must have equal length");
  RcReadout filter(rc_seconds, dt_seconds);
  CorrelatorResult result;
  result.series.reserve(series_i.size());
  for (std::size_t t = 0; t < series_i.size(); ++t) {
    const double x = double(series_i[t]) * double(series_j[t]);  // ideal XNOR on bipolar levels
    result.series.push_back(filter.step(x));
  }
  result.final_value = filter.value();
  return result;
}

CorrelatorResult xnor_rc_correlator(const SampleTrace& trace, std::size_t i, std::size_t j,
                                    double rc_seconds, double dt_seconds) {
  const auto si = trace.node_series(i);
  const auto sj = trace.node_series(j);
  return xnor_rc_correlator(si, sj, rc_seconds, dt_seconds);
}

namespace {

std::string sci6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", x);
  return buf;
}

}  // namespace

std::string export_netlist(const CircuitParams& params) {
  params.validate();
  std::string out = "PBN v1\n";
  out += "GLOBAL V_DD=" + sci6(params.spec.v_dd) + " V0=" + sci6(params.spec.v_0) +
         " RF=" + sci6(params.spec.r_f) + " GB=" + sci6(params.g_b) + "\n";
  for (std::size_t i = 0; i < params.size(); ++i)
    out += "NODE " + params.names[i] + " VBIAS=" + sci6(params.v_bias[i]) + "\n";
  // Destination-major, source insertion order within a destination.
  for (std::size_t to = 0; to < params.size(); ++to)
    for (const CircuitEdge& e : params.edges)
      if (e.to == to)
        out += "EDGE " + params.names[e.from] + " " + params.names[e.to] + " G=" +
               sci6(e.conductance) + "\n";
  return out;
}

namespace {

double parse_tagged(const std::string& token, std::string_view tag, std::size_t line_no) {
  if (token.size() <= tag.size() || token.compare(0, tag.size(), tag) != 0)
    raise(errc::parse,
          "netlist line " + std::to_string(line_no) + ": expected " + std::string(tag) + "<value>");
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token.substr(tag.size()), &consumed);
  } catch (const std::exception&) {
    raise(errc::parse, "netlist line " + std::to_string(line_no) + ": bad number in " + token);
  }
  if (consumed != token.size() - tag.size())
    raise(errc::parse, "netlist line " + std::to_string(line_no) + ": bad number in " + token);
  return value;
}

}  // namespace

CircuitParams parse_netlist(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  CircuitParams cp;
  std::unordered_map<std::string, std::size_t> index;
  bool have_header = false, have_global = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string keyword;
    fields >> keyword;
    if (!have_header) {
      std::string version;
      fields >> version;
      if (keyword != "PBN" || version != "v1")
        raise(errc::parse, "netlist line 1: expected header 'PBN v1'");
      have_header = true;
      continue;
    }
    if (keyword == "GLOBAL") {
      std::string vdd, v0, rf, gb;
      if (!(fields >> vdd >> v0 >> rf >> gb))
        raise(errc::parse, "netlist line " + std::to_string(line_no) + ": malformed GLOBAL");
      cp.spec.v_dd = parse_tagged(vdd, "V_DD=", line_no);
      cp.spec.v_0 = parse_tagged(v0, "V0=", line_no);
      cp.spec.r_f = parse_tagged(rf, "RF=", line_no);
      cp.g_b = parse_tagged(gb, "GB=", line_no);
      cp.gain = cp.g_b * cp.spec.r_f * cp.spec.v_dd / (2.0 * cp.spec.v_0);
      have_global = true;
    } else if (keyword == "NODE") {
      std::string name, vbias;
      if (!(fields >> name >> vbias))
        raise(errc::parse, "netlist line " + std::to_string(line_no) + ": malformed NODE");
      if (index.count(name))
        raise(errc::duplicate_node,
              "netlist line " + std::to_string(line_no) + ": duplicate node " + name);
      index.emplace(name, cp.names.size());
      cp.names.push_back(name);
      cp.v_bias.push_back(parse_tagged(vbias, "VBIAS=", line_no));
    } else if (keyword == "EDGE") {
      std::string from, to, g;
      if (!(fields >> from >> to >> g))
        raise(errc::parse, "netlist line " + std::to_string(line_no) + ": malformed EDGE");
      const auto f = index.find(from), t = index.find(to);
      if (f == index.end() || t == index.end())
        raise(errc::parse,
              "netlist line " + std::to_string(line_no) + ": EDGE references unknown node");
      cp.edges.push_back({f->second, t->second, parse_tagged(g, "G=", line_no)});
    } else {
      raise(errc::parse,
            "netlist line " + std::to_string(line_no) + ": unknown keyword " + keyword);
    }
  }
  if (!have_header || !have_global)
    raise(errc::parse, "netlist is missing its header or GLOBAL line");
  cp.validate();
  return cp;
}

}  // namespace pbn
