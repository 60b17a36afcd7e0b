#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pbn/psl.hpp"

namespace pbn {

// Global electrical constants: supply V_DD, sigmoid width V_0, feedback R_f.
struct CircuitSpec {
  double v_dd = 0.8;    // volts
  double v_0 = 0.05;    // volts
  double r_f = 150e3;   // ohms

  void validate() const;
};

struct CircuitEdge {
  std::size_t from;
  std::size_t to;
  double conductance;  // siemens
};

// Electrical realization of a PSL network:
//   G_b = 2 V_0 I0 / (R_f V_DD),  G_ij = J_ij G_b,  V_bias,i = h_i V_DD / 2.
struct CircuitParams {
  CircuitSpec spec;
  double g_b = 0.0;   // bias conductance, siemens
  double gain = 0.0;  // implied I0 = G_b R_f V_DD / (2 V_0)
  std::vector<double> v_bias;
  std::vector<CircuitEdge> edges;
  std::vector<std::string> names;

  std::size_t size() const { return v_bias.size(); }
  // Checks positivity and the G_b/I0 consistency invariant (1e-12 relative).
  void validate() const;
};

CircuitParams map_to_circuit(const PslNetwork& net, const CircuitSpec& spec);

// Exact inverse of map_to_circuit; round trip reproduces J, h, I0 to 1e-12
// relative. The returned network is finalized.
PslNetwork map_to_psl(const CircuitParams& params);

// Voltage-domain p-bit: (V_DD/2) * sgn(rand(-1,1) + tanh(V_in/V_0)).
// Identical in law to pbit_update under m = V_out/(V_DD/2), I = V_in/V_0.
double behavioral_pbit_voltage(double v_in, const CircuitSpec& spec, SplitStream& rng);

// Clocked/clockless simulation of the electrical network: node voltages are
// +/- V_DD/2, synapse V_in,i = V_bias,i G_b R_f + sum_j V_out,j G_ij R_f.
// Recorded snapshots store m = V_out / (V_DD/2), i.e. bipolar values.
SampleTrace run_circuit(const CircuitParams& params, const PslNetwork& net, Schedule schedule,
                        std::size_t n_samples, std::size_t burn_in, std::uint64_t seed);

// First-order low-pass readout, y += (dt/RC) (x - y). Requires 0 < dt < RC.
class RcReadout {
 public:
  RcReadout(double rc_seconds, double dt_seconds, double y0 = 0.0);
  double step(double x) { return y_ += coeff_ * (x - y_); }
  double value() const { return y_; }
  double rc() const { return rc_; }
  double dt() const { return dt_; }

 private:
  double rc_;
  double dt_;
  double coeff_;
  double y_;
};

struct CorrelatorResult {
  std::vector<double> series;  // filter output after each sample
  double final_value = 0.0;
};

// Hardware-style correlator: ideal XNOR (bipolar product) into an RC filter.
CorrelatorResult xnor_rc_correlator(std::span<const std::int8_t> series_i,
                                    std::span<const std::int8_t> series_j, double rc_seconds,
                                    double dt_seconds);
CorrelatorResult xnor_rc_correlator(const SampleTrace& trace, std::size_t i, std::size_t j,
                                    double rc_seconds, double dt_seconds);

// Line-oriented `PBN v1` netlist, numbers in scientific notation with six
// significant digits. Deterministic; export-parse-export is a fixed point.
std::string export_netlist(const CircuitParams& params);
CircuitParams parse_netlist(std::string_view text);

}  // namespace pbn
