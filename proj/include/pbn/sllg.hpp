#pragma once

#include <cstdint>
#include <vector>

#include "pbn/rng.hpp"

namespace pbn {

// CGS-Gaussian unit system throughout: fields in Oe, magnetization in emu/cm3,
// energies in erg. Spin current enters in amperes; I_S/(qN) has units 1/s.
namespace constants {
inline constexpr double k_boltzmann_erg_per_k = 1.380649e-16;
inline constexpr double gyromagnetic_ratio = 1.76e7;     // rad s^-1 Oe^-1
inline constexpr double bohr_magneton_emu = 9.274e-21;   // erg/Oe
inline constexpr double electron_charge_c = 1.602176634e-19;
}  // namespace constants

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const;
  Vec3 normalized() const;
};

// Circular in-plane low-barrier magnet; defaults follow the 22 nm diameter,
// 2 nm thick free layer with Ms = 1100 emu/cc, alpha = 0.01 at 300 K.
struct MagnetParams {
  double alpha = 0.01;
  double ms = 1100.0;          // emu/cm^3
  double volume = 0.0;         // cm^3; see default_magnet()
  double temperature = 300.0;  // K
  double gamma = constants::gyromagnetic_ratio;
  double polarization = 0.5;   // fixed-layer spin polarization P

  // Total Bohr magnetons in the magnet, Ms*V/mu_B; consistent by construction.
  double n_spins() const { return ms * volume / constants::bohr_magneton_emu; }
  void validate() const;
};

// 22 nm diameter, 2 nm thickness.
MagnetParams default_magnet();

// Unit magnetization; |m| = 1 within 1e-12 after every integrator step.
struct MagnetState {
  Vec3 m{0.0, 0.0, 1.0};
};

struct MtjParams {
  double g0 = 0.0;   // mean conductance, siemens
  double tmr = 1.10; // 1.10 for 110%

  void validate() const;
};

// Per-step Gaussian thermal field: zero mean, per-component std
// sqrt(2 alpha kB T / (|gamma| Ms V dt)) — the spectral density of the
// continuous-time noise divided by dt for discrete time.
Vec3 thermal_field(const MagnetParams& params, double dt, SplitStream& rng);
double thermal_field_std(const MagnetParams& params, double dt);

// H = -4 pi Ms m_x x_hat + noise (easy-plane demagnetization, H_K ~ 0).
Vec3 effective_field(const Vec3& m, const MagnetParams& params, const Vec3& noise);

// One stochastic Heun step of
//   (1+a^2) dm/dt = -|g| m x H - a|g| m x (m x H)
//                   + (1/qN) m x (I_S x m) + (a/qN) m x I_S
// with the same noise realization in predictor and corrector, followed by
// renormalization. I_S is the spin current in amperes along z_hat.
MagnetState sllg_step(const MagnetState& state, double i_s_amps, const MagnetParams& params,
                      double dt, SplitStream& rng);

struct Trajectory {
  double dt = 0.0;              // integrator step, seconds
  std::size_t record_stride = 1;
  std::vector<Vec3> states;     // one entry per recorded step

  double time_at(std::size_t k) const { return dt * static_cast<double>(record_stride * (k + 1)); }
};

// Integrates for duration seconds at step dt; records every record_stride-th
// step (1 = every step). Deterministic for a fixed seed.
Trajectory run_trajectory(const MagnetParams& params, double i_s_amps, double duration,
                          double dt, std::uint64_t seed, std::size_t record_stride = 1);

// G(t) = G0 [1 + m_z TMR/(2+TMR)].
double mtj_conductance(double m_z, const MtjParams& mtj);

struct SweepPoint {
  double i_s = 0.0;
  double avg_sgn_mz = 0.0;
  std::size_t flips = 0;  // telegraph flips seen while averaging
};

struct SweepResult {
  std::vector<SweepPoint> points;
  double i_scale = 0.0;    // fitted tanh(I_S / i_scale) scale
  double r_squared = 0.0;
  bool low_flip_warning = false;  // < 100 flips at the lowest-|I_S| point
};

// Time-averages sgn(m_z) per sweep current over t_avg (after a 10% burn-in)
// and fits tanh(I_S / i_scale) by least squares.
SweepResult sigmoid_response(const MagnetParams& params, const std::vector<double>& currents,
                             double t_avg, double dt, std::uint64_t seed);

}  // namespace pbn
