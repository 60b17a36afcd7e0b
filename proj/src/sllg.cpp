#include "pbn/sllg.hpp"

#include <cmath>

#include "pbn/errors.hpp"

namespace pbn {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
  const double n = norm();
  if (n == 0.0) raise(errc::domain, "cannot normalize the zero vector");
  return {x / n, y / n, z / n};
}

void MagnetParams::validate() const {
  if (!(alpha > 0.0 && ms > 0.0 && volume > 0.0 && temperature >= 0.0 && gamma > 0.0 &&
        polarization > 0.0))
    raise(errc::invalid_input, "magnet parameters must be positive (temperature >= 0)");
}

MagnetParams default_magnet() {
  MagnetParams p;
  const double radius_cm = 11e-7;
  const double thickness_cm = 2e-7;
  p.volume = M_PI * radius_cm * radius_cm * thickness_cm;
  return p;
}

void MtjParams::validate() const {
  if (!(g0 > 0.0) || tmr < 0.0) raise(errc::invalid_input, "MTJ needs G0 > 0 and TMR >= 0");
}

double thermal_field_std(const MagnetParams& params, double dt) {
  if (!(dt > 0.0)) raise(errc::invalid_input, "time step must be positive");
  params.validate();
  return std::sqrt(2.0 * params.alpha * constants::k_boltzmann_erg_per_k * params.temperature /
                   (params.gamma * params.ms * params.volume * dt));
}

Vec3 thermal_field(const MagnetParams& params, double dt, SplitStream& rng) {
  const double sigma = thermal_field_std(params, dt);
  return {sigma * rng.normal(), sigma * rng.normal(), sigma * rng.normal()};
}

Vec3 effective_field(const Vec3& m, const MagnetParams& params, const Vec3& noise) {
  return {-4.0 * M_PI * params.ms * m.x + noise.x, noise.y, noise.z};
}

namespace {

// Right-hand side of the sLLG equation, dm/dt.
Vec3 llg_rhs(const Vec3& m, const Vec3& field, double i_s_amps, const MagnetParams& p) {
  const Vec3 m_x_h = m.cross(field);
  const Vec3 m_x_m_x_h = m.cross(m_x_h);
  const double st = i_s_amps / (constants::electron_charge_c * p.n_spins());  // 1/s
  const Vec3 i_hat{0.0, 0.0, 1.0};
  // m x (I x m) = I (m.m) - m (m.I)
  const Vec3 antidamping = (i_hat * m.dot(m) - m * m.z) * st;
  const Vec3 field_like = m.cross(i_hat) * (p.alpha * st);
  const Vec3 torque = m_x_h * (-p.gamma) + m_x_m_x_h * (-p.alpha * p.gamma);
  return (torque + antidamping + field_like) * (1.0 / (1.0 + p.alpha * p.alpha));
}

}  // namespace

MagnetState sllg_step(const MagnetState& state, double i_s_amps, const MagnetParams& params,
                      double dt, SplitStream& rng) {
  params.validate();
  if (!(dt > 0.0)) raise(errc::invalid_input, "time step must be positive");
  const Vec3& m = state.m;
  if (std::fabs(m.norm() - 1.0) > 1e-9)
    raise(errc::domain, "magnetization must be a unit vector");

  // Heun predictor-corrector, one noise realization per step.
  const Vec3 noise = thermal_field(params, dt, rng);
  const Vec3 k1 = llg_rhs(m, effective_field(m, params, noise), i_s_amps, params);
  const Vec3 predictor = m + k1 * dt;
  const Vec3 k2 = llg_rhs(predictor, effective_field(predictor, params, noise), i_s_amps, params);
  return {(m + (k1 + k2) * (dt / 2.0)).normalized()};
}

Trajectory run_trajectory(const MagnetParams& params, double i_s_amps, double duration,
                          double dt, std::uint64_t seed, std::size_t record_stride) {
  if (!(duration >= dt)) raise(errc::invalid_input, "duration must cover at least one step");
  if (record_stride == 0) raise(errc::invalid_input, "record stride must be >= 1");
  const auto n_steps = static_cast<std::size_t>(duration / dt);
  SplitStream rng(seed, 0);
  MagnetState state;  // z_hat start, in the easy plane
  Trajectory traj;
  traj.dt = dt;
  traj.record_stride = record_stride;
  traj.states.reserve(n_steps / record_stride + 1);
  for (std::size_t step = 1; step <= n_steps; ++step) {
    state = sllg_step(state, i_s_amps, params, dt, rng);
    if (step % record_stride == 0) traj.states.push_back(state.m);
  }
  return traj;
}

double mtj_conductance(double m_z, const MtjParams& mtj) {
  mtj.validate();
  if (!(m_z >= -1.0 && m_z <= 1.0))
    raise(errc::invalid_input, "m_z must lie in [-1, 1]");
  return mtj.g0 * (1.0 + m_z * mtj.tmr / (2.0 + mtj.tmr));
}

namespace {

// Telegraph flips of sgn(m_z) with a +/-0.3 latch so in-plane jitter around
// zero does not count.
std::size_t count_flips(const std::vector<Vec3>& states) {
  std::size_t flips = 0;
  int latch = 0;
  for (const Vec3& m : states) {
    const int level = m.z > 0.3 ? 1 : (m.z < -0.3 ? -1 : 0);
    if (level != 0) {
      if (latch != 0 && level != latch) ++flips;
      latch = level;
    }
  }
  return flips;
}

double fit_sse(const std::vector<SweepPoint>& pts, double scale) {
  double sse = 0.0;
  for (const SweepPoint& p : pts) {
    const double d = p.avg_sgn_mz - std::tanh(p.i_s / scale);
    sse += d * d;
  }
  return sse;
}

}  // namespace

SweepResult sigmoid_response(const MagnetParams& params, const std::vector<double>& currents,
                             double t_avg, double dt, std::uint64_t seed) {
  if (currents.empty()) raise(errc::invalid_input, "sweep needs at least one current");
  if (!(t_avg >= 10.0 * dt)) raise(errc::invalid_input, "averaging window too short");

  SweepResult result;
  const auto burn_steps = static_cast<std::size_t>(t_avg / dt / 10.0);
  const auto avg_steps = static_cast<std::size_t>(t_avg / dt);

  for (std::size_t k = 0; k < currents.size(); ++k) {
    SplitStream rng(seed, k);  // independent substream per sweep point
    MagnetState state;
    for (std::size_t i = 0; i < burn_steps; ++i)
      state = sllg_step(state, currents[k], params, dt, rng);
    double acc = 0.0;
    std::vector<Vec3> window;
    window.reserve(avg_steps);
    for (std::size_t i = 0; i < avg_steps; ++i) {
      state = sllg_step(state, currents[k], params, dt, rng);
      acc += state.m.z >= 0.0 ? 1.0 : -1.0;
      window.push_back(state.m);
    }
    result.points.push_back(
        {currents[k], acc / static_cast<double>(avg_steps), count_flips(window)});
  }

  // Flip-starved telegraph means the averages are unreliable at small bias.
  std::size_t lowest = 0;
  for (std::size_t k = 1; k < result.points.size(); ++k)
    if (std::fabs(result.points[k].i_s) < std::fabs(result.points[lowest].i_s)) lowest = k;
  result.low_flip_warning = result.points[lowest].flips < 100;

  // 1-D least squares over the tanh scale: golden-section on a log bracket.
  double i_max = 0.0;
  for (const SweepPoint& p : result.points) i_max = std::max(i_max, std::fabs(p.i_s));
  if (i_max == 0.0) i_max = 1.0;
  double lo = std::log(i_max * 1e-3), hi = std::log(i_max * 1e3);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - golden * (b - a), d = a + golden * (b - a);
  double fc = fit_sse(result.points, std::exp(c)), fd = fit_sse(result.points, std::exp(d));
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - golden * (b - a);
      fc = fit_sse(result.points, std::exp(c));
    } else {
      a = c; c = d; fc = fd;
      d = a + golden * (b - a);
      fd = fit_sse(result.points, std::exp(d));
    }
  }
  result.i_scale = std::exp((a + b) / 2.0);

  double mean = 0.0;
  for (const SweepPoint& p : result.points) mean += p.avg_sgn_mz;
  mean /= static_cast<double>(result.points.size());
  double sst = 0.0;
  for (const SweepPoint& p : result.points) sst += (p.avg_sgn_mz - mean) * (p.avg_sgn_mz - mean);
  const double sse = fit_sse(result.points, result.i_scale);
  result.r_squared = sst > 0.0 ? 1.0 - sse / sst : 1.0;
  return result;
}

}  // namespace pbn
