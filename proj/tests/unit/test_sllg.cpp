#include <doctest.h>

#include <cmath>

#include "pbn/errors.hpp"
#include "pbn/sllg.hpp"

using namespace pbn;

namespace {

constexpr double kSigmaHand = 237.236753;  // Oe; 2*a*kT/(g*Ms*V*dt) at defaults, dt = 1 ps

MagnetState tilted() {
  MagnetState s;
  s.m = Vec3{0.6, 0.64, 0.48};  // unit by construction: 0.36+0.4096+0.2304
  return s;
}

}  // namespace

TEST_CASE("thermal field statistics") {
  const MagnetParams params = default_magnet();
  const double dt = 1e-12;

  SUBCASE("hand-computed standard deviation") {
    CHECK(thermal_field_std(params, dt) == doctest::Approx(kSigmaHand).epsilon(1e-6));
  }
  SUBCASE("zero temperature is silent") {
    MagnetParams cold = params;
    cold.temperature = 0.0;
    SplitStream rng(1, 0);
    for (int i = 0; i < 100; ++i) {
      const Vec3 h = thermal_field(cold, dt, rng);
      CHECK(h.x == 0.0);
      CHECK(h.y == 0.0);
      CHECK(h.z == 0.0);
    }
  }
  SUBCASE("empirical mean and std") {
    SplitStream rng(2, 0);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const Vec3 h = thermal_field(params, dt, rng);
      sum += h.x + h.y + h.z;
      sum2 += h.x * h.x + h.y * h.y + h.z * h.z;
    }
    const double mean = sum / (3.0 * n);
    const double std = std::sqrt(sum2 / (3.0 * n) - mean * mean);
    CHECK(std::fabs(mean) < 4.0 * kSigmaHand / std::sqrt(3.0 * n));
    CHECK(std == doctest::Approx(kSigmaHand).epsilon(0.005));
  }
  SUBCASE("volume and spin count follow the geometry") {
    CHECK(params.volume == doctest::Approx(7.6026542e-19).epsilon(1e-6));
    CHECK(params.n_spins() == doctest::Approx(9.0176e4).epsilon(1e-4));
  }
}

TEST_CASE("effective field is demag plus noise") {
  const MagnetParams params = default_magnet();
  SUBCASE("in-plane magnetization sees no demag") {
    const Vec3 h = effective_field({0.0, 0.6, 0.8}, params, {});
    CHECK(h.x == 0.0);
    CHECK(h.y == 0.0);
    CHECK(h.z == 0.0);
  }
  SUBCASE("out-of-plane magnetization is penalized") {
    const Vec3 h = effective_field({1.0, 0.0, 0.0}, params, {});
    CHECK(h.x == doctest::Approx(-13823.0).epsilon(1e-4));
  }
  SUBCASE("noise passes through") {
    const Vec3 h = effective_field({0.0, 0.0, 1.0}, params, {1.0, 2.0, 3.0});
    CHECK(h.x == 1.0);
    CHECK(h.y == 2.0);
    CHECK(h.z == 3.0);
  }
}

TEST_CASE("sllg_step invariants") {
  MagnetParams cold = default_magnet();
  cold.temperature = 0.0;
  const double dt = 1e-12;

  SUBCASE("zero torque leaves the state alone") {
    SplitStream rng(3, 0);
    MagnetState s;  // m = z_hat: in-plane, no demag, no noise, no current
    for (int i = 0; i < 1000; ++i) s = sllg_step(s, 0.0, cold, dt, rng);
    CHECK(s.m.z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(s.m.x) < 1e-12);
    CHECK(std::fabs(s.m.y) < 1e-12);
  }
  SUBCASE("norm is conserved to 1e-12 with noise on") {
    const MagnetParams params = default_magnet();
    SplitStream rng(4, 0);
    MagnetState s = tilted();
    for (int i = 0; i < 20000; ++i) {
      s = sllg_step(s, 0.0, params, dt, rng);
      CHECK(std::fabs(s.m.norm() - 1.0) <= 1e-12);
    }
  }
  SUBCASE("demag energy decays monotonically at zero temperature") {
    SplitStream rng(5, 0);
    MagnetState s = tilted();
    double prev = s.m.x * s.m.x;
    for (int i = 0; i < 20000; ++i) {
      s = sllg_step(s, 0.0, cold, dt, rng);
      const double e = s.m.x * s.m.x;  // proportional to 2 pi Ms^2 V m_x^2
      CHECK(e <= prev + 1e-15);
      prev = e;
    }
    CHECK(prev < 1e-6);
  }
  SUBCASE("non-unit input rejected") {
    SplitStream rng(6, 0);
    MagnetState bad;
    bad.m = Vec3{0.5, 0.0, 0.0};
    CHECK_THROWS_AS(sllg_step(bad, 0.0, default_magnet(), dt, rng), Error);
  }
}

TEST_CASE("trajectories are reproducible and easy-plane") {
  const MagnetParams params = default_magnet();
  const double dt = 1e-12;

  SUBCASE("same seed, same bytes") {
    const Trajectory a = run_trajectory(params, 0.0, 2e-9, dt, 42);
    const Trajectory b = run_trajectory(params, 0.0, 2e-9, dt, 42);
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
      CHECK(a.states[i].x == b.states[i].x);
      CHECK(a.states[i].y == b.states[i].y);
      CHECK(a.states[i].z == b.states[i].z);
    }
    const Trajectory c = run_trajectory(params, 0.0, 2e-9, dt, 43);
    bool differs = false;
    for (std::size_t i = 0; i < c.states.size() && !differs; ++i)
      differs = c.states[i].x != a.states[i].x;
    CHECK(differs);
  }
  SUBCASE("record stride thins the trace") {
    const Trajectory full = run_trajectory(params, 0.0, 1e-9, dt, 7, 1);
    const Trajectory thin = run_trajectory(params, 0.0, 1e-9, dt, 7, 10);
    CHECK(full.states.size() == 1000);
    CHECK(thin.states.size() == 100);
    CHECK(thin.states[0].x == full.states[9].x);
    CHECK(thin.time_at(0) == doctest::Approx(1e-11));
  }
  SUBCASE("strong spin current pins the free layer along z") {
    // 4x the characterized scale current (~1.3e-4 A) dominates demag and noise.
    const Trajectory traj = run_trajectory(params, 5.2e-4, 1e-6, dt, 13);
    double mz = 0.0;
    for (const Vec3& m : traj.states) mz += m.z;
    mz /= double(traj.states.size());
    CHECK(mz > 0.95);
  }
  SUBCASE("demag suppresses the out-of-plane component") {
    const Trajectory traj = run_trajectory(params, 0.0, 3e-7, dt, 11);
    double mx2 = 0.0, mz2 = 0.0;
    for (const Vec3& m : traj.states) {
      mx2 += m.x * m.x;
      mz2 += m.z * m.z;
    }
    mx2 /= double(traj.states.size());
    mz2 /= double(traj.states.size());
    CHECK(mx2 < 0.05 * mz2);
    // Boltzmann variance of m_x: kT / (4 pi Ms^2 V)
    const double var = constants::k_boltzmann_erg_per_k * params.temperature /
                       (4.0 * M_PI * params.ms * params.ms * params.volume);
    CHECK(mx2 == doctest::Approx(var).epsilon(0.25));
  }
}

TEST_CASE("sigmoid sweep flags flip-starved averaging windows") {
  const MagnetParams params = default_magnet();
  // 1 ns per point: a handful of telegraph flips at best.
  const SweepResult sweep = sigmoid_response(params, {0.0}, 1e-9, 1e-12, 3);
  CHECK(sweep.low_flip_warning);
  CHECK(sweep.points[0].flips < 100);
}

TEST_CASE("mtj conductance formula") {
  const MtjParams mtj{1e-5, 1.10};
  CHECK(mtj_conductance(0.0, mtj) == doctest::Approx(1e-5).epsilon(1e-12));
  CHECK(mtj_conductance(1.0, mtj) == doctest::Approx(1.3548e-5).epsilon(1e-4));
  CHECK(mtj_conductance(-1.0, mtj) == doctest::Approx(0.6452e-5).epsilon(1e-4));
  CHECK_THROWS_AS(mtj_conductance(1.5, mtj), Error);
  CHECK_THROWS_AS(mtj_conductance(0.0, MtjParams{0.0, 1.1}), Error);
}
