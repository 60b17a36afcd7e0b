#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace pbn {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based substream: output_k = mix64(base + k * golden), with base
// derived from (root seed, stream id). Streams are decorrelated by the mix,
// and draws are pure functions of (seed, stream, counter), so adding nodes
// never reshuffles the randomness of existing streams. Platform-independent:
// 64-bit integer ops plus explicit bit-to-double conversion.
class SplitStream {
 public:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

  SplitStream(std::uint64_t root_seed, std::uint64_t stream_id)
      : base_(mix64(root_seed + golden * (stream_id + 1)) ^ mix64(stream_id + golden)) {}

  std::uint64_t next_u64() { return mix64(base_ + golden * ++counter_); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [-1, +1); -1 attainable, +1 not.
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  // Unbiased-to-negligible integer in [0, n) via 128-bit multiply-shift.
  std::uint64_t uniform_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal, Box-Muller; second value cached.
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// One substream per network node plus a scheduler stream, all split from a
// single root seed.
class NodeRngPool {
 public:
  NodeRngPool(std::uint64_t root_seed, std::size_t n_nodes) {
    streams_.reserve(n_nodes + 1);
    for (std::size_t i = 0; i <= n_nodes; ++i) streams_.emplace_back(root_seed, i);
  }

  SplitStream& node(std::size_t i) { return streams_[i]; }
  SplitStream& scheduler() { return streams_.back(); }
  std::size_t nodes() const { return streams_.size() - 1; }

 private:
  std::vector<SplitStream> streams_;
};

}  // namespace pbn
