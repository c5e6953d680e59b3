#pragma once

// Seeded randomness. Each trial draws from its own generator derived from
// (seed, stream, trial) so results do not depend on evaluation order.

#include <cstdint>
#include <random>
#include <string_view>

#include "rootscope/numkit.hpp"

namespace rootscope {

using Rng = std::mt19937_64;

/// FNV-1a of a tag, mixed with an index; names a random stream.
inline std::uint64_t stream_id(std::string_view tag, std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

inline Rng trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(trial), hi(trial)};
  return Rng(seq);
}

inline Vec gaussian_vector(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform point on the unit sphere of span(frame) under the frame's gram.
inline Vec random_unit(const Frame& frame, Rng& rng) {
  if (frame.empty()) throw Error(ErrorCode::ZeroVector, "cannot sample from an empty frame");
  Vec c;
  double n = 0.0;
  do {
    c = gaussian_vector(rng, frame.size());
    n = norm(c);
  } while (n < 1e-8);
  return frame.combine(scaled(c, 1.0 / n));
}

/// Random element of span(frame) with gram norm at most `radius`.
inline Vec random_in_ball(const Frame& frame, Rng& rng, double radius) {
  if (frame.empty()) return Vec(frame.ambient_dim(), 0.0);
  return scaled(random_unit(frame, rng), radius * uniform(rng, 0.0, 1.0));
}

}  // namespace rootscope
