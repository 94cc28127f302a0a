#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fogsim::sim {

// splitmix64 finalizer; used for seed derivation only.
std::uint64_t mix64(std::uint64_t x);

// Order-sensitive combination of seed components.
std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts);

// A reproducible random stream identified by (seed, stream_id). The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// conversions below are written out so values do not depend on the standard
// library's distribution implementations.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double exponential(double rate);

  // Child stream; deterministic in (seed, stream_id, child_id).
  RngStream child(std::uint64_t child_id) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace fogsim::sim
