// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_NOISE_HPP_
#define OMPC_NOISE_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "ompc/complex_core.hpp"

namespace ompc {

/// Seeded random stream with a fully specified bit sequence, so that other
/// implementations can reproduce every draw:
///
///   - raw words come from std::mt19937_64 seeded with the 64-bit seed;
///   - uniform() = (word >> 11) * 2^-53, in [0, 1);
///   - below(b) = floor(uniform() * b);
///   - standard_normal_pair() is Box-Muller with u1 = 1 - uniform() (in (0, 1])
///     and u2 = uniform(): r = sqrt(-2 ln u1), returns (r cos 2 pi u2, r sin 2 pi u2).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  std::size_t below(std::size_t bound);
  std::pair<double, double> standard_normal_pair();

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial t at sparsity k: base ^ splitmix64((k << 32) | t).
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t k, std::uint64_t t);

/// m draws of CN(0, sigma^2): entry j takes one Box-Muller pair (z0, z1) and
/// is sigma / sqrt(2) * (z0 + i z1).
CVector cawgn(std::size_t m, double sigma, RandomStream& rng);

}  // namespace ompc

#endif  // OMPC_NOISE_HPP_
