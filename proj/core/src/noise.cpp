// SPDX-License-Identifier: Apache-2.0

#include "ompc/noise.hpp"

#include <cmath>
#include <numbers>

namespace ompc {

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t RandomStream::below(std::size_t bound) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  return i < bound ? i : bound - 1;
}

std::pair<double, double> RandomStream::standard_normal_pair() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(angle), r * std::sin(angle)};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t k, std::uint64_t t) {
  return base ^ splitmix64((k << 32) | (t & 0xffffffffULL));
}

CVector cawgn(std::size_t m, double sigma, RandomStream& rng) {
  const double scale = sigma / std::numbers::sqrt2;
  CVector out(m);
  for (Complex& z : out) {
    const auto [re, im] = rng.standard_normal_pair();
    z = Complex(scale * re, scale * im);
  }
  return out;
}

}  // namespace ompc
