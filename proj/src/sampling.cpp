#include "avd/sampling.hpp"

#include <cmath>
#include <numbers>

#include "avd/error.hpp"

namespace avd {

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
// Width of the sequence window reserved per seed.
constexpr std::uint64_t kSeedStride = 1ull << 32;
}  // namespace

double radical_inverse(std::uint64_t index, int base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base, result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

HaltonSequence::HaltonSequence(int dims, std::uint64_t seed) : dims_(dims), offset_(1 + seed * kSeedStride) {
  if (dims < 1 || dims > static_cast<int>(std::size(kPrimes)))
    throw Error(ErrorCode::Argument, "unsupported Halton dimensionality");
}

double HaltonSequence::operator()(std::uint64_t i, int d) const { return radical_inverse(offset_ + i, kPrimes[d]); }

std::vector<Vec> half_sphere_directions(int dimension, std::size_t count) {
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (dimension == 2) {
    for (std::size_t d = 0; d < count; ++d) {
      const double angle = std::numbers::pi * (static_cast<double>(d) + 0.5) / static_cast<double>(count);
      Vec r(2);
      r << std::cos(angle), std::sin(angle);
      dirs.push_back(r);
    }
    return dirs;
  }
  // Fibonacci lattice on the upper hemisphere.
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t d = 0; d < count; ++d) {
    const double z = 1.0 - (static_cast<double>(d) + 0.5) / static_cast<double>(count);
    const double radius = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(d);
    Vec r(3);
    r << radius * std::cos(phi), radius * std::sin(phi), z;
    dirs.push_back(r.normalized());
  }
  return dirs;
}

}  // namespace avd
