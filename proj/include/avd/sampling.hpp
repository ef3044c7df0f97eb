#pragma once

#include <cstdint>
#include <vector>

#include "avd/linalg.hpp"

namespace avd {

/// Van der Corput radical inverse of `index` in the given base.
double radical_inverse(std::uint64_t index, int base);

/// Halton low-discrepancy sequence of fixed dimensionality. The seed selects
/// a disjoint window of the sequence so different seeds give different but
/// reproducible samples; index 0 of the sequence is never produced.
class HaltonSequence {
 public:
  HaltonSequence(int dims, std::uint64_t seed);

  int dims() const { return dims_; }
  /// Coordinate `d` of sample `i`, in (0, 1).
  double operator()(std::uint64_t i, int d) const;

 private:
  int dims_;
  std::uint64_t offset_;
};

/// `count` unit directions covering the half sphere (directions r and -r are
/// equivalent for every quantity sampled here). Deterministic.
std::vector<Vec> half_sphere_directions(int dimension, std::size_t count);

}  // namespace avd
