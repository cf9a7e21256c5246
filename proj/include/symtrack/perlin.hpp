#pragma once

#include <cstdint>
#include <vector>

namespace symtrack {

struct PerlinParams {
  int n_points = 50;
  int octaves = 6;
  double persistence = 0.5;
  double lacunarity = 2.0;
  /// Lattice cells around the ring at the first octave.
  int base_cells = 2;
};

/// Fractal gradient noise sampled at n_points equally spaced angles over
/// [0, 2*pi). Every octave's gradient lattice wraps around the ring, so the
/// sequence is periodic. Output is scaled so max |value| == 1 (all zeros
/// stays all zeros). Throws Error for n_points < 3 or octaves < 1.
std::vector<double> perlin_1d_periodic(const PerlinParams& params, std::uint64_t seed);

}  // namespace symtrack
