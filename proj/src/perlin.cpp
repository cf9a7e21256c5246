#include "symtrack/perlin.hpp"

#include <algorithm>
#include <cmath>

#include "symtrack/geometry.hpp"
#include "symtrack/random.hpp"

namespace symtrack {

namespace {

double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

}  // namespace

std::vector<double> perlin_1d_periodic(const PerlinParams& params, std::uint64_t seed) {
  if (params.n_points < 3) throw Error("perlin noise needs at least 3 points");
  if (params.octaves < 1) throw Error("perlin noise needs at least 1 octave");
  if (params.base_cells < 1 || !(params.lacunarity >= 1.0))
    throw Error("invalid perlin lattice parameters");

  std::vector<double> out(static_cast<std::size_t>(params.n_points), 0.0);
  Rng rng(seed);
  double amplitude = 1.0;
  double frequency = params.base_cells;
  for (int o = 0; o < params.octaves; ++o) {
    // Integer cell count keeps the lattice periodic on the ring.
    const int cells = std::max(1, static_cast<int>(std::lround(frequency)));
    std::vector<double> grad(static_cast<std::size_t>(cells));
    for (double& g : grad) g = rng.uniform(-1.0, 1.0);
    // Random phase so lattice zeros do not pin the same angles every call.
    const double phase = rng.uniform(0.0, cells);
    for (int k = 0; k < params.n_points; ++k) {
      const double u = std::fmod(static_cast<double>(k) * cells / params.n_points + phase, cells);
      const int i0 = static_cast<int>(std::floor(u)) % cells;
      const int i1 = (i0 + 1) % cells;
      const double f = u - std::floor(u);
      const double a = grad[static_cast<std::size_t>(i0)] * f;
      const double b = grad[static_cast<std::size_t>(i1)] * (f - 1.0);
      out[static_cast<std::size_t>(k)] += amplitude * (a + fade(f) * (b - a));
    }
    amplitude *= params.persistence;
    frequency *= params.lacunarity;
  }
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  if (peak > 0.0)
    for (double& v : out) v /= peak;
  return out;
}

}  // namespace symtrack
