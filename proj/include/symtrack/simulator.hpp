#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symtrack/perlin.hpp"
#include "symtrack/random.hpp"
#include "symtrack/raster.hpp"
#include "symtrack/track_model.hpp"

namespace symtrack {

enum class SimKind { arrows, amoeboids, amoeboids_pc, amoeboids_pcc, amoeboids_pcca };
enum class CollisionMode { none, rigid, damped };
enum class RenderStyle { flat, phase_contrast };

std::string to_string(SimKind kind);
/// Accepts "arrows", "amoeboids", "amoeboids_pc", "amoeboids_pcc", "amoeboids_pcca"
/// (dashes are accepted in place of underscores).
SimKind parse_sim_kind(const std::string& name);

/// Generator parameters. Brightness values are relative to full scale (1.0 = 255).
struct SimConfig {
  SimKind kind = SimKind::amoeboids;
  int width = 512;
  int height = 512;
  int frames = 100;
  int n_objects = 10;
  std::uint64_t seed = 0;
  /// When false only ground truth is produced; frames stay empty.
  bool render = true;

  // Scene
  int background_bumps = 10;
  double background_peak = 0.39;
  double noise_peak = 0.078;
  double min_object_brightness = 0.39;

  // Motion: mean speed as a fraction of the mean equivalent diameter.
  double speed_to_size = 0.40;

  // Arrows
  double arrow_min_diameter = 12.0;
  double arrow_max_diameter = 36.0;
  double max_size_ratio = 6.0;
  double arrow_max_rotation_deg = 10.0;
  double expand_probability = 0.33;
  /// Per-expansion growth as a fraction of the original size.
  double expand_min = 0.016;
  double expand_max = 0.100;

  // Amoeboids
  double amoeboid_min_radius = 10.0;
  double amoeboid_max_radius = 20.0;
  PerlinParams perlin{};
  /// Initial contour modulation: r = r_nom * (1 + initial_noise * perlin).
  double initial_noise = 0.3;
  /// Per-frame radius step, as a fraction of r_nom.
  double shape_step = 0.08;
  /// Width of the Gaussian weight around r_nom, as a fraction of r_nom.
  double shape_sigma = 0.3;
  double min_radius_factor = 0.3;
  double max_radius_factor = 2.0;

  // Collisions
  double damping = 0.9;
  /// px / frame^2 toward the image centre (damped kinds only).
  double center_acceleration = 0.02;

  // Rendering
  int blur_kernel = 51;
  double canny_low = 0.1;
  double canny_high = 0.3;
  int artifact_lines = 100;

  int max_spawn_attempts = 2000;

  CollisionMode collision_mode() const;
  RenderStyle style() const;
  bool artifacts() const { return kind == SimKind::amoeboids_pcca; }
  bool is_arrow() const { return kind == SimKind::arrows; }
  /// Throws Error for out-of-range parameters.
  void validate() const;
};

struct SimObject {
  int id = 0;
  bool arrow = false;
  /// Reference point of the outline (shape centre).
  Point2 position;
  Point2 velocity;
  double orientation = 0.0;
  double brightness = 1.0;
  /// Multiplier on the recording's target speed (mean 1 over objects).
  double speed_factor = 1.0;

  // Amoeboid contour: radii at equally spaced angles.
  double nominal_radius = 0.0;
  std::vector<double> radii;

  // Arrow size: nose-to-tail length now and at spawn.
  double scale = 0.0;
  double base_scale = 0.0;

  /// Outline vertices relative to `position`.
  std::vector<Point2> outline() const;
  double area() const;
  /// 2 * sqrt(area / pi).
  double equivalent_diameter() const;
};

/// Rasterised ground-truth mask of an object on a width x height grid.
Mask object_mask(const SimObject& obj, int width, int height);

/// Arrow length giving the requested equivalent diameter.
double arrow_scale_for_diameter(double diameter);

/// Amoeboid with a Perlin-modulated contour, not yet placed (position 0).
SimObject spawn_amoeboid(const SimConfig& config, std::uint64_t seed);

/// Per-vertex radius change eps * noise * exp(-(r - r_nom)^2 / (2 sigma^2)),
/// clamped to [min_radius_factor, max_radius_factor] * r_nom.
SimObject step_amoeboid_shape(const SimObject& obj, const SimConfig& config, std::uint64_t seed_t);

struct ArrowStep {
  double rotation = 0.0;  ///< radians
  bool expanded = false;
};

/// Rotates orientation and heading by a uniform angle within the configured
/// maximum, expands with the configured probability, then translates.
ArrowStep step_arrow(SimObject& obj, const SimConfig& config, Rng& rng);

/// Velocity response for one pair along the centre-difference axis, masses
/// proportional to area. Returns false (no change) when the pair is separating.
/// Damped mode scales both post-collision velocities by `damping`.
bool collide_pair(SimObject& a, SimObject& b, CollisionMode mode, double damping = 0.9);

/// Detects overlapping pairs via their rasterised masks, applies collide_pair
/// and nudges overlapping pairs apart. `masks` is kept in sync with objects.
void resolve_collisions(std::vector<SimObject>& objects, std::vector<Mask>& masks,
                        CollisionMode mode, double damping, int width, int height);

/// Static composite of Gaussian bumps with peak exactly `peak`.
FloatImage make_background(const SimConfig& config, std::uint64_t seed);

/// Full-brightness straight lines between random points on the image border.
std::vector<std::pair<int, int>> make_artifact_pixels(const SimConfig& config, std::uint64_t seed);

struct RenderInputs {
  const FloatImage* background = nullptr;
  const std::vector<std::pair<int, int>>* artifacts = nullptr;
};

/// Renders one frame from objects and their masks.
Image render_frame(const std::vector<SimObject>& objects, const std::vector<Mask>& masks,
                   const SimConfig& config, const RenderInputs& inputs, std::uint64_t noise_seed);

struct SimResult {
  Recording recording;
  /// One gap-free track per object, id = object id.
  std::vector<GlobalTrack> ground_truth;
};

SimResult simulate(const SimConfig& config);

}  // namespace symtrack
