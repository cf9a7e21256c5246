#include "symtrack/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace symtrack {

namespace {

constexpr double kPi = std::numbers::pi;

// Arrowhead outline at unit length: tip, upper barb, notch, lower barb.
constexpr Point2 kArrowUnit[4] = {{0.6, 0.0}, {-0.4, 0.45}, {-0.15, 0.0}, {-0.4, -0.45}};

// Seed streams.
constexpr std::uint64_t kSpawnStream = 1;
constexpr std::uint64_t kBackgroundStream = 2;
constexpr std::uint64_t kArtifactStream = 3;
constexpr std::uint64_t kDynamicsStream = 4;
constexpr std::uint64_t kShapeStream = 5;
constexpr std::uint64_t kNoiseStream = 6;

Point2 arrow_unit_centroid() {
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Point2& p = kArrowUnit[i];
    const Point2& q = kArrowUnit[(i + 1) % 4];
    const double cross = p.x * q.y - q.x * p.y;
    a += cross;
    cx += (p.x + q.x) * cross;
    cy += (p.y + q.y) * cross;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

double arrow_unit_area() {
  return polygon_area(std::span<const Point2>(kArrowUnit, 4));
}

struct Extent {
  double min_x = 0.0;
  double max_x = 0.0;
  double min_y = 0.0;
  double max_y = 0.0;
};

Extent extent_of(const std::vector<Point2>& outline) {
  Extent e{outline[0].x, outline[0].x, outline[0].y, outline[0].y};
  for (const Point2& p : outline) {
    e.min_x = std::min(e.min_x, p.x);
    e.max_x = std::max(e.max_x, p.x);
    e.min_y = std::min(e.min_y, p.y);
    e.max_y = std::max(e.max_y, p.y);
  }
  return e;
}

void set_arrow_velocity(SimObject& obj, double target_speed) {
  const double s = obj.speed_factor * target_speed;
  obj.velocity = {s * std::cos(obj.orientation), s * std::sin(obj.orientation)};
}

// Reflects the outward velocity component at the field edges and keeps the
// object on the grid.
void bounce_walls(SimObject& obj, int width, int height) {
  Extent e = extent_of(obj.outline());
  bool reflected = false;
  if ((obj.position.x + e.min_x < 0.0 && obj.velocity.x < 0.0) ||
      (obj.position.x + e.max_x > width - 1.0 && obj.velocity.x > 0.0)) {
    obj.velocity.x = -obj.velocity.x;
    reflected = true;
  }
  if ((obj.position.y + e.min_y < 0.0 && obj.velocity.y < 0.0) ||
      (obj.position.y + e.max_y > height - 1.0 && obj.velocity.y > 0.0)) {
    obj.velocity.y = -obj.velocity.y;
    reflected = true;
  }
  if (reflected && obj.arrow) {
    obj.orientation = std::atan2(obj.velocity.y, obj.velocity.x);
    e = extent_of(obj.outline());
  }
  // Arrows keep their whole outline on the grid when it fits.
  if (obj.arrow && e.max_x - e.min_x <= width - 1.0)
    obj.position.x = std::clamp(obj.position.x, -e.min_x, width - 1.0 - e.max_x);
  else
    obj.position.x = std::clamp(obj.position.x, 0.0, width - 1.0);
  if (obj.arrow && e.max_y - e.min_y <= height - 1.0)
    obj.position.y = std::clamp(obj.position.y, -e.min_y, height - 1.0 - e.max_y);
  else
    obj.position.y = std::clamp(obj.position.y, 0.0, height - 1.0);
}

bool boxes_overlap(const BoundingBox& a, const BoundingBox& b) {
  return !(a.empty() || b.empty() || a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0);
}

bool masks_overlap(const Mask& a, const Mask& b) {
  return boxes_overlap(bounding_box(a), bounding_box(b)) && intersection_area(a, b) > 0;
}

Point2 pair_axis(const SimObject& a, const SimObject& b) {
  const double dx = b.position.x - a.position.x;
  const double dy = b.position.y - a.position.y;
  const double d = std::hypot(dx, dy);
  if (d <= 0.0) return {1.0, 0.0};
  return {dx / d, dy / d};
}

}  // namespace

std::string to_string(SimKind kind) {
  switch (kind) {
    case SimKind::arrows: return "arrows";
    case SimKind::amoeboids: return "amoeboids";
    case SimKind::amoeboids_pc: return "amoeboids_pc";
    case SimKind::amoeboids_pcc: return "amoeboids_pcc";
    case SimKind::amoeboids_pcca: return "amoeboids_pcca";
  }
  return "unknown";
}

SimKind parse_sim_kind(const std::string& name) {
  std::string n = name;
  std::replace(n.begin(), n.end(), '-', '_');
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  for (SimKind k : {SimKind::arrows, SimKind::amoeboids, SimKind::amoeboids_pc,
                    SimKind::amoeboids_pcc, SimKind::amoeboids_pcca})
    if (to_string(k) == n) return k;
  throw Error("unknown simulator kind '" + name + "'");
}

CollisionMode SimConfig::collision_mode() const {
  switch (kind) {
    case SimKind::arrows: return CollisionMode::none;
    case SimKind::amoeboids:
    case SimKind::amoeboids_pc: return CollisionMode::rigid;
    case SimKind::amoeboids_pcc:
    case SimKind::amoeboids_pcca: return CollisionMode::damped;
  }
  return CollisionMode::none;
}

RenderStyle SimConfig::style() const {
  return kind == SimKind::arrows || kind == SimKind::amoeboids ? RenderStyle::flat
                                                               : RenderStyle::phase_contrast;
}

void SimConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error("invalid simulator config: " + what); };
  if (width <= 0 || height <= 0) fail("dimensions must be positive");
  if (frames < 1) fail("frames must be >= 1");
  if (n_objects < 0) fail("n_objects must be >= 0");
  if (background_bumps < 0) fail("background_bumps must be >= 0");
  if (!(background_peak >= 0.0 && background_peak <= 1.0)) fail("background_peak outside [0, 1]");
  if (!(noise_peak >= 0.0 && noise_peak <= 1.0)) fail("noise_peak outside [0, 1]");
  if (!(min_object_brightness >= 0.0 && min_object_brightness < 1.0))
    fail("min_object_brightness outside [0, 1)");
  if (!(speed_to_size >= 0.0)) fail("speed_to_size must be >= 0");
  if (!(arrow_min_diameter > 0.0 && arrow_max_diameter >= arrow_min_diameter))
    fail("arrow diameter band");
  if (arrow_max_diameter / arrow_min_diameter > max_size_ratio)
    fail("arrow diameter band exceeds max_size_ratio");
  if (!(arrow_max_rotation_deg >= 0.0 && arrow_max_rotation_deg <= 180.0))
    fail("arrow_max_rotation_deg outside [0, 180]");
  if (!(expand_probability >= 0.0 && expand_probability <= 1.0))
    fail("expand_probability outside [0, 1]");
  if (!(expand_min >= 0.0 && expand_max >= expand_min)) fail("expansion band");
  if (!(amoeboid_min_radius > 0.0 && amoeboid_max_radius >= amoeboid_min_radius))
    fail("amoeboid radius band");
  if (perlin.n_points < 3 || perlin.octaves < 1) fail("perlin parameters");
  if (!(initial_noise >= 0.0 && initial_noise < 1.0)) fail("initial_noise outside [0, 1)");
  if (!(shape_step >= 0.0)) fail("shape_step must be >= 0");
  if (!(shape_sigma > 0.0)) fail("shape_sigma must be > 0");
  if (!(min_radius_factor > 0.0 && max_radius_factor >= min_radius_factor))
    fail("radius clamp band");
  if (!(damping > 0.0 && damping <= 1.0)) fail("damping outside (0, 1]");
  if (!(center_acceleration >= 0.0)) fail("center_acceleration must be >= 0");
  if (blur_kernel < 1 || blur_kernel % 2 == 0) fail("blur_kernel must be odd and positive");
  if (!(canny_low >= 0.0 && canny_high >= canny_low)) fail("canny thresholds");
  if (artifact_lines < 0) fail("artifact_lines must be >= 0");
  if (max_spawn_attempts < 1) fail("max_spawn_attempts must be >= 1");
}

std::vector<Point2> SimObject::outline() const {
  std::vector<Point2> pts;
  const double c = std::cos(orientation);
  const double s = std::sin(orientation);
  if (arrow) {
    const Point2 centre = arrow_unit_centroid();
    for (const Point2& p : kArrowUnit) {
      const double x = (p.x - centre.x) * scale;
      const double y = (p.y - centre.y) * scale;
      pts.push_back({x * c - y * s, x * s + y * c});
    }
    return pts;
  }
  const std::size_t n = radii.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = orientation + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    pts.push_back({radii[k] * std::cos(theta), radii[k] * std::sin(theta)});
  }
  return pts;
}

double SimObject::area() const {
  if (arrow) return arrow_unit_area() * scale * scale;
  return polygon_area(outline());
}

double SimObject::equivalent_diameter() const { return 2.0 * std::sqrt(area() / kPi); }

double arrow_scale_for_diameter(double diameter) {
  // area = unit_area * L^2 = pi * (d / 2)^2
  return diameter * 0.5 * std::sqrt(kPi / arrow_unit_area());
}

Mask object_mask(const SimObject& obj, int width, int height) {
  const int ox = static_cast<int>(std::floor(obj.position.x));
  const int oy = static_cast<int>(std::floor(obj.position.y));
  const double fx = obj.position.x - ox;
  const double fy = obj.position.y - oy;
  std::vector<Point2> pts = obj.outline();
  for (Point2& p : pts) {
    p.x += fx;
    p.y += fy;
  }
  Mask m = rasterize_polygon(pts, ox, oy, width, height);
  if (m.empty()) {
    // Sub-pixel objects still occupy their reference pixel.
    const int px = std::clamp(static_cast<int>(std::lround(obj.position.x)), 0, width - 1);
    const int py = std::clamp(static_cast<int>(std::lround(obj.position.y)), 0, height - 1);
    m = Mask::from_runs(width, height, {{py, px, 1}});
  }
  return m;
}

SimObject spawn_amoeboid(const SimConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  SimObject obj;
  obj.arrow = false;
  obj.nominal_radius = rng.uniform(config.amoeboid_min_radius, config.amoeboid_max_radius);
  obj.orientation = rng.uniform(0.0, 2.0 * kPi);
  const std::vector<double> noise = perlin_1d_periodic(config.perlin, rng.next());
  obj.radii.resize(noise.size());
  for (std::size_t k = 0; k < noise.size(); ++k)
    obj.radii[k] = obj.nominal_radius * (1.0 + config.initial_noise * noise[k]);
  return obj;
}

SimObject step_amoeboid_shape(const SimObject& obj, const SimConfig& config, std::uint64_t seed_t) {
  SimObject next = obj;
  if (obj.arrow || obj.radii.empty()) return next;
  PerlinParams params = config.perlin;
  params.n_points = static_cast<int>(obj.radii.size());
  const std::vector<double> noise = perlin_1d_periodic(params, seed_t);
  const double r_nom = obj.nominal_radius;
  const double eps = config.shape_step * r_nom;
  const double sigma = config.shape_sigma * r_nom;
  const double lo = config.min_radius_factor * r_nom;
  const double hi = config.max_radius_factor * r_nom;
  for (std::size_t k = 0; k < next.radii.size(); ++k) {
    const double dr = obj.radii[k] - r_nom;
    const double weight = std::exp(-(dr * dr) / (2.0 * sigma * sigma));
    next.radii[k] = std::clamp(obj.radii[k] + eps * noise[k] * weight, lo, hi);
  }
  return next;
}

ArrowStep step_arrow(SimObject& obj, const SimConfig& config, Rng& rng) {
  ArrowStep info;
  const double max_rot = config.arrow_max_rotation_deg * kPi / 180.0;
  info.rotation = rng.uniform(-max_rot, max_rot);
  obj.orientation += info.rotation;
  const double c = std::cos(info.rotation);
  const double s = std::sin(info.rotation);
  obj.velocity = {obj.velocity.x * c - obj.velocity.y * s, obj.velocity.x * s + obj.velocity.y * c};
  // Always draw both numbers so the stream does not depend on the branch.
  const double roll = rng.uniform();
  const double growth = rng.uniform(config.expand_min, config.expand_max);
  if (roll < config.expand_probability) {
    obj.scale += growth * obj.base_scale;
    info.expanded = true;
  }
  obj.position.x += obj.velocity.x;
  obj.position.y += obj.velocity.y;
  return info;
}

bool collide_pair(SimObject& a, SimObject& b, CollisionMode mode, double damping) {
  if (mode == CollisionMode::none) return false;
  const Point2 n = pair_axis(a, b);
  const double rel = (b.velocity.x - a.velocity.x) * n.x + (b.velocity.y - a.velocity.y) * n.y;
  if (rel >= 0.0) return false;
  const double ma = a.area();
  const double mb = b.area();
  const double total = ma + mb;
  const double ka = 2.0 * mb / total * rel;
  const double kb = 2.0 * ma / total * rel;
  a.velocity.x += ka * n.x;
  a.velocity.y += ka * n.y;
  b.velocity.x -= kb * n.x;
  b.velocity.y -= kb * n.y;
  if (mode == CollisionMode::damped) {
    a.velocity.x *= damping;
    a.velocity.y *= damping;
    b.velocity.x *= damping;
    b.velocity.y *= damping;
  }
  return true;
}

void resolve_collisions(std::vector<SimObject>& objects, std::vector<Mask>& masks,
                        CollisionMode mode, double damping, int width, int height) {
  if (mode == CollisionMode::none) return;
  const std::size_t n = objects.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (masks_overlap(masks[i], masks[j])) collide_pair(objects[i], objects[j], mode, damping);

  // Nudge overlapping pairs apart along their axis, heavier objects less.
  constexpr int kMaxSweeps = 20;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!masks_overlap(masks[i], masks[j])) continue;
        any = true;
        const Point2 axis = pair_axis(objects[i], objects[j]);
        const double mi = objects[i].area();
        const double mj = objects[j].area();
        const double step = 1.0;
        objects[i].position.x -= axis.x * step * mj / (mi + mj);
        objects[i].position.y -= axis.y * step * mj / (mi + mj);
        objects[j].position.x += axis.x * step * mi / (mi + mj);
        objects[j].position.y += axis.y * step * mi / (mi + mj);
        for (std::size_t k : {i, j}) {
          objects[k].position.x = std::clamp(objects[k].position.x, 0.0, width - 1.0);
          objects[k].position.y = std::clamp(objects[k].position.y, 0.0, height - 1.0);
          masks[k] = object_mask(objects[k], width, height);
        }
      }
    }
    if (!any) break;
  }
}

FloatImage make_background(const SimConfig& config, std::uint64_t seed) {
  FloatImage bg(config.width, config.height, 0.0f);
  if (config.background_bumps == 0 || config.background_peak <= 0.0) return bg;
  Rng rng(seed);
  struct Bump {
    double cx, cy, a, b, c, amp;
  };
  std::vector<Bump> bumps;
  const double scale = std::max(config.width, config.height);
  for (int k = 0; k < config.background_bumps; ++k) {
    const double cx = rng.uniform(0.0, config.width);
    const double cy = rng.uniform(0.0, config.height);
    const double sx = rng.uniform(0.05, 0.25) * scale;
    const double sy = rng.uniform(0.05, 0.25) * scale;
    const double th = rng.uniform(0.0, kPi);
    const double amp = rng.uniform(0.3, 1.0);
    // Inverse covariance of a rotated axis-aligned Gaussian.
    const double ct = std::cos(th);
    const double st = std::sin(th);
    const double a = ct * ct / (sx * sx) + st * st / (sy * sy);
    const double b = ct * st * (1.0 / (sx * sx) - 1.0 / (sy * sy));
    const double c = st * st / (sx * sx) + ct * ct / (sy * sy);
    bumps.push_back({cx, cy, a, b, c, amp});
  }
  std::vector<double> acc(bg.data.size(), 0.0);
  double peak = 0.0;
  for (int y = 0; y < config.height; ++y) {
    for (int x = 0; x < config.width; ++x) {
      double v = 0.0;
      for (const Bump& g : bumps) {
        const double dx = x - g.cx;
        const double dy = y - g.cy;
        v += g.amp * std::exp(-0.5 * (g.a * dx * dx + 2.0 * g.b * dx * dy + g.c * dy * dy));
      }
      acc[static_cast<std::size_t>(y) * config.width + x] = v;
      peak = std::max(peak, v);
    }
  }
  const double k = peak > 0.0 ? config.background_peak / peak : 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i)
    bg.data[i] = static_cast<float>(std::min(acc[i] * k, config.background_peak));
  return bg;
}

std::vector<std::pair<int, int>> make_artifact_pixels(const SimConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<int, int>> px;
  const int w = config.width;
  const int h = config.height;
  auto border_point = [&](int side) -> std::pair<int, int> {
    switch (side) {
      case 0: return {static_cast<int>(rng.uniform_int(0, w - 1)), 0};
      case 1: return {w - 1, static_cast<int>(rng.uniform_int(0, h - 1))};
      case 2: return {static_cast<int>(rng.uniform_int(0, w - 1)), h - 1};
      default: return {0, static_cast<int>(rng.uniform_int(0, h - 1))};
    }
  };
  for (int i = 0; i < config.artifact_lines; ++i) {
    const int s0 = static_cast<int>(rng.uniform_int(0, 3));
    const int s1 = (s0 + 1 + static_cast<int>(rng.uniform_int(0, 2))) % 4;
    const auto [x0, y0] = border_point(s0);
    const auto [x1, y1] = border_point(s1);
    const auto line = line_pixels(x0, y0, x1, y1, w, h);
    px.insert(px.end(), line.begin(), line.end());
  }
  std::sort(px.begin(), px.end());
  px.erase(std::unique(px.begin(), px.end()), px.end());
  return px;
}

Image render_frame(const std::vector<SimObject>& objects, const std::vector<Mask>& masks,
                   const SimConfig& config, const RenderInputs& inputs, std::uint64_t noise_seed) {
  const int w = config.width;
  const int h = config.height;
  FloatImage canvas(w, h, 0.0f);
  if (inputs.background) canvas = *inputs.background;
  Rng noise(noise_seed);
  for (float& v : canvas.data) v += static_cast<float>(noise.uniform(0.0, config.noise_peak));

  if (config.style() == RenderStyle::flat) {
    for (std::size_t i = 0; i < objects.size(); ++i) {
      for (const Run& r : masks[i].runs()) {
        for (int x = r.start; x < r.start + r.length; ++x) {
          // Object replaces background; keeps the per-pixel noise.
          const float bg = inputs.background ? inputs.background->at(x, r.row) : 0.0f;
          canvas.at(x, r.row) += static_cast<float>(objects[i].brightness) - bg;
        }
      }
    }
  } else {
    FloatImage edges(w, h, 0.0f);
    for (std::size_t i = 0; i < objects.size(); ++i)
      for (const auto& [x, y] : canny_edges(masks[i], config.canny_low, config.canny_high))
        edges.at(x, y) = std::max(edges.at(x, y), static_cast<float>(objects[i].brightness));
    const double sigma = sigma_for_kernel(config.blur_kernel);
    const FloatImage blurred = gaussian_blur(edges, config.blur_kernel, sigma);
    // Gain so a long straight edge peaks at the object's brightness.
    const double gain = 1.0 / gaussian_kernel(config.blur_kernel, sigma)[config.blur_kernel / 2];
    for (std::size_t k = 0; k < canvas.data.size(); ++k)
      canvas.data[k] += static_cast<float>(gain * blurred.data[k]);
  }

  if (inputs.artifacts)
    for (const auto& [x, y] : *inputs.artifacts) canvas.at(x, y) = 1.0f;

  Image img(w, h, 0);
  for (std::size_t k = 0; k < canvas.data.size(); ++k) {
    const double v = std::clamp(static_cast<double>(canvas.data[k]), 0.0, 1.0);
    img.pixels[k] = static_cast<std::uint8_t>(std::lround(255.0 * v));
  }
  return img;
}

namespace {

double mean_diameter(const std::vector<SimObject>& objects) {
  if (objects.empty()) return 0.0;
  double s = 0.0;
  for (const SimObject& o : objects) s += o.equivalent_diameter();
  return s / static_cast<double>(objects.size());
}

double size_ratio(const std::vector<SimObject>& objects) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const SimObject& o : objects) {
    lo = std::min(lo, o.equivalent_diameter());
    hi = std::max(hi, o.equivalent_diameter());
  }
  return objects.empty() ? 1.0 : hi / lo;
}

std::vector<SimObject> spawn_all(const SimConfig& config) {
  std::vector<SimObject> objects;
  std::vector<Mask> masks;
  Rng rng(derive_seed(config.seed, kSpawnStream));
  for (int i = 0; i < config.n_objects; ++i) {
    SimObject proto;
    if (config.is_arrow()) {
      proto.arrow = true;
      const double d = rng.uniform(config.arrow_min_diameter, config.arrow_max_diameter);
      proto.scale = proto.base_scale = arrow_scale_for_diameter(d);
      proto.orientation = rng.uniform(0.0, 2.0 * kPi);
    } else {
      proto = spawn_amoeboid(config, rng.next());
    }
    proto.id = i;
    proto.brightness = 1.0 - (1.0 - config.min_object_brightness) * rng.uniform();
    const Extent e = extent_of(proto.outline());
    bool placed = false;
    for (int attempt = 0; attempt < config.max_spawn_attempts && !placed; ++attempt) {
      const double lo_x = std::min(-e.min_x, config.width / 2.0);
      const double hi_x = std::max(config.width - 1.0 - e.max_x, lo_x);
      const double lo_y = std::min(-e.min_y, config.height / 2.0);
      const double hi_y = std::max(config.height - 1.0 - e.max_y, lo_y);
      proto.position = {rng.uniform(lo_x, hi_x), rng.uniform(lo_y, hi_y)};
      const Mask m = object_mask(proto, config.width, config.height);
      placed = std::none_of(masks.begin(), masks.end(),
                            [&](const Mask& other) { return masks_overlap(m, other); });
      if (placed) masks.push_back(m);
    }
    if (!placed) {
      std::ostringstream os;
      os << "could not place object " << i << " without overlap after "
         << config.max_spawn_attempts << " attempts";
      throw Error(os.str());
    }
    objects.push_back(std::move(proto));
  }

  // Speeds: half-normal factors normalised to mean 1, independent of size.
  double sum = 0.0;
  for (SimObject& o : objects) {
    o.speed_factor = std::abs(rng.normal());
    sum += o.speed_factor;
  }
  const double target = config.speed_to_size * mean_diameter(objects);
  for (SimObject& o : objects) {
    o.speed_factor = sum > 0.0 ? o.speed_factor * static_cast<double>(objects.size()) / sum : 1.0;
    if (o.arrow) {
      set_arrow_velocity(o, target);
    } else {
      const double heading = rng.uniform(0.0, 2.0 * kPi);
      o.velocity = {o.speed_factor * target * std::cos(heading),
                    o.speed_factor * target * std::sin(heading)};
    }
  }
  return objects;
}

}  // namespace

SimResult simulate(const SimConfig& config) {
  config.validate();
  SimResult result;
  result.recording.width = config.width;
  result.recording.height = config.height;
  result.recording.length = config.frames;

  std::vector<SimObject> objects = spawn_all(config);
  FloatImage background;
  std::vector<std::pair<int, int>> artifacts;
  RenderInputs inputs;
  if (config.render) {
    background = make_background(config, derive_seed(config.seed, kBackgroundStream));
    inputs.background = &background;
    if (config.artifacts()) {
      artifacts = make_artifact_pixels(config, derive_seed(config.seed, kArtifactStream));
      inputs.artifacts = &artifacts;
    }
  }

  for (const SimObject& o : objects) result.ground_truth.push_back(GlobalTrack{o.id, {}});

  Rng dynamics(derive_seed(config.seed, kDynamicsStream));
  const std::uint64_t shape_seed = derive_seed(config.seed, kShapeStream);
  const std::uint64_t noise_seed = derive_seed(config.seed, kNoiseStream);
  const Point2 centre{(config.width - 1) / 2.0, (config.height - 1) / 2.0};
  const CollisionMode mode = config.collision_mode();

  std::vector<Mask> masks;
  DetectionId next_detection = 0;
  for (int t = 0; t < config.frames; ++t) {
    if (t > 0) {
      for (SimObject& o : objects) {
        if (o.arrow) {
          const double before = o.scale;
          if (step_arrow(o, config, dynamics).expanded && size_ratio(objects) > config.max_size_ratio)
            o.scale = before;
        } else {
          o = step_amoeboid_shape(
              o, config,
              derive_seed(shape_seed, static_cast<std::uint64_t>(t) * 1000003ULL + o.id));
          if (mode == CollisionMode::damped && config.center_acceleration > 0.0) {
            const double dx = centre.x - o.position.x;
            const double dy = centre.y - o.position.y;
            const double d = std::hypot(dx, dy);
            if (d > 0.0) {
              o.velocity.x += config.center_acceleration * dx / d;
              o.velocity.y += config.center_acceleration * dy / d;
            }
          }
          o.position.x += o.velocity.x;
          o.position.y += o.velocity.y;
        }
        bounce_walls(o, config.width, config.height);
      }
    }
    masks.clear();
    for (const SimObject& o : objects) masks.push_back(object_mask(o, config.width, config.height));
    if (t > 0) resolve_collisions(objects, masks, mode, config.damping, config.width, config.height);
    if (config.is_arrow()) {
      const double target = config.speed_to_size * mean_diameter(objects);
      for (SimObject& o : objects) set_arrow_velocity(o, target);
    }

    for (std::size_t i = 0; i < objects.size(); ++i)
      result.ground_truth[i].entries.emplace(
          t, TrackEntry{masks[i], Provenance::detected, next_detection++});
    if (config.render)
      result.recording.frames.push_back(render_frame(
          objects, masks, config, inputs, derive_seed(noise_seed, static_cast<std::uint64_t>(t))));
  }
  return result;
}

}  // namespace symtrack
