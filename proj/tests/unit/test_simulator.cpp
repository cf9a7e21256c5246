#include <cmath>
#include <numeric>

#include "doctest.h"
#include "symtrack/perlin.hpp"
#include "symtrack/simulator.hpp"

using namespace symtrack;

namespace {

constexpr double kPi = 3.14159265358979323846;

SimObject disc(double x, double y, double vx, double vy, double r) {
  SimObject o;
  o.position = {x, y};
  o.velocity = {vx, vy};
  o.nominal_radius = r;
  o.radii.assign(64, r);
  return o;
}

double kinetic(const SimObject& o) {
  return 0.5 * o.area() * (o.velocity.x * o.velocity.x + o.velocity.y * o.velocity.y);
}

double speed(const SimObject& o) { return std::hypot(o.velocity.x, o.velocity.y); }

}  // namespace

TEST_CASE("perlin ring noise") {
  const PerlinParams p;
  const auto a = perlin_1d_periodic(p, 1);
  REQUIRE(a.size() == 50);
  double peak = 0;
  for (double v : a) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(1.0));
  CHECK(a == perlin_1d_periodic(p, 1));
  CHECK(a != perlin_1d_periodic(p, 2));
  CHECK_THROWS_AS(perlin_1d_periodic(PerlinParams{2}, 0), Error);

  // The seam between the last and the first sample looks like any other step.
  double seam = 0, step = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto v = perlin_1d_periodic(p, s);
    seam += std::abs(v.back() - v.front());
    for (std::size_t k = 1; k < v.size(); ++k) step += std::abs(v[k] - v[k - 1]) / (v.size() - 1.0);
  }
  CHECK(seam / step == doctest::Approx(1.0).epsilon(0.3));
}

TEST_CASE("arrow geometry") {
  SimObject a;
  a.arrow = true;
  a.scale = 20.0;
  CHECK(a.area() == doctest::Approx(0.3375 * 400));
  a.scale = arrow_scale_for_diameter(24.0);
  CHECK(a.equivalent_diameter() == doctest::Approx(24.0));
  a.position = {50.0, 50.0};
  const Mask m = object_mask(a, 100, 100);
  CHECK(static_cast<double>(area(m)) == doctest::Approx(a.area()).epsilon(0.15));
  const Centroid c = centroid(m);
  CHECK(std::abs(c.x - 50.0) < 1.5);
  CHECK(std::abs(c.y - 50.0) < 1.5);
}

TEST_CASE("amoeboid spawn and shape steps") {
  SimConfig cfg;
  cfg.initial_noise = 0.0;
  const SimObject round = spawn_amoeboid(cfg, 3);
  for (double r : round.radii) CHECK(r == round.nominal_radius);
  CHECK(spawn_amoeboid(SimConfig{}, 3).radii == spawn_amoeboid(SimConfig{}, 3).radii);

  SimConfig frozen;
  frozen.shape_step = 0.0;
  const SimObject o = spawn_amoeboid(frozen, 5);
  CHECK(step_amoeboid_shape(o, frozen, 77).radii == o.radii);

  for (std::uint64_t s = 0; s < 100; ++s) {
    const SimObject x = spawn_amoeboid(SimConfig{}, s);
    CHECK(x.nominal_radius >= 10.0);
    CHECK(x.nominal_radius <= 20.0);
    for (double r : x.radii) {
      CHECK(r >= 0.7 * x.nominal_radius - 1e-9);
      CHECK(r <= 1.3 * x.nominal_radius + 1e-9);
    }
  }
}

TEST_CASE("amoeboid shapes drift slowly but far") {
  const SimConfig cfg;
  double near = 0, far = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    std::vector<SimObject> hist{spawn_amoeboid(cfg, trial)};
    for (int t = 1; t <= 20; ++t) hist.push_back(step_amoeboid_shape(hist.back(), cfg, trial * 100 + t));
    for (std::size_t k = 0; k < hist[0].radii.size(); ++k) {
      near += std::abs(hist[1].radii[k] - hist[0].radii[k]);
      far += std::abs(hist[20].radii[k] - hist[0].radii[k]);
      CHECK(hist[20].radii[k] >= 0.3 * hist[0].nominal_radius - 1e-9);
      CHECK(hist[20].radii[k] <= 2.0 * hist[0].nominal_radius + 1e-9);
    }
  }
  CHECK(far > 2.5 * near);
}

TEST_CASE("arrow steps rotate within bounds and expand at the configured rate") {
  SimConfig cfg;
  SimObject a;
  a.arrow = true;
  a.scale = a.base_scale = 10.0;
  a.velocity = {1.0, 0.0};
  Rng rng(123);
  int expansions = 0;
  double max_rot = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double before = a.scale;
    const ArrowStep s = step_arrow(a, cfg, rng);
    max_rot = std::max(max_rot, std::abs(s.rotation));
    if (s.expanded) {
      ++expansions;
      const double growth = (a.scale - before) / a.base_scale;
      CHECK(growth >= 0.016);
      CHECK(growth <= 0.100);
    } else {
      CHECK(a.scale == before);
    }
    CHECK(speed(a) == doctest::Approx(1.0));
  }
  CHECK(max_rot <= 10.0 * kPi / 180.0);
  CHECK(max_rot > 9.9 * kPi / 180.0);
  CHECK(std::abs(expansions / 10000.0 - 0.33) <= 0.02);

  SimConfig never = cfg;
  never.expand_probability = 0.0;
  SimObject b = a;
  const double area0 = b.area();
  for (int i = 0; i < 100; ++i) step_arrow(b, never, rng);
  CHECK(b.area() == area0);
}

TEST_CASE("rigid collisions conserve momentum and energy") {
  SUBCASE("equal masses head-on exchange velocities") {
    SimObject a = disc(0, 0, 2, 0, 10);
    SimObject b = disc(15, 0, -1, 0, 10);
    REQUIRE(collide_pair(a, b, CollisionMode::rigid));
    CHECK(a.velocity.x == doctest::Approx(-1.0));
    CHECK(b.velocity.x == doctest::Approx(2.0));
    CHECK(a.velocity.y == doctest::Approx(0.0));
  }
  SUBCASE("unequal masses at an angle") {
    SimObject a = disc(0, 0, 3, 1, 8);
    SimObject b = disc(12, 5, -1, -2, 14);
    const double px = a.area() * a.velocity.x + b.area() * b.velocity.x;
    const double py = a.area() * a.velocity.y + b.area() * b.velocity.y;
    const double e = kinetic(a) + kinetic(b);
    REQUIRE(collide_pair(a, b, CollisionMode::rigid));
    CHECK(a.area() * a.velocity.x + b.area() * b.velocity.x == doctest::Approx(px).epsilon(1e-12));
    CHECK(a.area() * a.velocity.y + b.area() * b.velocity.y == doctest::Approx(py).epsilon(1e-12));
    CHECK(std::abs(kinetic(a) + kinetic(b) - e) / e < 1e-9);
  }
  SUBCASE("separating pairs are left alone") {
    SimObject a = disc(0, 0, -1, 0, 10);
    SimObject b = disc(15, 0, 1, 0, 10);
    CHECK_FALSE(collide_pair(a, b, CollisionMode::rigid));
    CHECK(a.velocity.x == -1.0);
  }
  SUBCASE("mode none never responds") {
    SimObject a = disc(0, 0, 2, 0, 10);
    SimObject b = disc(15, 0, -1, 0, 10);
    CHECK_FALSE(collide_pair(a, b, CollisionMode::none));
  }
}

TEST_CASE("damped collisions lose ten percent of speed per body") {
  SimObject a = disc(0, 0, 3, 1, 8);
  SimObject b = disc(12, 5, -1, -2, 14);
  SimObject ra = a, rb = b;
  collide_pair(ra, rb, CollisionMode::rigid);
  REQUIRE(collide_pair(a, b, CollisionMode::damped, 0.9));
  CHECK(speed(a) == doctest::Approx(0.9 * speed(ra)).epsilon(1e-12));
  CHECK(speed(b) == doctest::Approx(0.9 * speed(rb)).epsilon(1e-12));
}

TEST_CASE("resolve_collisions separates overlapping objects") {
  std::vector<SimObject> objs{disc(50, 50, 1, 0, 10), disc(62, 50, -1, 0, 10)};
  std::vector<Mask> masks{object_mask(objs[0], 128, 128), object_mask(objs[1], 128, 128)};
  REQUIRE(intersection_area(masks[0], masks[1]) > 0);
  resolve_collisions(objs, masks, CollisionMode::rigid, 0.9, 128, 128);
  CHECK(intersection_area(masks[0], masks[1]) == 0);
  CHECK(objs[0].velocity.x == doctest::Approx(-1.0));
  CHECK(masks[0] == object_mask(objs[0], 128, 128));
}

TEST_CASE("rendering brightness bands") {
  SimConfig cfg;
  cfg.kind = SimKind::amoeboids;
  cfg.width = cfg.height = 96;
  const FloatImage bg = make_background(cfg, 4);
  float peak = 0;
  for (float v : bg.data) peak = std::max(peak, v);
  CHECK(peak == doctest::Approx(0.39f));

  const Image empty = render_frame({}, {}, cfg, RenderInputs{&bg, nullptr}, 1);
  for (auto p : empty.pixels) CHECK(p <= std::lround(255 * (0.39 + 0.078)));

  SimObject o = disc(48, 48, 0, 0, 12);
  o.brightness = 0.4;
  const Mask m = object_mask(o, 96, 96);
  const Image flat = render_frame({o}, {m}, cfg, RenderInputs{&bg, nullptr}, 1);
  for (const Run& r : m.runs())
    for (int x = r.start; x < r.start + r.length; ++x) CHECK(flat.at(x, r.row) >= std::lround(255 * 0.39));
}

TEST_CASE("artifact lines are static per recording and differ across seeds") {
  SimConfig cfg;
  cfg.kind = SimKind::amoeboids_pcca;
  cfg.width = cfg.height = 128;
  cfg.frames = 4;
  cfg.n_objects = 3;
  cfg.seed = 1;
  const SimResult r = simulate(cfg);
  const auto lines = make_artifact_pixels(cfg, 99);
  CHECK(lines.size() > 100);
  CHECK(lines == make_artifact_pixels(cfg, 99));
  CHECK(lines != make_artifact_pixels(cfg, 100));
  // Pixels at full brightness in every frame form the line overlay.
  std::size_t saturated = 0;
  for (std::size_t k = 0; k < r.recording.frames[0].pixels.size(); ++k) {
    bool all = true;
    for (const Image& f : r.recording.frames) all = all && f.pixels[k] == 255;
    saturated += all;
  }
  CHECK(saturated > 500);
}

TEST_CASE("simulate is deterministic and produces gap-free ground truth") {
  for (SimKind kind : {SimKind::arrows, SimKind::amoeboids, SimKind::amoeboids_pc,
                       SimKind::amoeboids_pcc, SimKind::amoeboids_pcca}) {
    SimConfig cfg;
    cfg.kind = kind;
    cfg.width = cfg.height = 160;
    cfg.frames = 12;
    cfg.n_objects = 4;
    cfg.seed = 8;
    const SimResult a = simulate(cfg);
    const SimResult b = simulate(cfg);
    CHECK(a.recording.frames == b.recording.frames);
    CHECK(a.ground_truth == b.ground_truth);
    REQUIRE(a.ground_truth.size() == 4);
    for (const GlobalTrack& t : a.ground_truth) {
      CHECK(t.contiguous());
      CHECK(t.entries.size() == 12);
      for (const auto& [f, e] : t.entries) CHECK_FALSE(e.mask.empty());
    }
    cfg.seed = 9;
    CHECK_FALSE(simulate(cfg).ground_truth == a.ground_truth);
  }
}

TEST_CASE("amoeboid ground truth never overlaps after collisions") {
  SimConfig cfg;
  cfg.kind = SimKind::amoeboids_pcc;
  cfg.render = false;
  cfg.width = cfg.height = 200;
  cfg.n_objects = 10;
  cfg.frames = 60;
  cfg.seed = 2;
  const SimResult r = simulate(cfg);
  std::int64_t overlap = 0;
  for (int t = 0; t < cfg.frames; ++t)
    for (std::size_t i = 0; i < r.ground_truth.size(); ++i)
      for (std::size_t j = i + 1; j < r.ground_truth.size(); ++j)
        overlap += intersection_area(r.ground_truth[i].entries.at(t).mask,
                                     r.ground_truth[j].entries.at(t).mask);
  CHECK(overlap == 0);
}

TEST_CASE("config validation and names") {
  SimConfig c;
  c.arrow_min_diameter = 5;
  c.arrow_max_diameter = 40;
  CHECK_THROWS_AS(c.validate(), Error);
  CHECK(parse_sim_kind("amoeboids-pcca") == SimKind::amoeboids_pcca);
  CHECK(to_string(SimKind::amoeboids_pc) == "amoeboids_pc");
  CHECK_THROWS_AS(parse_sim_kind("cells"), Error);
  SimConfig crowded;
  crowded.width = crowded.height = 40;
  crowded.n_objects = 30;
  crowded.max_spawn_attempts = 50;
  CHECK_THROWS_AS(simulate(crowded), Error);
}
