#include "doctest.h"
#include "support.hpp"
#include "symtrack/linker.hpp"
#include "symtrack/oracle.hpp"

using namespace symtrack;
using fixtures::rect;
using fixtures::track_from;

namespace {

// n static, non-overlapping squares present on every frame.
std::vector<GlobalTrack> grid_tracks(int n, int frames) {
  std::vector<GlobalTrack> out;
  DetectionId next = 0;
  for (int i = 0; i < n; ++i) {
    std::vector<Mask> masks;
    for (int t = 0; t < frames; ++t) masks.push_back(rect(200, 200, 10 * (i % 18) + t % 2, 10 * (i / 18), 6, 6));
    out.push_back(track_from(i, 0, masks, next));
    next += frames;
  }
  return out;
}

}  // namespace

TEST_CASE("dropout specs parse") {
  CHECK(DropoutSpec::parse("none").kind == DropoutKind::none);
  const DropoutSpec u = DropoutSpec::parse("uniform:1/5");
  CHECK(u.kind == DropoutKind::uniform);
  CHECK(u.rate == 0.2);
  const DropoutSpec b = DropoutSpec::parse("box:0.2:7");
  CHECK(b.kind == DropoutKind::box);
  CHECK(b.block_len == 7);
  CHECK(DropoutSpec::parse("box:1/15").block_len == 7);
  CHECK(DropoutSpec::parse(b.to_string()).rate == b.rate);
  for (const char* bad : {"", "uniform", "uniform:x", "uniform:1/0", "box:0.2:0", "box:0.2:7:1",
                          "uniform:1.5", "gauss:0.1"})
    CHECK_THROWS_AS(DropoutSpec::parse(bad), Error);
}

TEST_CASE("no dropout keeps every instance in frame order") {
  const auto gt = grid_tracks(3, 5);
  const auto dets = detections_from_gt(gt, DropoutSpec{}, 1);
  REQUIRE(dets.size() == 15);
  for (std::size_t i = 1; i < dets.size(); ++i) CHECK(dets[i - 1].frame <= dets[i].frame);
}

TEST_CASE("uniform dropout removes the requested fraction") {
  const auto gt = grid_tracks(100, 100);
  const auto dets = detections_from_gt(gt, DropoutSpec::parse("uniform:1/5"), 42);
  const double removed = 1.0 - static_cast<double>(dets.size()) / 1e4;
  // Binomial sd is 0.004; 0.01 is 2.5 sd.
  CHECK(removed == doctest::Approx(0.2).epsilon(0.05));
  CHECK(std::abs(removed - 0.2) <= 0.01);
}

TEST_CASE("box dropout removes runs no longer than the block") {
  const auto gt = grid_tracks(40, 100);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto dets = detections_from_gt(gt, DropoutSpec::parse("box:1/5:7"), seed);
    std::vector<std::vector<bool>> alive(40, std::vector<bool>(100, false));
    for (const Detection& d : dets) alive[static_cast<std::size_t>(d.id / 100)][static_cast<std::size_t>(d.frame)] = true;
    std::size_t removed = 0;
    for (const auto& row : alive) {
      int run = 0;
      for (bool a : row) {
        run = a ? 0 : run + 1;
        CHECK(run <= 7);
        removed += !a;
      }
    }
    const double frac = static_cast<double>(removed) / 4000.0;
    CHECK(frac >= 0.18);
    CHECK(frac <= 0.22);
  }
}

TEST_CASE("dropout is deterministic per seed") {
  const auto gt = grid_tracks(10, 30);
  const auto spec = DropoutSpec::parse("box:1/5:7");
  CHECK(detections_from_gt(gt, spec, 9) == detections_from_gt(gt, spec, 9));
  CHECK_FALSE(detections_from_gt(gt, spec, 9) == detections_from_gt(gt, spec, 10));
}

TEST_CASE("zero perturbation gives exact windows") {
  const auto gt = grid_tracks(4, 12);
  const auto dets = detections_from_gt(gt, DropoutSpec{}, 0);
  const auto local = local_tracks_from_gt(dets, gt, 3, 12, PerturbConfig{}, 0);
  REQUIRE(local.size() == dets.size());
  for (const LocalTrack& lt : local) {
    const GlobalTrack& g = gt[static_cast<std::size_t>(lt.anchor().id / 12)];
    for (const WindowSlot& s : window_frames(lt.frame(), 3, 12))
      CHECK(lt.at_offset(s.offset) == g.entries.at(s.frame).mask);
  }
  LinkerConfig cfg;
  cfg.tr = 3;
  const auto tracks = link_recording(local, cfg);
  CHECK(tracks.size() == 4);
}

TEST_CASE("dropped anchors leave neighbouring windows intact") {
  const auto gt = grid_tracks(2, 10);
  const auto all = detections_from_gt(gt, DropoutSpec{}, 0);
  std::vector<Detection> some;
  for (const Detection& d : all)
    if (d.frame != 5) some.push_back(d);
  const auto local = local_tracks_from_gt(some, gt, 2, 10, PerturbConfig{}, 0);
  const LocalTrack& lt4 = local[8];
  REQUIRE(lt4.frame() == 4);
  CHECK(lt4.at_offset(1) == gt[0].entries.at(5).mask);
}

TEST_CASE("missing the outermost offsets zeroes the 2TR similarity") {
  const auto gt = grid_tracks(1, 20);
  const auto dets = detections_from_gt(gt, DropoutSpec{}, 0);
  PerturbConfig p;
  p.window_miss_p = 1.0;
  p.miss_offsets = {3};
  const auto local = local_tracks_from_gt(dets, gt, 3, 20, p, 5);
  const LocalTrack& a = local[5];
  const LocalTrack& b = local[11];
  CHECK(a.at_offset(-3).empty());
  CHECK(a.at_offset(3).empty());
  CHECK_FALSE(a.at_offset(2).empty());
  CHECK(overlap_similarity(a, b, 6, Metric::mean_iou) == 0.0);
  CHECK(overlap_similarity(a, local[6], 1, Metric::mean_iou) > 0.0);
}

TEST_CASE("jitter keeps pair IOU between the shifted bound and 1") {
  std::vector<Mask> masks(30, rect(100, 100, 40, 40, 12, 12));
  const std::vector<GlobalTrack> gt{track_from(0, 0, masks)};
  const auto dets = detections_from_gt(gt, DropoutSpec{}, 0);
  PerturbConfig p;
  p.jitter_px = 2;
  const auto local = local_tracks_from_gt(dets, gt, 2, 30, p, 11);
  const double bound = iou(masks[0], shift(masks[0], 4, 4));
  for (std::size_t i = 3; i + 3 < local.size(); ++i) {
    const LocalTrack& a = local[i];
    const LocalTrack& b = local[i + 1];
    const auto pairs = overlap(a, b, 1);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double v = iou(*pairs[k].first, *pairs[k].second);
      CHECK(v >= bound);
    }
    // Pairs that involve an exact anchor differ from a jittered entry.
    CHECK(iou(a.at_offset(1), b.at_offset(0)) < 1.0);
    CHECK(iou(a.at_offset(0), b.at_offset(-1)) < 1.0);
  }
}

TEST_CASE("local tracks reject foreign detections and are deterministic") {
  const auto gt = grid_tracks(2, 6);
  std::vector<Detection> bad{Detection{0, rect(200, 200, 0, 0, 2, 2), 999}};
  CHECK_THROWS_AS(local_tracks_from_gt(bad, gt, 1, 6, PerturbConfig{}, 0), Error);

  const auto dets = detections_from_gt(gt, DropoutSpec{}, 0);
  PerturbConfig p;
  p.window_miss_p = 0.3;
  p.jitter_px = 1;
  p.boundary_erode_dilate = 1;
  CHECK(local_tracks_from_gt(dets, gt, 2, 6, p, 3) == local_tracks_from_gt(dets, gt, 2, 6, p, 3));
}

TEST_CASE("disrupted tracks keep ids and surviving entries") {
  const auto gt = grid_tracks(3, 4);
  auto dets = detections_from_gt(gt, DropoutSpec{}, 0);
  std::erase_if(dets, [](const Detection& d) { return d.id < 4 || d.id == 9; });
  const auto dis = disrupted_tracks(gt, dets);
  REQUIRE(dis.size() == 2);
  CHECK(dis[0].id == 1);
  CHECK(dis[1].id == 2);
  CHECK(dis[1].entries.size() == 3);
}
