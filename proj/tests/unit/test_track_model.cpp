#include "doctest.h"
#include "support.hpp"
#include "symtrack/track_model.hpp"

using namespace symtrack;
using fixtures::rect;

TEST_CASE("window frames clamp into the recording") {
  const auto inner = window_frames(5, 2, 10);
  REQUIRE(inner.size() == 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(inner[k].offset == k - 2);
    CHECK(inner[k].frame == 3 + k);
    CHECK_FALSE(inner[k].padding);
  }

  const auto head = window_frames(0, 3, 10);
  CHECK(head[0].frame == 0);
  CHECK(head[0].padding);
  CHECK(head[2].padding);
  CHECK_FALSE(head[3].padding);
  CHECK(head[6].frame == 3);

  const auto tail = window_frames(9, 2, 10);
  CHECK(tail[3].frame == 9);
  CHECK(tail[3].padding);
  CHECK(tail[4].frame == 9);

  const auto tiny = window_frames(0, 4, 1);
  for (const auto& s : tiny) CHECK(s.frame == 0);

  CHECK_THROWS_AS(window_frames(0, 0, 10), Error);
  CHECK_THROWS_AS(window_frames(0, 1, 0), Error);
}

TEST_CASE("local track construction validates its window") {
  const Mask a = rect(8, 8, 1, 1, 2, 2);
  const Mask b = rect(8, 8, 4, 4, 2, 2);
  CHECK_NOTHROW(LocalTrack(Detection{3, a, 0}, 1, {b, a, b}));
  CHECK_THROWS_AS(LocalTrack(Detection{3, a, 0}, 1, {a, a}), Error);
  CHECK_THROWS_AS(LocalTrack(Detection{3, a, 0}, 1, {a, b, a}), Error);
  CHECK_THROWS_AS(LocalTrack(Detection{3, a, 0}, 1, {a, a, Mask(9, 8)}), Error);
  CHECK_THROWS_AS(LocalTrack(Detection{3, Mask(8, 8), 0}, 1, {a, Mask(8, 8), a}), Error);

  const LocalTrack lt(Detection{3, a, 0}, 1, {b, a, Mask(8, 8)});
  CHECK(lt.at_offset(-1) == b);
  CHECK(lt.at_offset(1).empty());
  CHECK_THROWS_AS(lt.at_offset(2), Error);
}

TEST_CASE("overlap yields 2*tr+1-dt aligned pairs") {
  const int tr = 3;
  auto window = [](int base) {
    std::vector<Mask> w;
    for (int k = 0; k < 7; ++k) w.push_back(rect(64, 8, base + k, 0, 1, 1));
    return w;
  };
  // Entry at offset k of a track anchored at t sits at column t + k (+ tr).
  const LocalTrack early(Detection{10, rect(64, 8, 10 + 3, 0, 1, 1), 0}, tr, window(10));
  for (int dt = 1; dt <= 2 * tr; ++dt) {
    const LocalTrack late(Detection{10 + dt, rect(64, 8, 10 + dt + 3, 0, 1, 1), 1}, tr,
                          window(10 + dt));
    const auto pairs = overlap(early, late, dt);
    CHECK(pairs.size() == static_cast<std::size_t>(2 * tr + 1 - dt));
    for (const auto& [p, q] : pairs) CHECK(*p == *q);
  }
  CHECK_THROWS_AS(overlap(early, early, 0), Error);
  CHECK_THROWS_AS(overlap(early, early, 7), Error);
}

TEST_CASE("global track contiguity and disjointness") {
  const Mask m = rect(4, 4, 0, 0, 1, 1);
  GlobalTrack t = fixtures::track_from(0, 2, {m, m, m});
  CHECK(t.contiguous());
  CHECK(t.first_frame() == 2);
  CHECK(t.last_frame() == 4);
  t.entries.erase(3);
  CHECK_FALSE(t.contiguous());

  const GlobalTrack a = fixtures::track_from(0, 0, {m, m}, 0);
  const GlobalTrack b = fixtures::track_from(1, 0, {m, m}, 2);
  const GlobalTrack dup_id = fixtures::track_from(0, 5, {m}, 10);
  const GlobalTrack dup_det = fixtures::track_from(2, 5, {m}, 1);
  CHECK_NOTHROW(check_tracks_disjoint(std::vector{a, b}));
  CHECK_THROWS_AS(check_tracks_disjoint(std::vector{a, dup_id}), Error);
  CHECK_THROWS_AS(check_tracks_disjoint(std::vector{a, dup_det}), Error);
}
