#include "doctest.h"
#include "support.hpp"
#include "symtrack/interpolator.hpp"

using namespace symtrack;
using fixtures::rect;

TEST_CASE("interpolated centroid is the time-weighted mean") {
  GapSpec g;
  g.t_last = 2;
  g.t_next = 6;
  g.c_last = {10.0, 20.0};
  g.c_next = {30.0, 0.0};
  const Centroid c3 = interpolated_centroid(g, 3);
  CHECK(c3.x == doctest::Approx(15.0));
  CHECK(c3.y == doctest::Approx(15.0));
  const Centroid c5 = interpolated_centroid(g, 5);
  CHECK(c5.x == doctest::Approx(25.0));
  CHECK(c5.y == doctest::Approx(5.0));
}

TEST_CASE("interpolate_frame translates the last mask") {
  GapSpec g;
  g.t_last = 0;
  g.t_next = 2;
  g.s_last = rect(40, 40, 5, 5, 4, 4);
  g.c_last = centroid(g.s_last);
  g.c_next = centroid(rect(40, 40, 11, 9, 4, 4));
  CHECK(interpolate_frame(g, 1) == rect(40, 40, 8, 7, 4, 4));
  CHECK_THROWS_AS(interpolate_frame(g, 0), Error);
  CHECK_THROWS_AS(interpolate_frame(g, 2), Error);

  // Half-pixel positions round away from zero.
  g.c_next = centroid(rect(40, 40, 6, 4, 4, 4));
  CHECK(interpolate_frame(g, 1) == rect(40, 40, 6, 4, 4, 4));
}

TEST_CASE("fill_all_gaps") {
  const Mask a = rect(50, 50, 0, 0, 3, 3);
  GlobalTrack t = fixtures::track_from(4, 0, {a});
  t.entries.emplace(4, TrackEntry{rect(50, 50, 8, 4, 3, 3), Provenance::detected, 9});
  t.entries.emplace(5, TrackEntry{rect(50, 50, 10, 5, 3, 3), Provenance::detected, 10});

  const GlobalTrack filled = fill_all_gaps(t);
  CHECK(filled.id == 4);
  CHECK(filled.contiguous());
  REQUIRE(filled.entries.size() == 6);
  for (int f = 1; f <= 3; ++f) {
    const TrackEntry& e = filled.entries.at(f);
    CHECK(e.provenance == Provenance::interpolated);
    CHECK_FALSE(e.detection.has_value());
    CHECK(e.mask == rect(50, 50, 2 * f, f, 3, 3));
  }
  CHECK(filled.entries.at(4) == t.entries.at(4));
  CHECK(fill_all_gaps(filled) == filled);

  const GlobalTrack single = fixtures::track_from(0, 3, {a});
  CHECK(fill_all_gaps(single) == single);
}
