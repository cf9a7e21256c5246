#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "symtrack/geometry.hpp"
#include "symtrack/random.hpp"

using namespace symtrack;
using fixtures::rect;

namespace {

Image random_bitmap(int w, int h, double density, std::uint64_t seed) {
  Rng rng(seed);
  Image img(w, h);
  for (auto& p : img.pixels) p = rng.bernoulli(density) ? 1 : 0;
  return img;
}

// Dense reference implementations.
std::int64_t dense_count(const Image& a) {
  std::int64_t n = 0;
  for (auto p : a.pixels) n += p != 0;
  return n;
}

double dense_iou(const Image& a, const Image& b) {
  std::int64_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    inter += a.pixels[i] && b.pixels[i];
    uni += a.pixels[i] || b.pixels[i];
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

TEST_CASE("rle encode/decode agrees with the dense bitmap") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Image img = random_bitmap(17 + seed % 5, 11 + seed % 3, 0.1 + 0.015 * seed, seed);
    const Mask m = rle_encode(img);
    Image norm = img;
    for (auto& p : norm.pixels) p = p ? 1 : 0;
    CHECK(rle_decode(m) == norm);
    CHECK(area(m) == dense_count(img));
  }
}

TEST_CASE("iou matches a dense computation") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Image a = random_bitmap(23, 19, 0.3, seed);
    const Image b = random_bitmap(23, 19, 0.4, seed + 1000);
    CHECK(iou(rle_encode(a), rle_encode(b)) == doctest::Approx(dense_iou(a, b)).epsilon(1e-15));
  }
}

TEST_CASE("iou edge cases") {
  const Mask empty(10, 10);
  const Mask a = rect(10, 10, 1, 1, 3, 3);
  CHECK(iou(empty, empty) == 0.0);
  CHECK(iou(a, empty) == 0.0);
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, rect(10, 10, 5, 5, 3, 3)) == 0.0);
  // 3x3 and a 3x3 shifted by one column share 6 pixels out of 12.
  CHECK(iou(a, rect(10, 10, 2, 1, 3, 3)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(iou(a, Mask(11, 10)), Error);
}

TEST_CASE("from_runs canonicalises, from_canonical_runs validates") {
  const Mask m = Mask::from_runs(10, 4, {{1, 5, 2}, {0, 0, 2}, {1, 2, 3}, {0, 1, 3}});
  REQUIRE(m.runs().size() == 2);
  CHECK(m.runs()[0] == Run{0, 0, 4});
  CHECK(m.runs()[1] == Run{1, 2, 5});
  CHECK_THROWS_AS(Mask::from_runs(10, 4, {{4, 0, 1}}), Error);
  CHECK_THROWS_AS(Mask::from_runs(10, 4, {{0, 8, 3}}), Error);
  CHECK(Mask::from_runs(10, 4, {{0, 0, 0}}).empty());
  CHECK_THROWS_AS(Mask::from_canonical_runs(10, 4, {{0, 0, 0}}), Error);
  CHECK_THROWS_AS(Mask::from_canonical_runs(10, 4, {{0, 2, 2}, {0, 4, 1}}), Error);
  CHECK_THROWS_AS(Mask::from_canonical_runs(10, 4, {{1, 0, 1}, {0, 0, 1}}), Error);
  CHECK_NOTHROW(Mask::from_canonical_runs(10, 4, {{0, 2, 2}, {0, 5, 1}}));
}

TEST_CASE("centroid uses x = column, y = row") {
  const Centroid c = centroid(rect(20, 20, 4, 10, 3, 5));
  CHECK(c.x == 5.0);
  CHECK(c.y == 12.0);
  CHECK_THROWS_AS(centroid(Mask(5, 5)), Error);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Image img = random_bitmap(31, 13, 0.25, seed);
    double sx = 0, sy = 0, n = 0;
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x)
        if (img.at(x, y)) sx += x, sy += y, n += 1;
    const Centroid rc = centroid(rle_encode(img));
    CHECK(rc.x == doctest::Approx(sx / n).epsilon(1e-14));
    CHECK(rc.y == doctest::Approx(sy / n).epsilon(1e-14));
  }
}

TEST_CASE("shift translates and clips") {
  const Mask m = rect(10, 10, 2, 2, 3, 3);
  CHECK(shift(m, 3, -1) == rect(10, 10, 5, 1, 3, 3));
  CHECK(shift(shift(m, 2, 2), -2, -2) == m);
  CHECK(area(shift(m, 6, 0)) == 6);
  CHECK(shift(m, 20, 0).empty());
  CHECK(shift(m, 0, -5).empty());
  const Centroid a = centroid(m);
  const Centroid b = centroid(shift(m, -1, 4));
  CHECK(b.x - a.x == -1.0);
  CHECK(b.y - a.y == 4.0);
}

TEST_CASE("bounding box") {
  const BoundingBox b = bounding_box(Mask::from_runs(10, 10, {{2, 3, 2}, {5, 1, 1}}));
  CHECK(b.x0 == 1);
  CHECK(b.x1 == 4);
  CHECK(b.y0 == 2);
  CHECK(b.y1 == 5);
  CHECK(bounding_box(Mask(4, 4)).empty());
}

TEST_CASE("euclidean similarity") {
  const Mask a = rect(200, 200, 0, 0, 2, 2);
  CHECK(euclidean_similarity(a, a, 50.0) == 1.0);
  CHECK(euclidean_similarity(a, shift(a, 30, 40), 50.0) == 0.0);
  CHECK(euclidean_similarity(a, shift(a, 3, 4), 50.0) == doctest::Approx(0.9));
  CHECK(euclidean_similarity(a, shift(a, 100, 0), 50.0) == 0.0);
  CHECK(euclidean_similarity(a, Mask(200, 200), 50.0) == 0.0);
}

TEST_CASE("mask union") {
  const Mask u = mask_union(rect(10, 10, 0, 0, 3, 1), rect(10, 10, 2, 0, 3, 2));
  CHECK(area(u) == 8);
  CHECK(u.runs()[0] == Run{0, 0, 5});
}
