#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtrack {

/// Thrown for malformed input: bad dimensions, out-of-range runs, schema errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One horizontal run of set pixels: columns [start, start + length) on `row`.
struct Run {
  std::int32_t row = 0;
  std::int32_t start = 0;
  std::int32_t length = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

/// Dense 8-bit raster, row-major. Used both for binary bitmaps (nonzero = set)
/// and for grayscale frames.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  Image() = default;
  Image(int w, int h, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const Image&, const Image&) = default;
};

/// Sub-pixel centroid. x is the column, y is the row.
struct Centroid {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Centroid&, const Centroid&) = default;
};

/// Inclusive pixel bounds.
struct BoundingBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = -1;
  int y1 = -1;

  bool empty() const { return x1 < x0 || y1 < y0; }
};

/// Binary mask over a width x height grid stored as canonical run-length
/// triples: sorted by (row, start), no overlaps, touching runs merged.
/// Immutable once built.
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height);

  /// Builds a canonical mask from arbitrary runs. Overlapping or touching runs
  /// are merged; zero-length runs are dropped. Throws Error when a run leaves
  /// the grid.
  static Mask from_runs(int width, int height, std::vector<Run> runs);

  /// Builds from runs that must already be canonical; throws if they are not.
  static Mask from_canonical_runs(int width, int height, std::vector<Run> runs);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const Run> runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Run> runs_;
};

std::int64_t area(const Mask& m);

/// |a & b|. Throws Error on dimension mismatch.
std::int64_t intersection_area(const Mask& a, const Mask& b);

/// Intersection over union; 0 when both masks are empty.
double iou(const Mask& a, const Mask& b);

/// Mean coordinate of set pixels. Throws Error for an empty mask.
Centroid centroid(const Mask& m);

/// Translates every pixel by (dx, dy); pixels leaving the grid are dropped.
Mask shift(const Mask& m, int dx, int dy);

BoundingBox bounding_box(const Mask& m);

Mask rle_encode(const Image& bitmap);
Image rle_decode(const Mask& m);

/// max(0, 1 - |c(a) - c(b)| / d_max); 0 if either mask is empty.
double euclidean_similarity(const Mask& a, const Mask& b, double d_max);

/// Set-union of two masks on the same grid.
Mask mask_union(const Mask& a, const Mask& b);

}  // namespace symtrack
