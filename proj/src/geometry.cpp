#include "symtrack/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace symtrack {

Image::Image(int w, int h, std::uint8_t fill) : width(w), height(h) {
  if (w <= 0 || h <= 0) throw Error("image dimensions must be positive");
  pixels.assign(static_cast<std::size_t>(w) * h, fill);
}

Mask::Mask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw Error("mask dimensions must be positive");
}

namespace {

void check_in_grid(int width, int height, const Run& r) {
  if (r.length < 0 || r.row < 0 || r.row >= height || r.start < 0 ||
      static_cast<std::int64_t>(r.start) + r.length > width) {
    std::ostringstream os;
    os << "run (" << r.row << ", " << r.start << ", " << r.length << ") outside " << width << "x"
       << height << " grid";
    throw Error(os.str());
  }
}

void check_same_grid(const Mask& a, const Mask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    std::ostringstream os;
    os << "mask dimension mismatch: " << a.width() << "x" << a.height() << " vs " << b.width()
       << "x" << b.height();
    throw Error(os.str());
  }
}

// Per-row overlap of two canonical run lists, linear in the number of runs.
template <typename OnOverlap>
void for_each_overlap(std::span<const Run> a, std::span<const Run> b, OnOverlap&& fn) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Run& ra = a[i];
    const Run& rb = b[j];
    if (ra.row != rb.row) {
      if (ra.row < rb.row) ++i; else ++j;
      continue;
    }
    const std::int32_t lo = std::max(ra.start, rb.start);
    const std::int32_t hi = std::min(ra.start + ra.length, rb.start + rb.length);
    if (hi > lo) fn(ra.row, lo, hi - lo);
    if (ra.start + ra.length < rb.start + rb.length) ++i; else ++j;
  }
}

}  // namespace

Mask Mask::from_runs(int width, int height, std::vector<Run> runs) {
  Mask m(width, height);
  for (const Run& r : runs) check_in_grid(width, height, r);
  std::erase_if(runs, [](const Run& r) { return r.length == 0; });
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) {
    return a.row != b.row ? a.row < b.row : a.start < b.start;
  });
  for (const Run& r : runs) {
    if (!m.runs_.empty()) {
      Run& last = m.runs_.back();
      if (last.row == r.row && r.start <= last.start + last.length) {
        last.length = std::max(last.start + last.length, r.start + r.length) - last.start;
        continue;
      }
    }
    m.runs_.push_back(r);
  }
  return m;
}

Mask Mask::from_canonical_runs(int width, int height, std::vector<Run> runs) {
  Mask m(width, height);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Run& r = runs[k];
    check_in_grid(width, height, r);
    if (r.length == 0) throw Error("zero-length run in canonical mask");
    if (k > 0) {
      const Run& p = runs[k - 1];
      if (p.row > r.row || (p.row == r.row && p.start + p.length >= r.start))
        throw Error("runs are not canonical (unsorted, overlapping or unmerged)");
    }
  }
  m.runs_ = std::move(runs);
  return m;
}

std::int64_t area(const Mask& m) {
  std::int64_t total = 0;
  for (const Run& r : m.runs()) total += r.length;
  return total;
}

std::int64_t intersection_area(const Mask& a, const Mask& b) {
  check_same_grid(a, b);
  std::int64_t total = 0;
  for_each_overlap(a.runs(), b.runs(), [&](int, int, int len) { total += len; });
  return total;
}

double iou(const Mask& a, const Mask& b) {
  const std::int64_t inter = intersection_area(a, b);
  const std::int64_t uni = area(a) + area(b) - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

Centroid centroid(const Mask& m) {
  // Integer moment sums are exact; the only rounding is the final division.
  std::int64_t n = 0;
  std::int64_t sx = 0;
  std::int64_t sy = 0;
  for (const Run& r : m.runs()) {
    const std::int64_t len = r.length;
    n += len;
    sx += len * r.start + len * (len - 1) / 2;
    sy += len * r.row;
  }
  if (n == 0) throw Error("centroid of an empty mask is undefined");
  return {static_cast<double>(sx) / static_cast<double>(n),
          static_cast<double>(sy) / static_cast<double>(n)};
}

Mask shift(const Mask& m, int dx, int dy) {
  std::vector<Run> out;
  out.reserve(m.runs().size());
  for (const Run& r : m.runs()) {
    const std::int64_t row = static_cast<std::int64_t>(r.row) + dy;
    if (row < 0 || row >= m.height()) continue;
    std::int64_t lo = static_cast<std::int64_t>(r.start) + dx;
    std::int64_t hi = lo + r.length;
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, m.width());
    if (hi <= lo) continue;
    out.push_back({static_cast<std::int32_t>(row), static_cast<std::int32_t>(lo),
                   static_cast<std::int32_t>(hi - lo)});
  }
  // Translation preserves order and non-adjacency; clipping only shortens runs.
  return Mask::from_canonical_runs(m.width(), m.height(), std::move(out));
}

BoundingBox bounding_box(const Mask& m) {
  BoundingBox box{m.width(), m.height(), -1, -1};
  for (const Run& r : m.runs()) {
    box.x0 = std::min(box.x0, static_cast<int>(r.start));
    box.x1 = std::max(box.x1, static_cast<int>(r.start + r.length - 1));
    box.y0 = std::min(box.y0, static_cast<int>(r.row));
    box.y1 = std::max(box.y1, static_cast<int>(r.row));
  }
  if (m.empty()) return BoundingBox{};
  return box;
}

Mask rle_encode(const Image& bitmap) {
  if (bitmap.width <= 0 || bitmap.height <= 0) throw Error("bitmap dimensions must be positive");
  std::vector<Run> runs;
  for (int y = 0; y < bitmap.height; ++y) {
    int x = 0;
    while (x < bitmap.width) {
      if (!bitmap.at(x, y)) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < bitmap.width && bitmap.at(x, y)) ++x;
      runs.push_back({y, start, x - start});
    }
  }
  return Mask::from_canonical_runs(bitmap.width, bitmap.height, std::move(runs));
}

Image rle_decode(const Mask& m) {
  Image img(m.width(), m.height(), 0);
  for (const Run& r : m.runs())
    std::fill_n(img.pixels.begin() + static_cast<std::ptrdiff_t>(r.row) * m.width() + r.start,
                r.length, std::uint8_t{1});
  return img;
}

double euclidean_similarity(const Mask& a, const Mask& b, double d_max) {
  check_same_grid(a, b);
  if (!(d_max > 0.0)) throw Error("d_max must be positive");
  if (a.empty() || b.empty()) return 0.0;
  const Centroid ca = centroid(a);
  const Centroid cb = centroid(b);
  const double d = std::hypot(ca.x - cb.x, ca.y - cb.y);
  return std::max(0.0, 1.0 - d / d_max);
}

Mask mask_union(const Mask& a, const Mask& b) {
  check_same_grid(a, b);
  std::vector<Run> runs(a.runs().begin(), a.runs().end());
  runs.insert(runs.end(), b.runs().begin(), b.runs().end());
  return Mask::from_runs(a.width(), a.height(), std::move(runs));
}

}  // namespace symtrack
