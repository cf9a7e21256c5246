#include "symtrack/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace symtrack {

Mask rasterize_polygon(std::span<const Point2> vertices, int origin_x, int origin_y, int width,
                       int height) {
  Mask empty(width, height);
  const std::size_t n = vertices.size();
  if (n < 3) return empty;
  double ymin = vertices[0].y;
  double ymax = vertices[0].y;
  for (const Point2& p : vertices) {
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  std::vector<Run> runs;
  std::vector<double> xs;
  const int row_lo = std::max(static_cast<int>(std::ceil(ymin)), -origin_y);
  const int row_hi = std::min(static_cast<int>(std::floor(ymax)), height - 1 - origin_y);
  for (int ly = row_lo; ly <= row_hi; ++ly) {
    const double y = ly;
    xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = vertices[i];
      const Point2& b = vertices[(i + 1) % n];
      // Half-open in y so shared vertices are counted once.
      if ((a.y <= y && y < b.y) || (b.y <= y && y < a.y))
        xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // Pixels x with xa <= x < xb.
      const long lo = static_cast<long>(std::ceil(xs[k])) + origin_x;
      const long hi = static_cast<long>(std::ceil(xs[k + 1])) + origin_x;
      const long clo = std::max(lo, 0L);
      const long chi = std::min(hi, static_cast<long>(width));
      if (chi > clo)
        runs.push_back({ly + origin_y, static_cast<std::int32_t>(clo),
                        static_cast<std::int32_t>(chi - clo)});
    }
  }
  return Mask::from_runs(width, height, std::move(runs));
}

double polygon_area(std::span<const Point2> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    s += a.x * b.y - b.x * a.y;
  }
  return std::abs(s) * 0.5;
}

namespace {

// Binary crop of a mask with `pad` pixels of zero border around its box.
struct Crop {
  int x0 = 0;
  int y0 = 0;
  int w = 0;
  int h = 0;
  std::vector<std::uint8_t> px;

  std::uint8_t get(int x, int y) const {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0;
    return px[static_cast<std::size_t>(y) * w + x];
  }
};

Crop crop_of(const Mask& m, int pad) {
  const BoundingBox box = bounding_box(m);
  Crop c;
  c.x0 = box.x0 - pad;
  c.y0 = box.y0 - pad;
  c.w = box.x1 - box.x0 + 1 + 2 * pad;
  c.h = box.y1 - box.y0 + 1 + 2 * pad;
  c.px.assign(static_cast<std::size_t>(c.w) * c.h, 0);
  for (const Run& r : m.runs())
    std::fill_n(c.px.begin() + static_cast<std::ptrdiff_t>(r.row - c.y0) * c.w + (r.start - c.x0),
                r.length, std::uint8_t{1});
  return c;
}

}  // namespace

std::vector<std::pair<int, int>> canny_edges(const Mask& mask, double low, double high) {
  std::vector<std::pair<int, int>> edges;
  if (mask.empty()) return edges;
  const Crop c = crop_of(mask, 2);
  const int w = c.w;
  const int h = c.h;
  std::vector<double> mag(static_cast<std::size_t>(w) * h, 0.0);
  std::vector<double> gx(mag.size(), 0.0);
  std::vector<double> gy(mag.size(), 0.0);
  // Pixels outside the image read as background; the crop border covers that.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto p = [&](int dx, int dy) { return static_cast<double>(c.get(x + dx, y + dy)); };
      const double sx = (p(1, -1) + 2 * p(1, 0) + p(1, 1)) - (p(-1, -1) + 2 * p(-1, 0) + p(-1, 1));
      const double sy = (p(-1, 1) + 2 * p(0, 1) + p(1, 1)) - (p(-1, -1) + 2 * p(0, -1) + p(1, -1));
      const std::size_t k = static_cast<std::size_t>(y) * w + x;
      gx[k] = sx;
      gy[k] = sy;
      mag[k] = std::hypot(sx, sy);
    }
  }
  const double peak = *std::max_element(mag.begin(), mag.end());
  if (peak <= 0.0) return edges;
  auto m_at = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return mag[static_cast<std::size_t>(y) * w + x];
  };
  // 0 = none, 1 = weak, 2 = strong.
  std::vector<std::uint8_t> cls(mag.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t k = static_cast<std::size_t>(y) * w + x;
      const double g = mag[k];
      if (g <= 0.0) continue;
      double angle = std::atan2(gy[k], gx[k]) * 180.0 / 3.14159265358979323846;
      if (angle < 0) angle += 180.0;
      int dx = 0;
      int dy = 0;
      if (angle < 22.5 || angle >= 157.5) {
        dx = 1;
      } else if (angle < 67.5) {
        dx = 1;
        dy = 1;
      } else if (angle < 112.5) {
        dy = 1;
      } else {
        dx = -1;
        dy = 1;
      }
      // Ties go to the first pixel along the gradient direction.
      if (g < m_at(x + dx, y + dy) || g <= m_at(x - dx, y - dy)) continue;
      if (g >= high * peak) cls[k] = 2;
      else if (g >= low * peak) cls[k] = 1;
    }
  }
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < cls.size(); ++k)
    if (cls[k] == 2) queue.push_back(k);
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    const int x = static_cast<int>(k % static_cast<std::size_t>(w));
    const int y = static_cast<int>(k / static_cast<std::size_t>(w));
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t nk = static_cast<std::size_t>(ny) * w + nx;
        if (cls[nk] == 1) {
          cls[nk] = 2;
          queue.push_back(nk);
        }
      }
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (cls[static_cast<std::size_t>(y) * w + x] != 2) continue;
      const int ax = x + c.x0;
      const int ay = y + c.y0;
      if (ax >= 0 && ay >= 0 && ax < mask.width() && ay < mask.height()) edges.emplace_back(ax, ay);
    }
  }
  return edges;
}

double sigma_for_kernel(int ksize) { return 0.3 * ((ksize - 1) * 0.5 - 1.0) + 0.8; }

std::vector<double> gaussian_kernel(int ksize, double sigma) {
  if (ksize < 1 || ksize % 2 == 0) throw Error("gaussian kernel size must be odd and positive");
  if (!(sigma > 0.0)) throw Error("gaussian sigma must be positive");
  std::vector<double> k(static_cast<std::size_t>(ksize));
  const int r = ksize / 2;
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[static_cast<std::size_t>(i + r)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

int reflect101(int i, int n) {
  if (n == 1) return 0;
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * n - 2 - i;
  }
  return i;
}

}  // namespace

FloatImage gaussian_blur(const FloatImage& img, int ksize, double sigma) {
  const std::vector<double> k = gaussian_kernel(ksize, sigma);
  const int r = ksize / 2;
  FloatImage tmp(img.width, img.height);
  FloatImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i)
        s += k[static_cast<std::size_t>(i + r)] * img.at(reflect101(x + i, img.width), y);
      tmp.at(x, y) = static_cast<float>(s);
    }
  }
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double s = 0.0;
      for (int i = -r; i <= r; ++i)
        s += k[static_cast<std::size_t>(i + r)] * tmp.at(x, reflect101(y + i, img.height));
      out.at(x, y) = static_cast<float>(s);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> line_pixels(int x0, int y0, int x1, int y1, int width,
                                             int height) {
  std::vector<std::pair<int, int>> px;
  const int dx = std::abs(x1 - x0);
  const int sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0);
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  for (;;) {
    if (x0 >= 0 && y0 >= 0 && x0 < width && y0 < height) px.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return px;
}

Mask morph(const Mask& m, int radius) {
  if (radius == 0 || m.empty()) return m;
  const int steps = std::abs(radius);
  Crop c = crop_of(m, steps + 1);
  for (int s = 0; s < steps; ++s) {
    std::vector<std::uint8_t> next = c.px;
    for (int y = 0; y < c.h; ++y) {
      for (int x = 0; x < c.w; ++x) {
        const std::uint8_t n4[4] = {c.get(x - 1, y), c.get(x + 1, y), c.get(x, y - 1),
                                    c.get(x, y + 1)};
        std::uint8_t v = c.get(x, y);
        if (radius > 0) {
          for (std::uint8_t q : n4) v |= q;
        } else {
          for (std::uint8_t q : n4) v &= q;
        }
        next[static_cast<std::size_t>(y) * c.w + x] = v;
      }
    }
    c.px = std::move(next);
  }
  std::vector<Run> runs;
  for (int y = 0; y < c.h; ++y) {
    const int gy = y + c.y0;
    if (gy < 0 || gy >= m.height()) continue;
    int x = 0;
    while (x < c.w) {
      if (!c.get(x, y)) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < c.w && c.get(x, y)) ++x;
      const int lo = std::max(start + c.x0, 0);
      const int hi = std::min(x + c.x0, m.width());
      if (hi > lo) runs.push_back({gy, lo, hi - lo});
    }
  }
  return Mask::from_runs(m.width(), m.height(), std::move(runs));
}

}  // namespace symtrack
