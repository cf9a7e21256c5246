#pragma once

#include <span>
#include <utility>
#include <vector>

#include "symtrack/geometry.hpp"

namespace symtrack {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Fills a closed polygon (even-odd rule) sampling pixel (x, y) at integer
/// coordinates. Vertices are relative to the integer origin, so translating
/// the origin translates the raster exactly. Pixels off the grid are clipped.
Mask rasterize_polygon(std::span<const Point2> vertices, int origin_x, int origin_y, int width,
                       int height);

/// Shoelace area of a simple polygon.
double polygon_area(std::span<const Point2> vertices);

/// Float image, row-major.
struct FloatImage {
  int width = 0;
  int height = 0;
  std::vector<float> data;

  FloatImage() = default;
  FloatImage(int w, int h, float fill = 0.0f)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}
  float& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  float at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Canny edges of a binary mask: Sobel gradient, non-maximum suppression and
/// hysteresis with thresholds given as fractions of the peak gradient.
/// Returns edge pixel coordinates on the mask's grid.
std::vector<std::pair<int, int>> canny_edges(const Mask& mask, double low = 0.1,
                                             double high = 0.3);

/// Sigma used for a Gaussian kernel of the given odd size when none is
/// specified: 0.3 * ((ksize - 1) / 2 - 1) + 0.8.
double sigma_for_kernel(int ksize);

/// Normalised 1-D Gaussian taps.
std::vector<double> gaussian_kernel(int ksize, double sigma);

/// Separable Gaussian blur, reflect-101 borders.
FloatImage gaussian_blur(const FloatImage& img, int ksize, double sigma);

/// Integer Bresenham line (inclusive endpoints), clipped to the grid.
std::vector<std::pair<int, int>> line_pixels(int x0, int y0, int x1, int y1, int width,
                                             int height);

/// Binary dilation (radius > 0) or erosion (radius < 0) with a 4-connected
/// structuring element applied |radius| times.
Mask morph(const Mask& m, int radius);

}  // namespace symtrack
