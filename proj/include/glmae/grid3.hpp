#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace glmae {

// Axis order everywhere is (h, w, d) with h varying slowest in memory:
// linear index = (h * W + w) * D + d.
struct Shape3 {
  int h = 0, w = 0, d = 0;

  int64_t count() const {
    return static_cast<int64_t>(h) * w * d;
  }
  int operator[](int i) const { return i == 0 ? h : (i == 1 ? w : d); }
  int& operator[](int i) { return i == 0 ? h : (i == 1 ? w : d); }
  bool operator==(const Shape3&) const = default;

  int64_t index(int ih, int iw, int id) const {
    return (static_cast<int64_t>(ih) * w + iw) * d + id;
  }
  std::string str() const;
};

// Precomputed trilinear resampling map from a source grid to a target grid.
// Each target cell is a convex combination of up to 8 source cells. Sampling
// uses half-voxel centers with edge clamping, so resizing a grid onto itself
// is the identity and outputs stay inside the source value range.
struct TrilinearMap {
  Shape3 src, dst;
  std::vector<std::array<int64_t, 8>> corner;  // source linear indices
  std::vector<std::array<double, 8>> weight;   // convex weights, sum 1

  static TrilinearMap make(Shape3 src, Shape3 dst);
};

// Trilinear resize of a scalar grid.
std::vector<float> resize_trilinear(const std::vector<float>& src, Shape3 src_shape,
                                    Shape3 dst_shape);

}  // namespace glmae
