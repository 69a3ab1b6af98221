#include "glmae/grid3.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "glmae/errors.hpp"

namespace glmae {

std::string Shape3::str() const {
  std::ostringstream os;
  os << h << 'x' << w << 'x' << d;
  return os.str();
}

namespace {

struct AxisSample {
  int lo, hi;
  double t;  // weight of hi
};

AxisSample sample_axis(int out_i, int src_n, int dst_n) {
  // Half-voxel centers: map output center back to source coordinates, then
  // clamp so border cells extend outward.
  double coord = (out_i + 0.5) * static_cast<double>(src_n) / dst_n - 0.5;
  coord = std::clamp(coord, 0.0, static_cast<double>(src_n - 1));
  int lo = static_cast<int>(std::floor(coord));
  int hi = std::min(lo + 1, src_n - 1);
  return {lo, hi, coord - lo};
}

}  // namespace

TrilinearMap TrilinearMap::make(Shape3 src, Shape3 dst) {
  if (src.count() <= 0) throw DegenerateInputError("trilinear source grid is empty");
  if (dst.h < 1 || dst.w < 1 || dst.d < 1)
    throw DegenerateInputError("trilinear target grid has a zero axis: " + dst.str());

  TrilinearMap map;
  map.src = src;
  map.dst = dst;
  map.corner.resize(static_cast<size_t>(dst.count()));
  map.weight.resize(static_cast<size_t>(dst.count()));

  size_t out = 0;
  for (int i = 0; i < dst.h; ++i) {
    AxisSample ah = sample_axis(i, src.h, dst.h);
    for (int j = 0; j < dst.w; ++j) {
      AxisSample aw = sample_axis(j, src.w, dst.w);
      for (int k = 0; k < dst.d; ++k, ++out) {
        AxisSample ad = sample_axis(k, src.d, dst.d);
        auto& c = map.corner[out];
        auto& wt = map.weight[out];
        int slot = 0;
        for (int bh = 0; bh < 2; ++bh) {
          int ih = bh ? ah.hi : ah.lo;
          double wh = bh ? ah.t : 1.0 - ah.t;
          for (int bw = 0; bw < 2; ++bw) {
            int iw = bw ? aw.hi : aw.lo;
            double ww = bw ? aw.t : 1.0 - aw.t;
            for (int bd = 0; bd < 2; ++bd, ++slot) {
              int id = bd ? ad.hi : ad.lo;
              double wd = bd ? ad.t : 1.0 - ad.t;
              c[slot] = src.index(ih, iw, id);
              wt[slot] = wh * ww * wd;
            }
          }
        }
      }
    }
  }
  return map;
}

std::vector<float> resize_trilinear(const std::vector<float>& src, Shape3 src_shape,
                                    Shape3 dst_shape) {
  if (static_cast<int64_t>(src.size()) != src_shape.count())
    throw ShapeMismatchError("resize_trilinear: payload size " + std::to_string(src.size()) +
                             " does not match shape " + src_shape.str());
  TrilinearMap map = TrilinearMap::make(src_shape, dst_shape);
  std::vector<float> dst(static_cast<size_t>(dst_shape.count()));
  for (size_t i = 0; i < dst.size(); ++i) {
    double acc = 0.0;
    for (int s = 0; s < 8; ++s)
      acc += map.weight[i][s] * src[static_cast<size_t>(map.corner[i][s])];
    dst[i] = static_cast<float>(acc);
  }
  return dst;
}

}  // namespace glmae
