#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "glmae/grid3.hpp"
#include "glmae/rng.hpp"
#include "glmae/volume_store.hpp"

namespace glmae {

// Integer voxel box of a crop in its source volume, kept so overlap
// statistics can be computed after the crop has been resized away.
struct CropGeometry {
  std::array<int, 3> origin{0, 0, 0};
  std::array<int, 3> extent{0, 0, 0};
  std::array<int, 3> source_shape{0, 0, 0};

  int64_t box_voxels() const {
    return static_cast<int64_t>(extent[0]) * extent[1] * extent[2];
  }
};

enum class ViewKind { global, local };

struct View {
  std::vector<float> data;  // resized crop, target_size, H-major
  Shape3 target_size;
  CropGeometry geometry;
  ViewKind kind = ViewKind::local;
};

struct SamplerConfig {
  std::array<double, 2> global_scale{0.5, 1.0};
  std::array<double, 2> local_scale{0.25, 0.5};
  Shape3 global_size{160, 160, 160};
  Shape3 local_size{96, 96, 96};

  static SamplerConfig desk() {
    SamplerConfig c;
    c.global_size = {32, 32, 32};
    c.local_size = {16, 16, 16};
    return c;
  }
};

struct ViewSet {
  std::vector<View> globals;
  std::vector<View> locals;
  std::string source_id;
};

// One scalar scale factor per crop, applied to all three axes; crop, then
// trilinear resize to the configured target size.
View sample_global(const Volume& v, const SamplerConfig& cfg, Rng& rng);
View sample_local(const Volume& v, const SamplerConfig& cfg, Rng& rng);

// p global crops followed by q local crops; rng is consumed in that order.
ViewSet sample_views(const Volume& v, int p, int q, const SamplerConfig& cfg, Rng& rng);

// 100 * |local ∩ global| / |local|, on integer voxel boxes. Asymmetric by
// definition: the denominator is the local box volume only.
double overlap_ratio(const CropGeometry& local, const CropGeometry& global);

// Mean overlap_ratio over (volume, global, local) triples; `passes` repeats
// the per-volume sampling to grow the Monte-Carlo sample count.
double dataset_overlap(const std::vector<Volume>& volumes, int p, int q,
                       const SamplerConfig& cfg, uint64_t seed, int passes = 1);
double dataset_overlap(const DatasetManifest& manifest, int p, int q,
                       const SamplerConfig& cfg, uint64_t seed, int passes = 1);

// Same sampling, but each pair contributes sgn(|intersection|).
double dataset_hit(const std::vector<Volume>& volumes, int p, int q,
                   const SamplerConfig& cfg, uint64_t seed, int passes = 1);
double dataset_hit(const DatasetManifest& manifest, int p, int q,
                   const SamplerConfig& cfg, uint64_t seed, int passes = 1);

// Whole-volume trilinear downsample; geometry covers the full volume.
View downsample_whole(const Volume& v, Shape3 size);

// Crop without resizing (used by the fine-tuning harness, where the crop
// equals the network input size). Labels use nearest semantics trivially
// since no resampling happens.
View crop_exact(const Volume& v, std::array<int, 3> origin, Shape3 size);

}  // namespace glmae
