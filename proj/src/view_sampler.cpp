#include "glmae/view_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "glmae/errors.hpp"

namespace glmae {

namespace {

std::vector<float> extract_crop(const Volume& v, const CropGeometry& g) {
  std::vector<float> crop(static_cast<size_t>(g.box_voxels()));
  size_t out = 0;
  for (int h = 0; h < g.extent[0]; ++h)
    for (int w = 0; w < g.extent[1]; ++w)
      for (int d = 0; d < g.extent[2]; ++d, ++out)
        crop[out] = v.at(g.origin[0] + h, g.origin[1] + w, g.origin[2] + d);
  return crop;
}

View sample_crop(const Volume& v, std::array<double, 2> scale_range, Shape3 target,
                 ViewKind kind, Rng& rng) {
  if (v.shape.h < 2 || v.shape.w < 2 || v.shape.d < 2)
    throw DegenerateInputError("sampling requires at least 2 voxels per axis, volume is " +
                               v.shape.str());

  double s = rng.uniform(scale_range[0], scale_range[1]);
  CropGeometry g;
  g.source_shape = {v.shape.h, v.shape.w, v.shape.d};
  for (int a = 0; a < 3; ++a) {
    // Round half up, then keep the crop inside the volume.
    int extent = static_cast<int>(std::floor(s * v.shape[a] + 0.5));
    g.extent[static_cast<size_t>(a)] = std::clamp(extent, 1, v.shape[a]);
  }
  for (int a = 0; a < 3; ++a) {
    int slack = v.shape[a] - g.extent[static_cast<size_t>(a)];
    g.origin[static_cast<size_t>(a)] = static_cast<int>(rng.below(static_cast<uint64_t>(slack) + 1));
  }

  View view;
  view.geometry = g;
  view.kind = kind;
  view.target_size = target;
  Shape3 crop_shape{g.extent[0], g.extent[1], g.extent[2]};
  view.data = resize_trilinear(extract_crop(v, g), crop_shape, target);
  return view;
}

}  // namespace

View sample_global(const Volume& v, const SamplerConfig& cfg, Rng& rng) {
  return sample_crop(v, cfg.global_scale, cfg.global_size, ViewKind::global, rng);
}

View sample_local(const Volume& v, const SamplerConfig& cfg, Rng& rng) {
  return sample_crop(v, cfg.local_scale, cfg.local_size, ViewKind::local, rng);
}

ViewSet sample_views(const Volume& v, int p, int q, const SamplerConfig& cfg, Rng& rng) {
  if (p < 1) throw ConfigError("sample_views: p must be >= 1");
  if (q < 0) throw ConfigError("sample_views: q must be >= 0");
  ViewSet set;
  set.globals.reserve(static_cast<size_t>(p));
  set.locals.reserve(static_cast<size_t>(q));
  for (int i = 0; i < p; ++i) set.globals.push_back(sample_global(v, cfg, rng));
  for (int j = 0; j < q; ++j) set.locals.push_back(sample_local(v, cfg, rng));
  return set;
}

double overlap_ratio(const CropGeometry& local, const CropGeometry& global) {
  if (local.source_shape != global.source_shape)
    throw ShapeMismatchError("overlap_ratio: crops come from different source shapes");
  int64_t inter = 1;
  for (int a = 0; a < 3; ++a) {
    int lo = std::max(local.origin[static_cast<size_t>(a)], global.origin[static_cast<size_t>(a)]);
    int hi = std::min(local.origin[static_cast<size_t>(a)] + local.extent[static_cast<size_t>(a)],
                      global.origin[static_cast<size_t>(a)] + global.extent[static_cast<size_t>(a)]);
    inter *= std::max(0, hi - lo);
  }
  return 100.0 * static_cast<double>(inter) / static_cast<double>(local.box_voxels());
}

namespace {

// Shared Monte-Carlo walk for Overlap and Hit: same seed, same crop pairs.
double dataset_stat(const std::vector<Volume>& volumes, int p, int q, const SamplerConfig& cfg,
                    uint64_t seed, int passes, bool hit) {
  if (volumes.empty()) throw ConfigError("dataset statistics need a non-empty dataset");
  if (p < 1 || q < 1) throw ConfigError("dataset statistics need p >= 1 and q >= 1");
  Rng rng(seed);
  double acc = 0.0;
  int64_t pairs = 0;
  for (int pass = 0; pass < passes; ++pass) {
    for (const Volume& v : volumes) {
      ViewSet set = sample_views(v, p, q, cfg, rng);
      for (const View& g : set.globals)
        for (const View& l : set.locals) {
          double r = overlap_ratio(l.geometry, g.geometry);
          acc += hit ? (r > 0.0 ? 100.0 : 0.0) : r;
          ++pairs;
        }
    }
  }
  return acc / static_cast<double>(pairs);
}

std::vector<Volume> load_all(const DatasetManifest& manifest) {
  std::vector<Volume> volumes;
  volumes.reserve(manifest.entries.size());
  for (const auto& e : manifest.entries) volumes.push_back(load_volume(e.volume_path));
  return volumes;
}

}  // namespace

double dataset_overlap(const std::vector<Volume>& volumes, int p, int q,
                       const SamplerConfig& cfg, uint64_t seed, int passes) {
  return dataset_stat(volumes, p, q, cfg, seed, passes, /*hit=*/false);
}

double dataset_overlap(const DatasetManifest& manifest, int p, int q, const SamplerConfig& cfg,
                       uint64_t seed, int passes) {
  return dataset_overlap(load_all(manifest), p, q, cfg, seed, passes);
}

double dataset_hit(const std::vector<Volume>& volumes, int p, int q, const SamplerConfig& cfg,
                   uint64_t seed, int passes) {
  return dataset_stat(volumes, p, q, cfg, seed, passes, /*hit=*/true);
}

double dataset_hit(const DatasetManifest& manifest, int p, int q, const SamplerConfig& cfg,
                   uint64_t seed, int passes) {
  return dataset_hit(load_all(manifest), p, q, cfg, seed, passes);
}

View downsample_whole(const Volume& v, Shape3 size) {
  if (size.h < 1 || size.w < 1 || size.d < 1)
    throw DegenerateInputError("downsample_whole: target must be >= 1 per axis");
  View view;
  view.kind = ViewKind::global;
  view.target_size = size;
  view.geometry.origin = {0, 0, 0};
  view.geometry.extent = {v.shape.h, v.shape.w, v.shape.d};
  view.geometry.source_shape = view.geometry.extent;
  view.data = resize_trilinear(v.data, v.shape, size);
  return view;
}

View crop_exact(const Volume& v, std::array<int, 3> origin, Shape3 size) {
  CropGeometry g;
  g.origin = origin;
  g.extent = {size.h, size.w, size.d};
  g.source_shape = {v.shape.h, v.shape.w, v.shape.d};
  for (int a = 0; a < 3; ++a)
    if (origin[static_cast<size_t>(a)] < 0 ||
        origin[static_cast<size_t>(a)] + size[a] > v.shape[a])
      throw ShapeMismatchError("crop_exact: crop exceeds volume bounds");
  View view;
  view.geometry = g;
  view.kind = ViewKind::local;
  view.target_size = size;
  view.data = extract_crop(v, g);
  return view;
}

}  // namespace glmae
