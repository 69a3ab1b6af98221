#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glmae/grid3.hpp"
#include "glmae/rng.hpp"

namespace glmae {

// A 3D scalar grid with spacing metadata. Data is immutable by convention
// once constructed; intensities are expected to live in [0, 1] after
// normalize_window.
struct Volume {
  Shape3 shape;
  std::array<float, 3> spacing{1.f, 1.f, 1.f};       // mm per voxel
  std::array<float, 2> intensity_range{0.f, 1.f};    // pre-normalization window
  std::vector<float> data;                           // H-major layout

  float at(int h, int w, int d) const {
    return data[static_cast<size_t>(shape.index(h, w, d))];
  }
  float& at(int h, int w, int d) {
    return data[static_cast<size_t>(shape.index(h, w, d))];
  }
};

struct LabeledVolume {
  Volume volume;
  std::vector<int32_t> labels;  // same shape as volume.data
  int num_classes = 0;
};

struct ManifestEntry {
  std::string id;
  std::string volume_path;
  std::string label_path;  // empty when unlabeled
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  uint64_t seed = 0;
};

// Window normalization: clamp((x - lo) / (hi - lo), 0, 1).
Volume normalize_window(const Volume& v, float lo, float hi);

// Raw-grid file pair: <base>.f32raw (little-endian f32 payload, H-major) plus
// <base>.json sidecar {"shape","spacing","intensity_range","version"}.
void save_volume(const Volume& v, const std::string& base_path);
Volume load_volume(const std::string& path);  // accepts <base> or <base>.f32raw

// Label maps ride in a parallel pair: <base>.i32raw + <base>.json with
// {"shape","num_classes","version"}.
void save_labels(const std::vector<int32_t>& labels, Shape3 shape, int num_classes,
                 const std::string& base_path);
std::pair<std::vector<int32_t>, int> load_labels(const std::string& path, Shape3 expected);

LabeledVolume load_labeled(const ManifestEntry& entry);

DatasetManifest load_manifest(const std::string& path);
void save_manifest(const DatasetManifest& m, const std::string& path);

struct SynthConfig {
  int n = 1;
  Shape3 shape{64, 64, 64};
  int num_classes = 3;   // includes background class 0
  uint64_t seed = 0;
  bool with_labels = true;
  // Background noise and blob intensities; masking has to destroy structure
  // that stays recoverable from context.
  float background_mean = 0.3f;
  float background_sigma = 0.05f;
  float blob_lo = 0.6f;
  float blob_hi = 0.9f;
};

// Writes n procedural volumes (smooth ellipsoidal blobs on a noisy
// background) plus label maps into dir, and a manifest.json referencing them.
// Bit-deterministic for a given seed.
DatasetManifest synth_dataset(const std::string& dir, const SynthConfig& cfg);

// Convenience: synthesize in memory without touching disk.
LabeledVolume synth_volume(const SynthConfig& cfg, uint64_t index);

// Sets labels[v] = class_id and data[v] = value for every voxel inside the
// ellipsoid ((x-c)/a)^2 + ... <= 1. Returns the voxel count.
int64_t rasterize_ellipsoid(std::vector<float>& data, std::vector<int32_t>* labels,
                            Shape3 shape, std::array<double, 3> center,
                            std::array<double, 3> semi_axes, float value, int32_t class_id);

// Separable 3-voxel box filter with clamped borders (smooths data in place).
void box_filter3(std::vector<float>& data, Shape3 shape);

// FNV-1a over the raw bytes; used by determinism tests.
uint64_t hash_bytes(const void* data, size_t n);

}  // namespace glmae
