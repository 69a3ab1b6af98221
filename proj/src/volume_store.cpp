#include "glmae/volume_store.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "glmae/errors.hpp"

namespace glmae {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Volume normalize_window(const Volume& v, float lo, float hi) {
  if (!(lo < hi))
    throw InvalidWindowError("normalize_window: lo must be < hi, got [" + std::to_string(lo) +
                             ", " + std::to_string(hi) + "]");
  Volume out = v;
  float scale = 1.0f / (hi - lo);
  for (float& x : out.data) x = std::clamp((x - lo) * scale, 0.0f, 1.0f);
  out.intensity_range = {lo, hi};
  return out;
}

namespace {

std::string strip_raw_suffix(const std::string& path) {
  const std::string f32 = ".f32raw";
  const std::string i32 = ".i32raw";
  if (path.size() > f32.size() && path.compare(path.size() - f32.size(), f32.size(), f32) == 0)
    return path.substr(0, path.size() - f32.size());
  if (path.size() > i32.size() && path.compare(path.size() - i32.size(), i32.size(), i32) == 0)
    return path.substr(0, path.size() - i32.size());
  return path;
}

json read_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sidecar: " + path);
  json j;
  in >> j;
  return j;
}

template <typename T>
void write_payload(const std::string& path, const std::vector<T>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for write: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(T)));
  if (!out) throw IoError("short write: " + path);
}

template <typename T>
std::vector<T> read_payload(const std::string& path, int64_t expected_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing payload file: " + path);
  in.seekg(0, std::ios::end);
  int64_t bytes = in.tellg();
  in.seekg(0, std::ios::beg);
  if (bytes != expected_count * static_cast<int64_t>(sizeof(T)))
    throw ShapeMismatchError("payload " + path + " holds " +
                             std::to_string(bytes / static_cast<int64_t>(sizeof(T))) +
                             " values, sidecar expects " + std::to_string(expected_count));
  std::vector<T> data(static_cast<size_t>(expected_count));
  in.read(reinterpret_cast<char*>(data.data()), bytes);
  if (!in) throw IoError("short read: " + path);
  return data;
}

Shape3 shape_from_json(const json& j) {
  auto s = j.get<std::vector<int>>();
  if (s.size() != 3) throw IoError("sidecar shape must have 3 entries");
  return Shape3{s[0], s[1], s[2]};
}

}  // namespace

void save_volume(const Volume& v, const std::string& base_path) {
  std::string base = strip_raw_suffix(base_path);
  ordered_json side;
  side["shape"] = {v.shape.h, v.shape.w, v.shape.d};
  side["spacing"] = {v.spacing[0], v.spacing[1], v.spacing[2]};
  side["intensity_range"] = {v.intensity_range[0], v.intensity_range[1]};
  side["version"] = 1;
  std::ofstream sc(base + ".json");
  if (!sc) throw IoError("cannot open for write: " + base + ".json");
  sc << side.dump(2) << '\n';
  write_payload(base + ".f32raw", v.data);
}

Volume load_volume(const std::string& path) {
  std::string base = strip_raw_suffix(path);
  json side = read_sidecar(base + ".json");
  Volume v;
  v.shape = shape_from_json(side.at("shape"));
  if (v.shape.h < 1 || v.shape.w < 1 || v.shape.d < 1)
    throw ShapeMismatchError("sidecar shape has a non-positive axis: " + v.shape.str());
  auto sp = side.at("spacing").get<std::vector<float>>();
  auto ir = side.at("intensity_range").get<std::vector<float>>();
  if (sp.size() != 3 || ir.size() != 2) throw IoError("malformed sidecar: " + base + ".json");
  for (int i = 0; i < 3; ++i) {
    if (!(sp[static_cast<size_t>(i)] > 0.f))
      throw ShapeMismatchError("sidecar spacing must be positive");
    v.spacing[static_cast<size_t>(i)] = sp[static_cast<size_t>(i)];
  }
  v.intensity_range = {ir[0], ir[1]};
  v.data = read_payload<float>(base + ".f32raw", v.shape.count());
  for (float x : v.data)
    if (!std::isfinite(x)) throw NonFiniteDataError("volume payload contains non-finite voxels: " + base);
  return v;
}

void save_labels(const std::vector<int32_t>& labels, Shape3 shape, int num_classes,
                 const std::string& base_path) {
  std::string base = strip_raw_suffix(base_path);
  ordered_json side;
  side["shape"] = {shape.h, shape.w, shape.d};
  side["num_classes"] = num_classes;
  side["version"] = 1;
  std::ofstream sc(base + ".json");
  if (!sc) throw IoError("cannot open for write: " + base + ".json");
  sc << side.dump(2) << '\n';
  write_payload(base + ".i32raw", labels);
}

std::pair<std::vector<int32_t>, int> load_labels(const std::string& path, Shape3 expected) {
  std::string base = strip_raw_suffix(path);
  json side = read_sidecar(base + ".json");
  Shape3 shape = shape_from_json(side.at("shape"));
  if (!(shape == expected))
    throw ShapeMismatchError("label shape " + shape.str() + " does not match volume shape " +
                             expected.str());
  int num_classes = side.at("num_classes").get<int>();
  auto labels = read_payload<int32_t>(base + ".i32raw", shape.count());
  for (int32_t l : labels)
    if (l < 0 || l >= num_classes)
      throw ShapeMismatchError("label id " + std::to_string(l) + " outside [0, " +
                               std::to_string(num_classes) + ")");
  return {std::move(labels), num_classes};
}

LabeledVolume load_labeled(const ManifestEntry& entry) {
  LabeledVolume lv;
  lv.volume = load_volume(entry.volume_path);
  if (entry.label_path.empty())
    throw IoError("manifest entry " + entry.id + " has no label_path");
  auto [labels, nc] = load_labels(entry.label_path, lv.volume.shape);
  lv.labels = std::move(labels);
  lv.num_classes = nc;
  return lv;
}

DatasetManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path);
  json j;
  in >> j;
  DatasetManifest m;
  m.seed = j.value("seed", 0ULL);
  fs::path dir = fs::path(path).parent_path();
  auto resolve = [&dir](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (dir / p).string();
  };
  for (const auto& e : j.at("entries")) {
    ManifestEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.volume_path = resolve(e.at("volume_path").get<std::string>());
    entry.label_path = resolve(e.value("label_path", std::string{}));
    for (const auto& other : m.entries)
      if (other.id == entry.id) throw IoError("duplicate manifest id: " + entry.id);
    m.entries.push_back(std::move(entry));
  }
  return m;
}

void save_manifest(const DatasetManifest& m, const std::string& path) {
  ordered_json j;
  j["seed"] = m.seed;
  j["entries"] = ordered_json::array();
  fs::path dir = fs::path(path).parent_path();
  auto relativize = [&dir](const std::string& p) {
    if (p.empty()) return p;
    std::error_code ec;
    fs::path rel = fs::relative(p, dir, ec);
    return ec ? p : rel.string();
  };
  for (const auto& e : m.entries) {
    ordered_json je;
    je["id"] = e.id;
    je["volume_path"] = relativize(e.volume_path);
    if (!e.label_path.empty()) je["label_path"] = relativize(e.label_path);
    j["entries"].push_back(je);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for write: " + path);
  out << j.dump(2) << '\n';
}

int64_t rasterize_ellipsoid(std::vector<float>& data, std::vector<int32_t>* labels,
                            Shape3 shape, std::array<double, 3> center,
                            std::array<double, 3> semi_axes, float value, int32_t class_id) {
  int64_t count = 0;
  // Only scan the bounding box of the ellipsoid.
  int h0 = std::max(0, static_cast<int>(std::floor(center[0] - semi_axes[0])));
  int h1 = std::min(shape.h - 1, static_cast<int>(std::ceil(center[0] + semi_axes[0])));
  int w0 = std::max(0, static_cast<int>(std::floor(center[1] - semi_axes[1])));
  int w1 = std::min(shape.w - 1, static_cast<int>(std::ceil(center[1] + semi_axes[1])));
  int d0 = std::max(0, static_cast<int>(std::floor(center[2] - semi_axes[2])));
  int d1 = std::min(shape.d - 1, static_cast<int>(std::ceil(center[2] + semi_axes[2])));
  for (int h = h0; h <= h1; ++h) {
    double zh = (h - center[0]) / semi_axes[0];
    for (int w = w0; w <= w1; ++w) {
      double zw = (w - center[1]) / semi_axes[1];
      for (int d = d0; d <= d1; ++d) {
        double zd = (d - center[2]) / semi_axes[2];
        if (zh * zh + zw * zw + zd * zd <= 1.0) {
          int64_t idx = shape.index(h, w, d);
          data[static_cast<size_t>(idx)] = value;
          if (labels) (*labels)[static_cast<size_t>(idx)] = class_id;
          ++count;
        }
      }
    }
  }
  return count;
}

void box_filter3(std::vector<float>& data, Shape3 shape) {
  std::vector<float> tmp(data.size());
  auto pass = [&](int axis, const std::vector<float>& src, std::vector<float>& dst) {
    for (int h = 0; h < shape.h; ++h)
      for (int w = 0; w < shape.w; ++w)
        for (int d = 0; d < shape.d; ++d) {
          int c[3] = {h, w, d};
          double acc = 0.0;
          for (int off = -1; off <= 1; ++off) {
            int cc[3] = {h, w, d};
            cc[axis] = std::clamp(c[axis] + off, 0, shape[axis] - 1);
            acc += src[static_cast<size_t>(shape.index(cc[0], cc[1], cc[2]))];
          }
          dst[static_cast<size_t>(shape.index(h, w, d))] = static_cast<float>(acc / 3.0);
        }
  };
  pass(0, data, tmp);
  pass(1, tmp, data);
  pass(2, data, tmp);
  data.swap(tmp);
}

LabeledVolume synth_volume(const SynthConfig& cfg, uint64_t index) {
  if (cfg.shape.h < 1 || cfg.shape.w < 1 || cfg.shape.d < 1)
    throw DegenerateInputError("synth shape has a non-positive axis");
  if (cfg.num_classes < 1) throw ConfigError("synth num_classes must be >= 1");

  Rng rng(mix_seed(cfg.seed, index));
  LabeledVolume lv;
  lv.num_classes = cfg.num_classes;
  lv.volume.shape = cfg.shape;
  lv.volume.intensity_range = {0.f, 1.f};
  size_t n = static_cast<size_t>(cfg.shape.count());
  lv.volume.data.resize(n);
  lv.labels.assign(n, 0);

  for (size_t i = 0; i < n; ++i)
    lv.volume.data[i] =
        static_cast<float>(cfg.background_mean + cfg.background_sigma * rng.normal());

  int min_axis = std::min({cfg.shape.h, cfg.shape.w, cfg.shape.d});
  double ax_lo = std::max(2.0, min_axis / 10.0);
  double ax_hi = std::max(ax_lo + 1.0, min_axis / 5.0);
  for (int c = 1; c < cfg.num_classes; ++c) {
    int blobs = 1 + static_cast<int>(rng.below(2));
    for (int b = 0; b < blobs; ++b) {
      std::array<double, 3> axes{rng.uniform(ax_lo, ax_hi), rng.uniform(ax_lo, ax_hi),
                                 rng.uniform(ax_lo, ax_hi)};
      std::array<double, 3> center;
      for (int a = 0; a < 3; ++a)
        center[static_cast<size_t>(a)] =
            rng.uniform(axes[static_cast<size_t>(a)], cfg.shape[a] - 1 - axes[static_cast<size_t>(a)]);
      float intensity = static_cast<float>(rng.uniform(cfg.blob_lo, cfg.blob_hi));
      rasterize_ellipsoid(lv.volume.data, cfg.with_labels ? &lv.labels : nullptr, cfg.shape,
                          center, axes, intensity, c);
    }
  }

  box_filter3(lv.volume.data, cfg.shape);
  for (float& x : lv.volume.data) x = std::clamp(x, 0.0f, 1.0f);
  return lv;
}

DatasetManifest synth_dataset(const std::string& dir, const SynthConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("synth_dataset: n must be >= 1");
  fs::create_directories(dir);
  DatasetManifest m;
  m.seed = cfg.seed;
  for (int i = 0; i < cfg.n; ++i) {
    LabeledVolume lv = synth_volume(cfg, static_cast<uint64_t>(i));
    char idbuf[32];
    std::snprintf(idbuf, sizeof idbuf, "vol%04d", i);
    std::string base = (fs::path(dir) / idbuf).string();
    save_volume(lv.volume, base);
    ManifestEntry e;
    e.id = idbuf;
    e.volume_path = base + ".f32raw";
    if (cfg.with_labels) {
      save_labels(lv.labels, lv.volume.shape, lv.num_classes, base + ".labels");
      e.label_path = base + ".labels.i32raw";
    }
    m.entries.push_back(std::move(e));
  }
  save_manifest(m, (fs::path(dir) / "manifest.json").string());
  return m;
}

uint64_t hash_bytes(const void* data, size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t h = 1469598103934665603ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace glmae
