#include "maskaug/synthbias.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "maskaug/error.hpp"
#include "maskaug/io.hpp"
#include "maskaug/parallel.hpp"
#include "maskaug/rng.hpp"

namespace maskaug {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr std::array<const char*, 4> kDirections{"moving right", "moving left", "moving down",
                                                 "moving up"};
constexpr std::array<const char*, 4> kPatterns{"vertical stripes", "horizontal stripes",
                                               "checkered squares", "diagonal stripes"};
constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

Rgb hsv(double hue, double sat, double val) {
  hue = hue - std::floor(hue);
  const double h6 = hue * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double p = val * (1.0 - sat);
  const double q = val * (1.0 - sat * f);
  const double t = val * (1.0 - sat * (1.0 - f));
  double r = val, g = t, b = p;
  switch (sector) {
    case 0: r = val; g = t; b = p; break;
    case 1: r = q; g = val; b = p; break;
    case 2: r = p; g = val; b = t; break;
    case 3: r = p; g = q; b = val; break;
    case 4: r = t; g = p; b = val; break;
    default: r = val; g = p; b = q; break;
  }
  auto q8 = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
  return {q8(r), q8(g), q8(b)};
}

Rgb background_color(int index, int count) { return hsv(static_cast<double>(index) / count, 0.55, 0.8); }

std::array<Rgb, 2> person_colors(int label, int classes) {
  const double hue = (label + 0.5) / classes;
  return {hsv(hue, 0.9, 0.95), hsv(hue + 0.5, 0.9, 0.35)};
}

std::array<Rgb, 2> object_colors(int index, int count) {
  const double hue = (index + 0.25) / count;
  return {hsv(hue, 0.3, 1.0), hsv(hue, 1.0, 0.2)};
}

bool pattern_on(int pattern, int u, int v) {
  switch (pattern % 4) {
    case 0: return (u / 2) % 2 == 0;
    case 1: return (v / 2) % 2 == 0;
    case 2: return ((u / 2) + (v / 2)) % 2 == 0;
    default: return ((u + v) / 2) % 2 == 0;
  }
}

void put(Image8& img, int x, int y, const Rgb& c) {
  auto* p = img.pixels.data() + (static_cast<std::size_t>(y) * img.width + x) * 3;
  p[0] = c[0];
  p[1] = c[1];
  p[2] = c[2];
}

struct ClipJob {
  std::string split;
  double rho;
  int label;
  int index;
};

SynthClip make_clip(const SynthSpec& spec, const ClipJob& job) {
  char id[96];
  std::snprintf(id, sizeof id, "%s-c%02d-%04d", job.split.c_str(), job.label, job.index);
  SynthClip clip;
  clip.video_id = id;
  clip.label = job.label;
  clip.split = job.split;
  SeededRng rng(derive_seed(spec.seed, 0x5EED, clip.video_id));

  const bool correlated = rng.uniform() < job.rho;
  clip.background_index = correlated
                              ? job.label % spec.background_colors
                              : static_cast<int>(rng.uniform_index(spec.background_colors));
  if (spec.objects) {
    const bool obj_correlated = rng.uniform() < job.rho;
    clip.object_index = obj_correlated
                            ? job.label % spec.object_textures
                            : static_cast<int>(rng.uniform_index(spec.object_textures));
  }

  const int w = spec.width;
  const int h = spec.height;
  const int pw = std::max(2, w * 3 / 8);
  const int ph = std::max(2, h * 7 / 16);
  const auto step = kSteps[job.label % 4];
  const int pattern = (job.label / 4) % 4;
  const auto pcolors = person_colors(job.label, spec.classes);
  const int travel = spec.frames - 1;
  const int jitter_x = static_cast<int>(rng.uniform_index(5)) - 2;
  const int jitter_y = static_cast<int>(rng.uniform_index(5)) - 2;
  // Trajectory centred on the frame centre.
  const int start_x = (w - pw) / 2 - step[0] * travel / 2 + jitter_x;
  const int start_y = (h - ph) / 2 - step[1] * travel / 2 + jitter_y;

  int obj_cx = 0, obj_cy = 0;
  const int obj_r = std::max(2, std::min(w, h) / 8);
  if (spec.objects) {
    obj_cx = obj_r + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(w - 2 * obj_r)));
    obj_cy = obj_r + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(h - 2 * obj_r)));
  }
  BinaryMask object_shape(w, h);
  std::vector<BBox> object_boxes;
  if (spec.objects) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const int dx = x - obj_cx, dy = y - obj_cy;
        if (dx * dx + dy * dy <= obj_r * obj_r) object_shape.set(x, y, true);
      }
    }
    object_boxes.push_back({obj_cx - obj_r, obj_cy - obj_r, obj_cx + obj_r + 1, obj_cy + obj_r + 1});
  }

  Rgb bg = background_color(clip.background_index, spec.background_colors);
  for (auto& ch : bg) {
    const int offset = static_cast<int>(rng.uniform_index(2 * spec.background_jitter + 1)) -
                       spec.background_jitter;
    ch = static_cast<std::uint8_t>(std::clamp(static_cast<int>(ch) + offset, 0, 255));
  }
  for (int t = 0; t < spec.frames; ++t) {
    Image8 img{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h * 3)};
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        Rgb c = bg;
        for (auto& ch : c) {
          const int noise = static_cast<int>(rng.uniform_index(13)) - 6;
          ch = static_cast<std::uint8_t>(std::clamp(static_cast<int>(ch) + noise, 0, 255));
        }
        put(img, x, y, c);
      }
    }
    if (spec.objects) {
      const auto ocolors = object_colors(clip.object_index, spec.object_textures);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          if (object_shape.at(x, y)) put(img, x, y, ocolors[((x + y) % 2 == 0) ? 0 : 1]);
        }
      }
    }

    const BBox raw{start_x + step[0] * t, start_y + step[1] * t, start_x + step[0] * t + pw,
                   start_y + step[1] * t + ph};
    const auto box = raw.clamped(w, h);
    BinaryMask person(w, h);
    std::vector<BBox> person_boxes;
    if (box) {
      person.fill_rect(box->x_min, box->y_min, box->x_max, box->y_max);
      person_boxes.push_back(*box);
      for (int y = box->y_min; y < box->y_max; ++y) {
        for (int x = box->x_min; x < box->x_max; ++x) {
          put(img, x, y, pcolors[pattern_on(pattern, x - raw.x_min, y - raw.y_min) ? 0 : 1]);
        }
      }
    }
    clip.frames.push_back(std::move(img));
    clip.annotations.push_back({std::move(person), object_shape, std::move(person_boxes), object_boxes});
  }
  return clip;
}

}  // namespace

void SynthSpec::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, "synth spec: " + what);
  };
  require(classes >= 2, "classes must be >= 2");
  require(background_colors >= 2, "background colors must be >= 2");
  require(object_textures >= 2, "object textures must be >= 2");
  require(frames >= 1, "frames must be >= 1");
  require(width >= 8 && height >= 8, "frame size must be at least 8x8");
  require(train_clips_per_class >= 1, "train clips per class must be >= 1");
  require(val_clips_per_class >= 0, "val clips per class must be >= 0");
  require(background_jitter >= 0 && background_jitter <= 255, "background jitter must be in [0, 255]");
  require(rho_train >= 0.0 && rho_train <= 1.0, "rho_train must be in [0, 1]");
  for (const ValSplitSpec& v : val_splits) {
    require(!v.name.empty() && v.name != "train", "val split names must be non-empty, not 'train'");
    require(v.rho >= 0.0 && v.rho <= 1.0, "val rho must be in [0, 1]");
  }
}

std::string synth_label_text(int label) {
  std::string text = std::string("person ") + kDirections[label % 4] + " with " +
                     kPatterns[(label / 4) % 4];
  if (label >= 16) text += " variant " + std::to_string(label / 16);
  return text;
}

SynthDataset generate(const SynthSpec& spec, int jobs) {
  spec.validate();
  std::vector<ClipJob> work;
  for (int c = 0; c < spec.classes; ++c) {
    for (int i = 0; i < spec.train_clips_per_class; ++i) work.push_back({"train", spec.rho_train, c, i});
  }
  for (const ValSplitSpec& v : spec.val_splits) {
    for (int c = 0; c < spec.classes; ++c) {
      for (int i = 0; i < spec.val_clips_per_class; ++i) work.push_back({v.name, v.rho, c, i});
    }
  }
  SynthDataset out;
  out.spec = spec;
  for (int c = 0; c < spec.classes; ++c) out.label_texts[c] = synth_label_text(c);
  out.clips.resize(work.size());
  parallel_for(work.size(), jobs, [&](std::size_t i) { out.clips[i] = make_clip(spec, work[i]); });
  return out;
}

TrainingData to_training_data(const SynthDataset& dataset, const Normalization& norm) {
  TrainingData data;
  data.label_texts = dataset.label_texts;
  data.samples.reserve(dataset.clips.size());
  for (const SynthClip& c : dataset.clips) {
    Sample s{c.video_id, c.label, c.split, c.split_index, VideoClip{c.video_id, {}}, c.annotations};
    for (const Image8& img : c.frames) s.clip.frames.push_back(normalize(img, norm));
    data.samples.push_back(std::move(s));
  }
  return data;
}

void write_synth_dataset(const SynthDataset& dataset, const std::string& out_dir, int jobs) {
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root / "frames");
  fs::create_directories(root / "annotations");
  std::vector<ManifestEntry> entries(dataset.clips.size());
  parallel_for(dataset.clips.size(), jobs, [&](std::size_t i) {
    const SynthClip& clip = dataset.clips[i];
    ManifestEntry& e = entries[i];
    e.video_id = clip.video_id;
    e.label_id = clip.label;
    e.label_text = dataset.label_texts.at(clip.label);
    e.split = clip.split;
    e.split_index = clip.split_index;
    const fs::path frame_dir = fs::path("frames") / clip.video_id;
    fs::create_directories(root / frame_dir);
    for (std::size_t t = 0; t < clip.frames.size(); ++t) {
      char name[32];
      std::snprintf(name, sizeof name, "%03zu.ppm", t);
      const fs::path rel = frame_dir / name;
      write_ppm(clip.frames[t], (root / rel).string());
      e.frames.push_back(rel.generic_string());
    }
    e.annotations = (fs::path("annotations") / (clip.video_id + ".json")).generic_string();
    AnnotationDoc doc{clip.annotations, "synthbias ground truth"};
    write_annotations(doc, (root / e.annotations).string());
  });
  write_manifest(entries, (root / "manifest.jsonl").string());
}

}  // namespace maskaug
