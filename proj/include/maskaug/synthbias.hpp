#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maskaug/compositor.hpp"
#include "maskaug/frame.hpp"
#include "maskaug/zeroshot.hpp"

namespace maskaug {

/// An evaluation split and its background-label correlation.
struct ValSplitSpec {
  std::string name;
  double rho = 1.0;

  friend bool operator==(const ValSplitSpec&, const ValSplitSpec&) = default;
};

/// Synthetic clips where a solid background color is spuriously correlated
/// with the action, while a moving striped rectangle (the "person") carries
/// the real label.
struct SynthSpec {
  int classes = 4;
  int background_colors = 4;
  int object_textures = 4;
  int frames = 8;
  int width = 32;
  int height = 32;
  int train_clips_per_class = 64;
  int val_clips_per_class = 32;
  /// Probability that a training clip's background is its label's color.
  double rho_train = 1.0;
  std::vector<ValSplitSpec> val_splits{{"val", 1.0}, {"mimetic", 0.0}};
  /// Adds a textured object disc whose texture follows the same correlation.
  bool objects = false;
  /// Per-clip uniform offset, in 8-bit levels, added to each background
  /// channel so background colors of different labels overlap.
  int background_jitter = 48;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct SynthClip {
  std::string video_id;
  int label = 0;
  std::string split;
  int split_index = 1;
  int background_index = 0;
  /// -1 when the clip has no object.
  int object_index = -1;
  std::vector<Image8> frames;
  std::vector<FrameAnnotations> annotations;

  friend bool operator==(const SynthClip&, const SynthClip&) = default;
};

struct SynthDataset {
  SynthSpec spec;
  std::map<int, std::string> label_texts;
  std::vector<SynthClip> clips;
};

/// Category sentence for a class, e.g. "person moving right with vertical stripes".
std::string synth_label_text(int label);

/// Deterministic in `spec`; `jobs` only changes speed.
SynthDataset generate(const SynthSpec& spec, int jobs = 1);

/// In-memory view for the trainer.
TrainingData to_training_data(const SynthDataset& dataset, const Normalization& norm = {});

/// Writes manifest.jsonl, frames/<video>/NNN.ppm and annotations/<video>.json.
void write_synth_dataset(const SynthDataset& dataset, const std::string& out_dir, int jobs = 1);

}  // namespace maskaug
