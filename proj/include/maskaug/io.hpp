#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "maskaug/compositor.hpp"
#include "maskaug/frame.hpp"
#include "maskaug/metrics.hpp"
#include "maskaug/zeroshot.hpp"

namespace maskaug {

// ---- dataset manifest (JSONL) ---------------------------------------------

/// One manifest line:
/// {"video_id", "label_id", "label_text", "split", "split_index", "frames", "annotations"}.
/// Paths are stored as written; relative paths resolve against the manifest's
/// directory.
struct ManifestEntry {
  std::string video_id;
  int label_id = 0;
  std::string label_text;
  std::string split;
  int split_index = 1;
  std::vector<std::string> frames;
  std::string annotations;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Parses every line; blank lines are skipped. When `check_paths` is set,
/// frame and annotation files must exist. Errors carry the 1-based line.
std::vector<ManifestEntry> load_manifest(const std::string& path, bool check_paths = true);
void write_manifest(std::span<const ManifestEntry> entries, const std::string& path);

// ---- per-video annotations (JSON) -----------------------------------------

struct AnnotationDoc {
  std::vector<FrameAnnotations> frames;
  std::string provenance;

  friend bool operator==(const AnnotationDoc&, const AnnotationDoc&) = default;
};

/// RLE inconsistencies raise CorruptAnnotationError naming the frame index.
AnnotationDoc load_annotations(const std::string& path);
void write_annotations(const AnnotationDoc& doc, const std::string& path);

// ---- frames ---------------------------------------------------------------

/// Binary PPM (P6, maxval 255).
Image8 read_ppm(const std::string& path);
void write_ppm(const Image8& image, const std::string& path);

/// Raw RGB8: "RGB8", width (u32 LE), height (u32 LE), then HWC bytes.
Image8 read_raw_rgb8(const std::string& path);
void write_raw_rgb8(const Image8& image, const std::string& path);

/// Dispatches on the file's magic bytes.
Image8 read_image(const std::string& path);

// ---- dataset loading ------------------------------------------------------

/// Loads frames and annotations for every entry. Checks that the annotation
/// frame count and mask sizes match the frames.
TrainingData load_dataset(const std::string& manifest_path, const Normalization& norm = {},
                          int jobs = 1);

// ---- prediction logs (JSONL) ----------------------------------------------

/// {"video_id", "true_label", "variant", "epoch", "split", "split_index",
///  "scores": {"<label>": score, ...}}
void write_predictions(std::span<const PredictionRecord> records, const std::string& path);
std::vector<PredictionRecord> load_predictions(const std::string& path);

// ---- model checkpoint -----------------------------------------------------

void save_model(const ToyModel& model, const TrainConfig& cfg, const std::string& path);
ToyModel load_model(const std::string& path);

/// FNV-1a over the canonical rendering of the training configuration.
std::uint64_t config_hash(const TrainConfig& cfg);

// ---- configuration --------------------------------------------------------

/// Flat key/value settings read from either a JSON object or `key = value`
/// lines ('#' starts a comment). Values are kept as text.
using ConfigValues = std::map<std::string, std::string>;
ConfigValues load_config(const std::string& path);
ConfigValues parse_config(const std::string& text, const std::string& origin = "<config>");

// ---- reports --------------------------------------------------------------

/// Fixed-width text table: one row per split group with top1, B-top1, P-top1.
std::string render_report_table(const MetricsReport& report);
/// JSON mirror of the table plus per-split and per-epoch detail.
std::string render_report_json(const MetricsReport& report);
/// Per-epoch metrics for each split group (the `eval` output).
std::string render_epoch_table(const MetricsReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace maskaug
