#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maskaug/augmentor.hpp"
#include "maskaug/compositor.hpp"
#include "maskaug/frame.hpp"
#include "maskaug/metrics.hpp"

namespace maskaug {

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data.data() + r * cols, cols};
  }
  std::span<double> row(std::size_t r) noexcept { return {data.data() + r * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using Embedding = std::vector<double>;

inline constexpr double kNormEpsilon = 1e-8;

/// v / (|v| + eps).
Embedding l2_normalize(std::span<const double> v);
/// Backward pass of `l2_normalize`: gradient w.r.t. the input given the
/// gradient w.r.t. the output.
Embedding l2_normalize_backward(std::span<const double> input, std::span<const double> grad_out);

/// Resizes to size x size with bilinear sampling at pixel centres
/// (src = (dst + 0.5) * scale - 0.5, edge-clamped). Output is HWC.
std::vector<double> downsample_bilinear(const Frame& frame, int size);

/// Temporal mean of the downsampled frames; the encoder input.
std::vector<double> mean_clip_features(const VideoClip& clip, int patch);

/// Linear frame encoder (3P^2 -> D) followed by a temporal mean and L2
/// normalization. The mean commutes with the linear map, so it is applied to
/// the inputs.
struct ToyVideoEncoder {
  int patch = 16;
  int dim = 32;
  Matrix weights;  // dim x 3*patch*patch
  std::vector<double> bias;

  std::size_t input_size() const noexcept {
    return static_cast<std::size_t>(3) * patch * patch;
  }
  /// Pre-normalization features for a clip-mean input.
  std::vector<double> project(std::span<const double> mean_input) const;

  friend bool operator==(const ToyVideoEncoder&, const ToyVideoEncoder&) = default;
};

Embedding encode_video(const ToyVideoEncoder& enc, const VideoClip& clip);

/// Lower-cased whitespace tokens, then unigram and bigram counts hashed into
/// `hash_dim` buckets. Bracketed placeholders stay verbatim.
std::vector<double> hashed_text_features(std::string_view text, int hash_dim);

/// Hashed text features through a learnable linear head, L2-normalized.
struct TextFeaturizer {
  int hash_dim = 256;
  int dim = 32;
  Matrix weights;  // dim x hash_dim

  std::vector<double> project(std::span<const double> features) const;

  friend bool operator==(const TextFeaturizer&, const TextFeaturizer&) = default;
};

/// Throws InvalidArgument on empty (or all-blank) text.
Embedding encode_label(const TextFeaturizer& feat, std::string_view text);

struct InfoNceResult {
  double loss = 0.0;
  Matrix grad_video;
  Matrix grad_text;
};

/// Symmetric infoNCE. With s_ij = v_i . t_j / tau, the loss is the mean of the
/// video->text and text->video cross-entropies, each averaged over N rows with
/// the matched pair on the diagonal. Gradients are analytic.
InfoNceResult infonce_loss(const Matrix& video, const Matrix& text, double temperature);

struct TrainConfig {
  double temperature = 0.07;
  double learning_rate = 0.05;
  int epochs = 20;
  int batch_size = 32;
  int dim = 32;
  int patch = 16;
  int hash_dim = 256;
  double init_scale = 1.0;
  std::uint64_t seed = 0;
  /// Color seed for validation masking; fixed so checkpoints compare on the
  /// same masked clips.
  std::uint64_t eval_seed = 20240601;
  BiasKind bias_kind = BiasKind::Background;
  CompositeOptions composite;
  int jobs = 1;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const;
};

struct ToyModel {
  ToyVideoEncoder video;
  TextFeaturizer text;

  friend bool operator==(const ToyModel&, const ToyModel&) = default;
};

/// Random weights from `cfg.seed`, scaled by init_scale / sqrt(fan_in).
ToyModel init_model(const TrainConfig& cfg);

/// Cosine similarity to each candidate text, keyed by label id.
std::map<int, double> zero_shot_classify(const ToyModel& model, const VideoClip& clip,
                                         const std::map<int, std::string>& candidates);

/// A clip with its annotations and placement in the dataset.
struct Sample {
  std::string video_id;
  int label = 0;
  std::string split;
  int split_index = 1;
  VideoClip clip;
  std::vector<FrameAnnotations> annotations;
};

/// Samples tagged "train" are trained on; every other split is evaluated.
struct TrainingData {
  std::vector<Sample> samples;
  std::map<int, std::string> label_texts;
};

struct EpochLog {
  int epoch = 0;
  double mean_loss = 0.0;
  std::array<std::size_t, kMaskingModeCount> mode_counts{};
  /// Metrics per evaluation split name.
  std::map<std::string, MetricTriple> metrics;
};

struct TrainResult {
  ToyModel model;
  std::vector<EpochLog> epochs;
  std::vector<PredictionRecord> predictions;
};

/// Contrastive training with ratio-driven masking.
///
/// Each epoch augments every training clip with `augment_sample`, shuffles,
/// and runs plain gradient descent on the symmetric infoNCE loss per
/// mini-batch. After each epoch every evaluation clip is scored unmasked, with
/// person boxes masked, and with the background masked, against all label
/// texts. `on_epoch` is called after each epoch's evaluation.
TrainResult train(const TrainingData& data, const RatioSpec& ratio, const TrainConfig& cfg,
                  const std::function<void(const EpochLog&)>& on_epoch = {});

/// Masking used for each evaluation variant under a bias kind.
MaskingMode eval_masking_mode(EvalVariant variant, BiasKind kind) noexcept;

}  // namespace maskaug
