#include "maskaug/zeroshot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "maskaug/error.hpp"
#include "maskaug/parallel.hpp"
#include "maskaug/rng.hpp"

namespace maskaug {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> affine(const Matrix& w, std::span<const double> x,
                           std::span<const double> bias) {
  std::vector<double> out(w.rows);
  for (std::size_t r = 0; r < w.rows; ++r) {
    out[r] = dot(w.row(r), x) + (bias.empty() ? 0.0 : bias[r]);
  }
  return out;
}

// Adds outer(g, x) to `acc`.
void add_outer(Matrix& acc, std::span<const double> g, std::span<const double> x) {
  for (std::size_t r = 0; r < acc.rows; ++r) {
    if (g[r] == 0.0) continue;
    auto row = acc.row(r);
    for (std::size_t c = 0; c < acc.cols; ++c) row[c] += g[r] * x[c];
  }
}

void fill_random(Matrix& m, SeededRng& rng, double scale) {
  const double s = scale / std::sqrt(static_cast<double>(m.cols));
  for (double& v : m.data) v = rng.normal() * s;
}

double log_sum_exp(std::span<const double> xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace

Embedding l2_normalize(std::span<const double> v) {
  const double norm = std::sqrt(dot(v, v));
  Embedding out(v.begin(), v.end());
  for (double& x : out) x /= norm + kNormEpsilon;
  return out;
}

Embedding l2_normalize_backward(std::span<const double> input, std::span<const double> grad_out) {
  const double norm = std::sqrt(dot(input, input));
  const double denom = norm + kNormEpsilon;
  Embedding grad(input.size());
  const double proj = norm > 0.0 ? dot(input, grad_out) / (norm * denom * denom) : 0.0;
  for (std::size_t i = 0; i < input.size(); ++i) grad[i] = grad_out[i] / denom - input[i] * proj;
  return grad;
}

std::vector<double> downsample_bilinear(const Frame& frame, int size) {
  if (size < 1) throw Error(ErrorKind::InvalidArgument, "downsample size must be >= 1");
  const int w = frame.width();
  const int h = frame.height();
  const double sx = static_cast<double>(w) / size;
  const double sy = static_cast<double>(h) / size;
  std::vector<double> out(static_cast<std::size_t>(size) * size * Frame::kChannels);
  for (int dy = 0; dy < size; ++dy) {
    const double fy = std::clamp((dy + 0.5) * sy - 0.5, 0.0, static_cast<double>(h - 1));
    const int y0 = static_cast<int>(fy);
    const int y1 = std::min(y0 + 1, h - 1);
    const double wy = fy - y0;
    for (int dx = 0; dx < size; ++dx) {
      const double fx = std::clamp((dx + 0.5) * sx - 0.5, 0.0, static_cast<double>(w - 1));
      const int x0 = static_cast<int>(fx);
      const int x1 = std::min(x0 + 1, w - 1);
      const double wx = fx - x0;
      for (int c = 0; c < Frame::kChannels; ++c) {
        const double top = (1.0 - wx) * frame.at(x0, y0, c) + wx * frame.at(x1, y0, c);
        const double bottom = (1.0 - wx) * frame.at(x0, y1, c) + wx * frame.at(x1, y1, c);
        out[(static_cast<std::size_t>(dy) * size + dx) * Frame::kChannels + c] =
            (1.0 - wy) * top + wy * bottom;
      }
    }
  }
  return out;
}

std::vector<double> mean_clip_features(const VideoClip& clip, int patch) {
  validate_clip(clip);
  std::vector<double> mean(static_cast<std::size_t>(3) * patch * patch, 0.0);
  for (const Frame& f : clip.frames) {
    const auto x = downsample_bilinear(f, patch);
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += x[i];
  }
  const double inv = 1.0 / static_cast<double>(clip.frames.size());
  for (double& v : mean) v *= inv;
  return mean;
}

std::vector<double> ToyVideoEncoder::project(std::span<const double> mean_input) const {
  return affine(weights, mean_input, bias);
}

Embedding encode_video(const ToyVideoEncoder& enc, const VideoClip& clip) {
  return l2_normalize(enc.project(mean_clip_features(clip, enc.patch)));
}

std::vector<double> hashed_text_features(std::string_view text, int hash_dim) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) {
    std::transform(tok.begin(), tok.end(), tok.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    tokens.push_back(std::move(tok));
  }
  if (tokens.empty()) throw Error(ErrorKind::InvalidArgument, "label text is empty");
  std::vector<double> counts(static_cast<std::size_t>(hash_dim), 0.0);
  const auto bucket = [&](const std::string& key) {
    return static_cast<std::size_t>(fnv1a64(key) % static_cast<std::uint64_t>(hash_dim));
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    counts[bucket("u:" + tokens[i])] += 1.0;
    if (i + 1 < tokens.size()) counts[bucket("b:" + tokens[i] + " " + tokens[i + 1])] += 1.0;
  }
  return counts;
}

std::vector<double> TextFeaturizer::project(std::span<const double> features) const {
  return affine(weights, features, {});
}

Embedding encode_label(const TextFeaturizer& feat, std::string_view text) {
  return l2_normalize(feat.project(hashed_text_features(text, feat.hash_dim)));
}

InfoNceResult infonce_loss(const Matrix& video, const Matrix& text, double temperature) {
  if (!(temperature > 0.0)) throw Error(ErrorKind::InvalidArgument, "temperature must be > 0");
  if (video.rows == 0 || video.rows != text.rows || video.cols != text.cols) {
    throw Error(ErrorKind::DimensionMismatch, "infoNCE needs matching non-empty N x D inputs");
  }
  const std::size_t n = video.rows;
  const std::size_t d = video.cols;

  Matrix logits(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) logits(i, j) = dot(video.row(i), text.row(j)) / temperature;
  }

  // dL/ds accumulates both directions: 0.5/N * (softmax - onehot).
  Matrix grad_logits(n, n);
  const double scale = 0.5 / static_cast<double>(n);
  double row_loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lse = log_sum_exp(logits.row(i));
    row_loss += lse - logits(i, i);
    for (std::size_t j = 0; j < n; ++j) {
      grad_logits(i, j) += scale * (std::exp(logits(i, j) - lse) - (i == j ? 1.0 : 0.0));
    }
  }
  double col_loss = 0.0;
  std::vector<double> column(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = logits(i, j);
    const double lse = log_sum_exp(column);
    col_loss += lse - logits(j, j);
    for (std::size_t i = 0; i < n; ++i) {
      grad_logits(i, j) += scale * (std::exp(logits(i, j) - lse) - (i == j ? 1.0 : 0.0));
    }
  }

  InfoNceResult out{0.5 * (row_loss + col_loss) / static_cast<double>(n), Matrix(n, d),
                    Matrix(n, d)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double g = grad_logits(i, j) / temperature;
      if (g == 0.0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        out.grad_video(i, k) += g * text(j, k);
        out.grad_text(j, k) += g * video(i, k);
      }
    }
  }
  return out;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::InvalidArgument, what);
  };
  require(temperature > 0.0 && std::isfinite(temperature), "temperature must be > 0");
  require(learning_rate >= 0.0 && std::isfinite(learning_rate), "learning rate must be >= 0");
  require(epochs >= 1, "epochs must be >= 1");
  require(batch_size >= 1, "batch size must be >= 1");
  require(dim >= 2, "embedding dim must be >= 2");
  require(patch >= 1, "patch size must be >= 1");
  require(hash_dim >= 1, "hash dim must be >= 1");
  require(jobs >= 1, "jobs must be >= 1");
}

ToyModel init_model(const TrainConfig& cfg) {
  cfg.validate();
  ToyModel model;
  model.video.patch = cfg.patch;
  model.video.dim = cfg.dim;
  model.video.weights = Matrix(static_cast<std::size_t>(cfg.dim), model.video.input_size());
  model.video.bias.assign(static_cast<std::size_t>(cfg.dim), 0.0);
  model.text.hash_dim = cfg.hash_dim;
  model.text.dim = cfg.dim;
  model.text.weights =
      Matrix(static_cast<std::size_t>(cfg.dim), static_cast<std::size_t>(cfg.hash_dim));
  SeededRng rng(mix64(cfg.seed ^ 0x6D6F64656C696E69ULL));
  fill_random(model.video.weights, rng, cfg.init_scale);
  fill_random(model.text.weights, rng, cfg.init_scale);
  return model;
}

std::map<int, double> zero_shot_classify(const ToyModel& model, const VideoClip& clip,
                                         const std::map<int, std::string>& candidates) {
  if (candidates.empty()) throw Error(ErrorKind::InvalidArgument, "no candidate labels");
  const Embedding v = encode_video(model.video, clip);
  std::map<int, double> scores;
  for (const auto& [label, text] : candidates) {
    scores[label] = dot(v, encode_label(model.text, text));
  }
  return scores;
}

MaskingMode eval_masking_mode(EvalVariant variant, BiasKind kind) noexcept {
  switch (variant) {
    case EvalVariant::Unmasked: return MaskingMode::NoMask;
    case EvalVariant::PersonBboxMasked: return MaskingMode::PersonBbox;
    case EvalVariant::BackgroundMasked:
      return kind == BiasKind::Background ? MaskingMode::Background
                                          : MaskingMode::BackgroundAndObject;
  }
  return MaskingMode::NoMask;
}

namespace {

struct EvalItem {
  const Sample* sample;
  EvalVariant variant;
  std::vector<double> input;
};

std::vector<EvalItem> prepare_eval(const std::vector<const Sample*>& samples,
                                   const TrainConfig& cfg) {
  std::vector<EvalItem> items;
  for (const Sample* s : samples) {
    for (EvalVariant v : kAllEvalVariants) items.push_back({s, v, {}});
  }
  parallel_for(items.size(), cfg.jobs, [&](std::size_t i) {
    EvalItem& item = items[i];
    const MaskingMode mode = eval_masking_mode(item.variant, cfg.bias_kind);
    SeededRng rng(derive_seed(cfg.eval_seed, static_cast<std::uint64_t>(item.variant),
                              item.sample->video_id));
    const MaskedClip masked =
        mask_clip(item.sample->clip, item.sample->annotations, mode, rng, cfg.composite);
    item.input = mean_clip_features(masked.clip, cfg.patch);
  });
  return items;
}

}  // namespace

TrainResult train(const TrainingData& data, const RatioSpec& ratio, const TrainConfig& cfg,
                  const std::function<void(const EpochLog&)>& on_epoch) {
  cfg.validate();
  std::vector<const Sample*> train_set;
  std::vector<const Sample*> eval_set;
  for (const Sample& s : data.samples) {
    (s.split == "train" ? train_set : eval_set).push_back(&s);
    if (!data.label_texts.contains(s.label)) {
      throw Error(ErrorKind::InvalidArgument,
                  "sample '" + s.video_id + "' has label " + std::to_string(s.label) +
                      " with no label text");
    }
  }
  if (train_set.empty()) throw Error(ErrorKind::InvalidArgument, "no training samples");

  TrainResult result{init_model(cfg), {}, {}};
  ToyModel& model = result.model;

  std::map<int, std::vector<double>> text_inputs;
  for (const auto& [label, text] : data.label_texts) {
    text_inputs[label] = hashed_text_features(text, cfg.hash_dim);
  }
  const std::vector<EvalItem> eval_items = prepare_eval(eval_set, cfg);

  const std::size_t d = static_cast<std::size_t>(cfg.dim);
  std::vector<std::vector<double>> inputs(train_set.size());
  std::vector<MaskingMode> modes(train_set.size());

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    EpochLog log;
    log.epoch = epoch;

    parallel_for(train_set.size(), cfg.jobs, [&](std::size_t i) {
      const Sample& s = *train_set[i];
      AugmentedSample aug = augment_sample(s.clip, s.annotations, ratio, cfg.seed,
                                           static_cast<std::uint64_t>(epoch), cfg.composite);
      modes[i] = aug.mode;
      inputs[i] = mean_clip_features(aug.masked.clip, cfg.patch);
    });
    for (MaskingMode m : modes) ++log.mode_counts[static_cast<std::size_t>(m)];

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);
    SeededRng shuffle_rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(epoch), "#shuffle"));
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.uniform_index(i)]);
    }

    double loss_sum = 0.0;
    std::size_t batches = 0;
    const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t n = std::min(bs, order.size() - start);
      std::vector<std::vector<double>> video_pre(n);
      std::vector<std::vector<double>> text_pre(n);
      Matrix video(n, d);
      Matrix text(n, d);
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t idx = order[start + b];
        video_pre[b] = model.video.project(inputs[idx]);
        text_pre[b] = model.text.project(text_inputs.at(train_set[idx]->label));
        const Embedding ve = l2_normalize(video_pre[b]);
        const Embedding te = l2_normalize(text_pre[b]);
        std::copy(ve.begin(), ve.end(), video.row(b).begin());
        std::copy(te.begin(), te.end(), text.row(b).begin());
      }
      const InfoNceResult step = infonce_loss(video, text, cfg.temperature);
      loss_sum += step.loss;
      ++batches;

      Matrix grad_w(model.video.weights.rows, model.video.weights.cols);
      std::vector<double> grad_b(d, 0.0);
      Matrix grad_h(model.text.weights.rows, model.text.weights.cols);
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t idx = order[start + b];
        const Embedding gv = l2_normalize_backward(video_pre[b], step.grad_video.row(b));
        add_outer(grad_w, gv, inputs[idx]);
        for (std::size_t k = 0; k < d; ++k) grad_b[k] += gv[k];
        const Embedding gt = l2_normalize_backward(text_pre[b], step.grad_text.row(b));
        add_outer(grad_h, gt, text_inputs.at(train_set[idx]->label));
      }
      const double lr = cfg.learning_rate;
      for (std::size_t k = 0; k < grad_w.data.size(); ++k) {
        model.video.weights.data[k] -= lr * grad_w.data[k];
      }
      for (std::size_t k = 0; k < d; ++k) model.video.bias[k] -= lr * grad_b[k];
      for (std::size_t k = 0; k < grad_h.data.size(); ++k) {
        model.text.weights.data[k] -= lr * grad_h.data[k];
      }
    }
    log.mean_loss = loss_sum / static_cast<double>(batches);

    if (!eval_items.empty()) {
      std::map<int, Embedding> label_embs;
      for (const auto& [label, feats] : text_inputs) {
        label_embs[label] = l2_normalize(model.text.project(feats));
      }
      std::vector<PredictionRecord> epoch_records;
      epoch_records.reserve(eval_items.size());
      for (const EvalItem& item : eval_items) {
        const Embedding v = l2_normalize(model.video.project(item.input));
        PredictionRecord rec;
        rec.video_id = item.sample->video_id;
        rec.true_label = item.sample->label;
        rec.variant = item.variant;
        rec.epoch = epoch;
        rec.split = item.sample->split;
        rec.split_index = item.sample->split_index;
        for (const auto& [label, t] : label_embs) rec.scores[label] = dot(v, t);
        epoch_records.push_back(std::move(rec));
      }
      std::map<std::string, std::vector<PredictionRecord>> by_split;
      for (const PredictionRecord& r : epoch_records) by_split[r.split].push_back(r);
      for (const auto& [split, records] : by_split) log.metrics[split] = evaluate(records);
      result.predictions.insert(result.predictions.end(),
                                std::make_move_iterator(epoch_records.begin()),
                                std::make_move_iterator(epoch_records.end()));
    }

    if (on_epoch) on_epoch(log);
    result.epochs.push_back(std::move(log));
  }
  return result;
}

}  // namespace maskaug
