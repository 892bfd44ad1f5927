#include "maskaug/cli.hpp"

#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "maskaug/augmentor.hpp"
#include "maskaug/error.hpp"
#include "maskaug/io.hpp"
#include "maskaug/metrics.hpp"
#include "maskaug/parallel.hpp"
#include "maskaug/synthbias.hpp"
#include "maskaug/zeroshot.hpp"

namespace maskaug::cli {

namespace fs = std::filesystem;

namespace {

/// Bad flags or flag values; maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flags shared by every subcommand, plus config-file fallback: a value from
/// --config applies only when the flag itself was not given.
class Settings {
 public:
  explicit Settings(CLI::App& cmd) : cmd_(cmd) {
    cmd.add_option("--config", config_path_, "Config file (JSON object or key = value lines)");
  }

  template <typename T>
  CLI::Option* add(const std::string& flag, T& target, const std::string& help) {
    CLI::Option* opt = cmd_.add_option(flag, target, help)->capture_default_str();
    std::string key = flag.substr(2);
    std::replace(key.begin(), key.end(), '-', '_');
    bindings_.push_back({key, opt, [&target, key](const std::string& text) {
                           std::istringstream in(text);
                           if constexpr (std::is_same_v<T, std::string>) {
                             target = text;
                           } else if constexpr (std::is_same_v<T, bool>) {
                             target = text == "true" || text == "1" || text == "yes";
                           } else {
                             T value{};
                             in >> value;
                             if (!in || !(in >> std::ws).eof()) {
                               throw UsageError("config key '" + key + "' has invalid value '" +
                                                text + "'");
                             }
                             target = value;
                           }
                         }});
    return opt;
  }

  /// Key accepted in config files as an alias for a flag's key.
  void alias(const std::string& alias, const std::string& key) { aliases_[alias] = key; }

  void apply_config() {
    if (config_path_.empty()) return;
    ConfigValues values;
    try {
      values = load_config(config_path_);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    for (const auto& [alias, key] : aliases_) {
      if (auto it = values.find(alias); it != values.end() && !values.contains(key)) {
        values[key] = it->second;
      }
    }
    for (const auto& [key, value] : values) {
      const bool known = aliases_.contains(key) ||
                         std::any_of(bindings_.begin(), bindings_.end(),
                                     [&](const Binding& b) { return b.key == key; });
      if (!known) throw UsageError("unknown config key '" + key + "' in " + config_path_);
    }
    for (const Binding& b : bindings_) {
      const auto it = values.find(b.key);
      if (it != values.end() && b.option->count() == 0) b.set(it->second);
    }
  }

 private:
  struct Binding {
    std::string key;
    CLI::Option* option;
    std::function<void(const std::string&)> set;
  };

  CLI::App& cmd_;
  std::string config_path_;
  std::vector<Binding> bindings_;
  std::map<std::string, std::string> aliases_;
};

std::array<float, 3> parse_triplet(const std::string& text, const char* what) {
  std::vector<float> values;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      values.push_back(std::stof(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + text + "' is not a number list");
    }
  }
  if (values.size() == 1) return {values[0], values[0], values[0]};
  if (values.size() != 3) throw UsageError(std::string(what) + " takes one or three values");
  return {values[0], values[1], values[2]};
}

struct NormFlags {
  std::string mean = "0.5";
  std::string stddev = "0.25";

  void add(Settings& s) {
    s.add("--norm-mean", mean, "Per-channel normalization mean (one or three values)");
    s.add("--norm-std", stddev, "Per-channel normalization std (one or three values)");
  }
  Normalization get() const {
    Normalization n{parse_triplet(mean, "--norm-mean"), parse_triplet(stddev, "--norm-std")};
    for (float v : n.stddev) {
      if (!(v > 0.0F)) throw UsageError("--norm-std values must be positive");
    }
    return n;
  }
};

RatioSpec checked_ratio(const std::string& text, BiasKind kind) {
  try {
    return parse_ratio(text, kind);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

BiasKind checked_bias_kind(const std::string& text) {
  try {
    return parse_bias_kind(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create directory '" + dir + "': " + ec.message());
}

// ---- synth ----------------------------------------------------------------

struct SynthCommand {
  std::string out_dir;
  SynthSpec spec;
  std::vector<std::string> val_splits;
  int size = 32;
  int jobs = 1;

  void add(CLI::App& app, Settings& s) {
    app.add_option("--out", out_dir, "Output dataset directory")->required();
    s.add("--seed", spec.seed, "Generator seed");
    s.add("--classes", spec.classes, "Number of action classes");
    s.add("--backgrounds", spec.background_colors, "Number of background colors");
    s.add("--object-textures", spec.object_textures, "Number of object textures");
    s.add("--frames", spec.frames, "Frames per clip");
    s.add("--size", size, "Frame width and height");
    s.add("--clips-per-class", spec.train_clips_per_class, "Training clips per class");
    s.add("--val-clips-per-class", spec.val_clips_per_class, "Validation clips per class");
    s.add("--rho-train", spec.rho_train, "Background/label correlation on the train split");
    app.add_option("--val-split", val_splits, "Validation split as name:rho (repeatable)");
    s.add("--bg-jitter", spec.background_jitter, "Per-clip background color jitter (8-bit levels)");
    s.add("--objects", spec.objects, "Add label-correlated object discs (true/false)");
    s.add("--jobs", jobs, "Worker threads");
  }

  int run(std::ostream& out) {
    spec.width = spec.height = size;
    if (!val_splits.empty()) {
      spec.val_splits.clear();
      for (const std::string& v : val_splits) {
        const auto colon = v.rfind(':');
        if (colon == std::string::npos || colon == 0) throw UsageError("--val-split expects name:rho");
        try {
          spec.val_splits.push_back({v.substr(0, colon), std::stod(v.substr(colon + 1))});
        } catch (const std::exception&) {
          throw UsageError("--val-split '" + v + "': rho is not a number");
        }
      }
    }
    try {
      spec.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    ensure_dir(out_dir);
    const SynthDataset data = generate(spec, jobs);
    write_synth_dataset(data, out_dir, jobs);
    out << "wrote " << data.clips.size() << " clips (" << spec.classes << " classes) to "
        << out_dir << "/manifest.jsonl\n";
    return kExitOk;
  }
};

// ---- mask -----------------------------------------------------------------

struct MaskCommand {
  std::string manifest;
  std::string out_dir;
  std::string mode_name;
  std::string split;
  std::uint64_t seed = 0;
  double min_color_distance = kDefaultMinColorDistance;
  int jobs = 1;
  NormFlags norm;

  void add(CLI::App& app, Settings& s) {
    s.add("--manifest", manifest, "Dataset manifest (JSONL)");
    app.add_option("--out", out_dir, "Output directory for masked frames")->required();
    s.add("--mode", mode_name,
          "none | background | object-bbox | object-shape | bg-and-object | person-bbox");
    s.add("--seed", seed, "Color seed");
    app.add_option("--split", split, "Only mask entries of this split");
    s.add("--min-color-distance", min_color_distance, "Minimum bg/object color distance");
    s.add("--jobs", jobs, "Worker threads");
    norm.add(s);
  }

  int run(std::ostream& out, std::ostream& err) {
    if (manifest.empty()) throw UsageError("--manifest is required");
    if (mode_name.empty()) throw UsageError("--mode is required");
    const auto mode = parse_masking_mode(mode_name);
    if (!mode) throw UsageError("unknown --mode '" + mode_name + "'");
    const Normalization n = norm.get();

    const std::vector<ManifestEntry> all = load_manifest(manifest);
    std::vector<ManifestEntry> entries;
    for (const ManifestEntry& e : all) {
      if (split.empty() || e.split == split) entries.push_back(e);
    }
    const fs::path base = fs::path(manifest).parent_path();
    ensure_dir(out_dir);
    std::vector<std::size_t> empty_frames(entries.size(), 0);
    std::vector<ManifestEntry> written(entries.size());
    parallel_for(entries.size(), jobs, [&](std::size_t i) {
      const ManifestEntry& e = entries[i];
      VideoClip clip{e.video_id, {}};
      for (const std::string& f : e.frames) {
        const fs::path p = fs::path(f).is_absolute() ? fs::path(f) : base / f;
        clip.frames.push_back(normalize(read_image(p.string()), n));
      }
      const fs::path ann_path =
          fs::path(e.annotations).is_absolute() ? fs::path(e.annotations) : base / e.annotations;
      const AnnotationDoc doc = load_annotations(ann_path.string());
      SeededRng rng(derive_seed(seed, 0, e.video_id));
      const MaskedClip masked =
          mask_clip(clip, doc.frames, *mode, rng, CompositeOptions{min_color_distance});
      empty_frames[i] = masked.frames_without_person.size();

      ManifestEntry& w = written[i];
      w = e;
      w.frames.clear();
      w.annotations = fs::absolute(ann_path).lexically_normal().generic_string();
      const fs::path dir = fs::path(out_dir) / e.video_id;
      fs::create_directories(dir);
      for (std::size_t t = 0; t < masked.clip.frames.size(); ++t) {
        const std::string name = fs::path(e.frames[t]).filename().string();
        write_ppm(denormalize(masked.clip.frames[t], n), (dir / name).string());
        w.frames.push_back((fs::path(e.video_id) / name).generic_string());
      }
    });
    write_manifest(written, (fs::path(out_dir) / "manifest.jsonl").string());
    std::size_t empty_total = 0;
    for (std::size_t c : empty_frames) empty_total += c;
    if (empty_total > 0) {
      err << "warning: " << empty_total << " frame(s) had an empty person mask and were fully painted\n";
    }
    out << "masked " << entries.size() << " clips with mode " << to_string(*mode) << " into "
        << out_dir << '\n';
    return kExitOk;
  }
};

// ---- augment --------------------------------------------------------------

struct AugmentCommand {
  std::string manifest;
  std::string ratio;
  std::string bias_kind = "background";
  std::string out_path;
  std::uint64_t seed = 0;
  int epochs = 1;

  void add(CLI::App& app, Settings& s) {
    s.add("--manifest", manifest, "Dataset manifest (JSONL)");
    s.add("--ratio", ratio, "Masking ratio, e.g. 0.5:0.5 or 0.33:0:0.33:0.33");
    s.add("--bias-kind", bias_kind, "background | object");
    s.add("--seed", seed, "Global augmentation seed");
    s.add("--epochs", epochs, "Epochs to simulate");
    app.add_option("--out", out_path, "Write frequencies as JSON");
    s.alias("global_seed", "seed");
  }

  int run(std::ostream& out) {
    if (manifest.empty()) throw UsageError("--manifest is required");
    if (ratio.empty()) throw UsageError("--ratio is required");
    if (epochs < 1) throw UsageError("--epochs must be >= 1");
    const BiasKind kind = checked_bias_kind(bias_kind);
    const RatioSpec spec = checked_ratio(ratio, kind);

    const std::vector<ManifestEntry> entries = load_manifest(manifest, false);
    std::array<std::size_t, kMaskingModeCount> counts{};
    std::size_t draws = 0;
    for (int epoch = 1; epoch <= epochs; ++epoch) {
      for (const ManifestEntry& e : entries) {
        if (e.split != "train") continue;
        SeededRng rng(derive_seed(seed, static_cast<std::uint64_t>(epoch), e.video_id));
        ++counts[static_cast<std::size_t>(sample_mode(spec, rng))];
        ++draws;
      }
    }
    if (draws == 0) throw Error(ErrorKind::Schema, "manifest has no 'train' entries");

    nlohmann::ordered_json j{{"ratio", ratio}, {"bias_kind", bias_kind}, {"draws", draws}};
    out << "mode            target  observed   count\n";
    for (MaskingMode m : kAllMaskingModes) {
      const double target = spec.weight(m);
      if (target == 0.0 && counts[static_cast<std::size_t>(m)] == 0) continue;
      const double freq = static_cast<double>(counts[static_cast<std::size_t>(m)]) / draws;
      out << std::left << std::setw(14) << to_string(m) << std::right << std::fixed
          << std::setprecision(4) << std::setw(8) << target << std::setw(10) << freq
          << std::setw(8) << counts[static_cast<std::size_t>(m)] << '\n';
      j["modes"][std::string(to_string(m))] = {{"target", target}, {"observed", freq},
                                               {"count", counts[static_cast<std::size_t>(m)]}};
    }
    out.unsetf(std::ios::fixed);
    if (!out_path.empty()) write_text_file(out_path, j.dump(2) + "\n");
    return kExitOk;
  }
};

// ---- train ----------------------------------------------------------------

struct TrainCommand {
  std::string manifest;
  std::string out_dir;
  std::string ratio = "1:0";
  std::string bias_kind = "background";
  TrainConfig cfg;
  NormFlags norm;

  void add(CLI::App& app, Settings& s) {
    s.add("--manifest", manifest, "Dataset manifest (JSONL)");
    app.add_option("--out", out_dir, "Output directory")->required();
    s.add("--ratio", ratio, "Masking ratio, e.g. 1:0, 0.5:0.5, 0.33:0:0.33:0.33");
    s.add("--bias-kind", bias_kind, "background | object");
    s.add("--seed", cfg.seed, "Global seed (weights, augmentation, shuffling)");
    s.add("--epochs", cfg.epochs, "Training epochs");
    s.add("--lr", cfg.learning_rate, "Gradient-descent learning rate");
    s.add("--temperature", cfg.temperature, "infoNCE temperature");
    s.add("--batch-size", cfg.batch_size, "Mini-batch size");
    s.add("--dim", cfg.dim, "Embedding dimension");
    s.add("--patch", cfg.patch, "Encoder input resolution (P x P)");
    s.add("--hash-dim", cfg.hash_dim, "Hashed text feature dimension");
    s.add("--eval-seed", cfg.eval_seed, "Color seed for validation masking");
    s.add("--min-color-distance", cfg.composite.min_color_distance,
          "Minimum bg/object color distance");
    s.add("--jobs", cfg.jobs, "Worker threads");
    s.alias("global_seed", "seed");
    s.alias("learning_rate", "lr");
    norm.add(s);
  }

  int run(std::ostream& out) {
    if (manifest.empty()) throw UsageError("--manifest is required");
    cfg.bias_kind = checked_bias_kind(bias_kind);
    const RatioSpec spec = checked_ratio(ratio, cfg.bias_kind);
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const Normalization n = norm.get();

    const TrainingData data = load_dataset(manifest, n, cfg.jobs);
    ensure_dir(out_dir);
    const fs::path dir(out_dir);
    std::ofstream log((dir / "train_log.jsonl").string(), std::ios::trunc);
    if (!log) throw Error(ErrorKind::Io, "cannot write train_log.jsonl in '" + out_dir + "'");

    const TrainResult result = train(data, spec, cfg, [&](const EpochLog& e) {
      nlohmann::ordered_json j{{"epoch", e.epoch}, {"loss", e.mean_loss}};
      for (MaskingMode m : kAllMaskingModes) {
        const std::size_t c = e.mode_counts[static_cast<std::size_t>(m)];
        if (c > 0) j["modes"][std::string(to_string(m))] = c;
      }
      out << "epoch " << std::setw(3) << e.epoch << "  loss " << std::fixed << std::setprecision(4)
          << e.mean_loss;
      for (const auto& [split, t] : e.metrics) {
        j["metrics"][split] = {{"top1", t.top1}, {"b_top1", t.b_top1}, {"p_top1", t.p_top1}};
        out << "  " << split << " " << std::setprecision(2) << t.top1 << '/' << t.b_top1 << '/'
            << t.p_top1;
      }
      out << '\n';
      out.unsetf(std::ios::fixed);
      log << j.dump() << '\n';
    });
    write_predictions(result.predictions, (dir / "predictions.jsonl").string());
    save_model(result.model, cfg, (dir / "model.json").string());
    out << "ratio " << ratio << " (" << bias_kind << "), wrote " << result.predictions.size()
        << " predictions to " << (dir / "predictions.jsonl").string() << '\n';
    return kExitOk;
  }
};

// ---- eval / report --------------------------------------------------------

std::vector<PredictionRecord> load_logs(const std::vector<std::string>& paths) {
  std::vector<PredictionRecord> records;
  for (const std::string& p : paths) {
    auto part = load_predictions(p);
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  if (records.empty()) throw Error(ErrorKind::Schema, "prediction logs are empty");
  return records;
}

struct EvalCommand {
  std::vector<std::string> logs;
  std::string out_path;

  void add(CLI::App& app) {
    app.add_option("--log", logs, "Prediction log(s) (JSONL)")->required();
    app.add_option("--out", out_path, "Write metrics JSON");
  }

  int run(std::ostream& out) {
    const MetricsReport report = build_report(load_logs(logs));
    out << render_epoch_table(report);
    if (!out_path.empty()) write_text_file(out_path, render_report_json(report));
    return kExitOk;
  }
};

struct ReportCommand {
  std::vector<std::string> logs;
  std::string out_path;

  void add(CLI::App& app) {
    app.add_option("--log", logs, "Prediction log(s) (JSONL); three split runs are averaged")
        ->required();
    app.add_option("--out", out_path, "Write the report JSON");
  }

  int run(std::ostream& out) {
    const MetricsReport report = build_report(load_logs(logs));
    const std::string table = render_report_table(report);
    out << table;
    if (!out_path.empty()) {
      write_text_file(out_path, render_report_json(report));
      write_text_file(fs::path(out_path).replace_extension(".txt").string(), table);
    }
    return kExitOk;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Masking augmentation and static-bias probing for action recognition", "maskaug"};
  app.require_subcommand(1);

  SynthCommand synth;
  MaskCommand mask;
  AugmentCommand augment;
  TrainCommand train_cmd;
  EvalCommand eval;
  ReportCommand report;

  CLI::App* synth_app = app.add_subcommand("synth", "Generate a synthetic bias dataset");
  Settings synth_settings(*synth_app);
  synth.add(*synth_app, synth_settings);

  CLI::App* mask_app = app.add_subcommand("mask", "Apply one masking mode and write frames");
  Settings mask_settings(*mask_app);
  mask.add(*mask_app, mask_settings);

  CLI::App* augment_app = app.add_subcommand("augment", "Dry-run the masking-ratio scheduler");
  Settings augment_settings(*augment_app);
  augment.add(*augment_app, augment_settings);

  CLI::App* train_app = app.add_subcommand("train", "Train the toy zero-shot model");
  Settings train_settings(*train_app);
  train_cmd.add(*train_app, train_settings);

  CLI::App* eval_app = app.add_subcommand("eval", "Per-epoch metrics from prediction logs");
  eval.add(*eval_app);

  CLI::App* report_app = app.add_subcommand("report", "top1 / B-top1 / P-top1 results table");
  report.add(*report_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth_app->parsed()) {
      synth_settings.apply_config();
      return synth.run(out);
    }
    if (mask_app->parsed()) {
      mask_settings.apply_config();
      return mask.run(out, err);
    }
    if (augment_app->parsed()) {
      augment_settings.apply_config();
      return augment.run(out);
    }
    if (train_app->parsed()) {
      train_settings.apply_config();
      return train_cmd.run(out);
    }
    if (eval_app->parsed()) return eval.run(out);
    if (report_app->parsed()) return report.run(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace maskaug::cli
