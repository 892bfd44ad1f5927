#include "maskaug/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "maskaug/error.hpp"
#include "maskaug/parallel.hpp"
#include "maskaug/rng.hpp"

namespace maskaug {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Where {
  const std::string& path;
  std::optional<std::size_t> line;
};

[[noreturn]] void schema_error(const Where& at, const std::string& detail) {
  throw FileFormatError(ErrorKind::Schema, at.path, at.line, detail);
}

const json& field(const json& obj, const char* key, const Where& at) {
  if (!obj.is_object()) schema_error(at, "expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(at, std::string("missing field '") + key + "'");
  return *it;
}

std::string get_string(const json& obj, const char* key, const Where& at) {
  const json& v = field(obj, key, at);
  if (!v.is_string()) schema_error(at, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

int get_int(const json& obj, const char* key, const Where& at) {
  const json& v = field(obj, key, at);
  if (!v.is_number_integer()) schema_error(at, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

int get_int_or(const json& obj, const char* key, int fallback, const Where& at) {
  if (!obj.contains(key)) return fallback;
  return get_int(obj, key, at);
}

json parse_json(const std::string& text, const Where& at) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileFormatError(ErrorKind::Parse, at.path, at.line, e.what());
  }
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  return out;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

json rle_to_json(const BinaryMask& m) {
  const RleMask r = encode_rle(m);
  return json{{"size", {r.height, r.width}}, {"runs", r.runs}};
}

BinaryMask rle_from_json(const json& j, std::size_t frame, const Where& at) {
  const json& size = field(j, "size", at);
  if (!size.is_array() || size.size() != 2 || !size[0].is_number_integer() ||
      !size[1].is_number_integer()) {
    schema_error(at, "frame " + std::to_string(frame) + ": 'size' must be [H, W]");
  }
  const json& runs = field(j, "runs", at);
  if (!runs.is_array()) schema_error(at, "frame " + std::to_string(frame) + ": 'runs' must be an array");
  RleMask r{size[1].get<int>(), size[0].get<int>(), {}};
  r.runs.reserve(runs.size());
  for (const json& v : runs) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 0xFFFFFFFFLL) {
      throw CorruptAnnotationError("RLE runs must be non-negative integers", frame);
    }
    r.runs.push_back(v.get<std::uint32_t>());
  }
  try {
    return decode_rle(r);
  } catch (const CorruptAnnotationError& e) {
    throw CorruptAnnotationError(e.detail(), frame);
  }
}

json boxes_to_json(const std::vector<BBox>& boxes) {
  json arr = json::array();
  for (const BBox& b : boxes) arr.push_back({b.x_min, b.y_min, b.x_max, b.y_max});
  return arr;
}

std::vector<BBox> boxes_from_json(const json& j, std::size_t frame, const Where& at) {
  if (!j.is_array()) schema_error(at, "frame " + std::to_string(frame) + ": boxes must be an array");
  std::vector<BBox> out;
  for (const json& b : j) {
    if (!b.is_array() || b.size() != 4 ||
        !std::all_of(b.begin(), b.end(), [](const json& v) { return v.is_number_integer(); })) {
      schema_error(at, "frame " + std::to_string(frame) + ": box must be [x0, y0, x1, y1]");
    }
    out.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()});
  }
  return out;
}

void write_u32le(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                         static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(bytes, 4);
}

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string read_binary(const std::string& path) {
  auto in = open_in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// ---- text -----------------------------------------------------------------

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path, std::ios::binary);
  out << content;
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) { return read_binary(path); }

// ---- manifest -------------------------------------------------------------

std::vector<ManifestEntry> load_manifest(const std::string& path, bool check_paths) {
  auto in = open_in(path);
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Where at{path, lineno};
    const json j = parse_json(line, at);
    ManifestEntry e;
    e.video_id = get_string(j, "video_id", at);
    e.label_id = get_int(j, "label_id", at);
    e.label_text = get_string(j, "label_text", at);
    e.split = get_string(j, "split", at);
    e.split_index = get_int_or(j, "split_index", 1, at);
    e.annotations = get_string(j, "annotations", at);
    const json& frames = field(j, "frames", at);
    if (!frames.is_array()) schema_error(at, "field 'frames' must be an array");
    for (const json& f : frames) {
      if (!f.is_string()) schema_error(at, "frame paths must be strings");
      e.frames.push_back(f.get<std::string>());
    }
    if (e.video_id.empty()) schema_error(at, "video_id must be non-empty");
    if (e.label_text.empty()) schema_error(at, "label_text must be non-empty");
    if (e.frames.empty()) schema_error(at, "video has no frames");
    if (e.split_index < 1 || e.split_index > 3) schema_error(at, "split_index must be in 1..3");
    if (check_paths) {
      for (const std::string& f : e.frames) {
        if (!fs::exists(resolve(base, f))) schema_error(at, "frame file '" + f + "' does not exist");
      }
      if (!fs::exists(resolve(base, e.annotations))) {
        schema_error(at, "annotation file '" + e.annotations + "' does not exist");
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void write_manifest(std::span<const ManifestEntry> entries, const std::string& path) {
  auto out = open_out(path);
  for (const ManifestEntry& e : entries) {
    const json j{{"video_id", e.video_id}, {"label_id", e.label_id},   {"label_text", e.label_text},
                 {"split", e.split},       {"split_index", e.split_index}, {"frames", e.frames},
                 {"annotations", e.annotations}};
    out << j.dump() << '\n';
  }
}

// ---- annotations ----------------------------------------------------------

AnnotationDoc load_annotations(const std::string& path) {
  const Where at{path, std::nullopt};
  const json j = parse_json(read_text_file(path), at);
  AnnotationDoc doc;
  if (j.is_object() && j.contains("provenance")) doc.provenance = get_string(j, "provenance", at);
  const json& frames = field(j, "frames", at);
  if (!frames.is_array()) schema_error(at, "'frames' must be an array");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const json& f = frames[i];
    BinaryMask person = rle_from_json(field(f, "person_shape", at), i, at);
    BinaryMask object = rle_from_json(field(f, "object_shape", at), i, at);
    if (!person.same_shape(object)) {
      throw CorruptAnnotationError("person and object masks differ in size", i);
    }
    doc.frames.push_back({std::move(person), std::move(object),
                          boxes_from_json(field(f, "person_boxes", at), i, at),
                          boxes_from_json(field(f, "object_boxes", at), i, at)});
  }
  return doc;
}

void write_annotations(const AnnotationDoc& doc, const std::string& path) {
  json frames = json::array();
  for (const FrameAnnotations& f : doc.frames) {
    frames.push_back({{"person_shape", rle_to_json(f.person_shape)},
                      {"object_shape", rle_to_json(f.object_shape)},
                      {"person_boxes", boxes_to_json(f.person_boxes)},
                      {"object_boxes", boxes_to_json(f.object_boxes)}});
  }
  const json j{{"provenance", doc.provenance}, {"frames", frames}};
  write_text_file(path, j.dump() + "\n");
}

// ---- images ---------------------------------------------------------------

Image8 read_ppm(const std::string& path) {
  const std::string bytes = read_binary(path);
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> void {
    throw FileFormatError(ErrorKind::Parse, path, std::nullopt, "PPM: " + why);
  };
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> int {
    skip_space();
    long value = 0;
    const std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1 << 24) fail("header value too large");
      ++pos;
    }
    if (pos == start) fail("malformed header");
    return static_cast<int>(value);
  };
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') fail("missing P6 magic");
  pos = 2;
  const int width = read_int();
  const int height = read_int();
  const int maxval = read_int();
  if (width < 1 || height < 1) fail("non-positive dimensions");
  if (maxval != 255) fail("only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    fail("missing separator before pixel data");
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - pos < n) fail("truncated pixel data");
  Image8 img{width, height, std::vector<std::uint8_t>(n)};
  std::memcpy(img.pixels.data(), bytes.data() + pos, n);
  return img;
}

void write_ppm(const Image8& image, const std::string& path) {
  auto out = open_out(path, std::ios::binary);
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

Image8 read_raw_rgb8(const std::string& path) {
  const std::string bytes = read_binary(path);
  if (bytes.size() < 12 || bytes.compare(0, 4, "RGB8") != 0) {
    throw FileFormatError(ErrorKind::Parse, path, std::nullopt, "raw RGB8: missing header");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint32_t width = read_u32le(p + 4);
  const std::uint32_t height = read_u32le(p + 8);
  if (width < 1 || height < 1 || width > (1U << 15) || height > (1U << 15)) {
    throw FileFormatError(ErrorKind::Parse, path, std::nullopt, "raw RGB8: bad dimensions");
  }
  const std::size_t n = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - 12 != n) {
    throw FileFormatError(ErrorKind::Parse, path, std::nullopt, "raw RGB8: payload size mismatch");
  }
  Image8 img{static_cast<int>(width), static_cast<int>(height), std::vector<std::uint8_t>(n)};
  std::memcpy(img.pixels.data(), bytes.data() + 12, n);
  return img;
}

void write_raw_rgb8(const Image8& image, const std::string& path) {
  auto out = open_out(path, std::ios::binary);
  out.write("RGB8", 4);
  write_u32le(out, static_cast<std::uint32_t>(image.width));
  write_u32le(out, static_cast<std::uint32_t>(image.height));
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

Image8 read_image(const std::string& path) {
  char magic[4] = {};
  {
    auto in = open_in(path, std::ios::binary);
    in.read(magic, 4);
  }
  if (std::memcmp(magic, "RGB8", 4) == 0) return read_raw_rgb8(path);
  return read_ppm(path);
}

// ---- dataset --------------------------------------------------------------

TrainingData load_dataset(const std::string& manifest_path, const Normalization& norm, int jobs) {
  const std::vector<ManifestEntry> entries = load_manifest(manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();
  TrainingData data;
  for (const ManifestEntry& e : entries) {
    const auto [it, inserted] = data.label_texts.try_emplace(e.label_id, e.label_text);
    if (!inserted && it->second != e.label_text) {
      throw Error(ErrorKind::Schema, "label " + std::to_string(e.label_id) +
                                         " has conflicting texts in '" + manifest_path + "'");
    }
  }
  data.samples.resize(entries.size());
  parallel_for(entries.size(), jobs, [&](std::size_t i) {
    const ManifestEntry& e = entries[i];
    Sample& s = data.samples[i];
    s.video_id = e.video_id;
    s.label = e.label_id;
    s.split = e.split;
    s.split_index = e.split_index;
    s.clip.video_id = e.video_id;
    for (const std::string& f : e.frames) {
      s.clip.frames.push_back(normalize(read_image(resolve(base, f).string()), norm));
    }
    validate_clip(s.clip);
    const std::string ann_path = resolve(base, e.annotations).string();
    AnnotationDoc doc = load_annotations(ann_path);
    if (doc.frames.size() != s.clip.frames.size()) {
      throw FileFormatError(ErrorKind::Schema, ann_path, std::nullopt,
                            std::to_string(doc.frames.size()) + " annotated frames, video has " +
                                std::to_string(s.clip.frames.size()));
    }
    const Frame& first = s.clip.frames.front();
    for (std::size_t t = 0; t < doc.frames.size(); ++t) {
      const BinaryMask& m = doc.frames[t].person_shape;
      if (m.width() != first.width() || m.height() != first.height()) {
        throw CorruptAnnotationError("mask size differs from frame size in '" + ann_path + "'", t);
      }
    }
    s.annotations = std::move(doc.frames);
  });
  return data;
}

// ---- predictions ----------------------------------------------------------

void write_predictions(std::span<const PredictionRecord> records, const std::string& path) {
  auto out = open_out(path);
  for (const PredictionRecord& r : records) {
    json scores = json::object();
    for (const auto& [label, score] : r.scores) scores[std::to_string(label)] = score;
    const json j{{"video_id", r.video_id}, {"true_label", r.true_label},
                 {"variant", std::string(to_string(r.variant))}, {"epoch", r.epoch},
                 {"split", r.split},       {"split_index", r.split_index},
                 {"scores", scores}};
    out << j.dump() << '\n';
  }
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

std::vector<PredictionRecord> load_predictions(const std::string& path) {
  auto in = open_in(path);
  std::vector<PredictionRecord> records;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Where at{path, lineno};
    const json j = parse_json(line, at);
    PredictionRecord r;
    r.video_id = get_string(j, "video_id", at);
    r.true_label = get_int(j, "true_label", at);
    const std::string variant = get_string(j, "variant", at);
    const auto v = parse_eval_variant(variant);
    if (!v) schema_error(at, "unknown variant '" + variant + "'");
    r.variant = *v;
    r.epoch = get_int(j, "epoch", at);
    r.split = get_string(j, "split", at);
    r.split_index = get_int_or(j, "split_index", 1, at);
    const json& scores = field(j, "scores", at);
    if (!scores.is_object() || scores.empty()) schema_error(at, "'scores' must be a non-empty object");
    for (const auto& [key, value] : scores.items()) {
      int label = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), label);
      if (ec != std::errc{} || ptr != key.data() + key.size()) {
        schema_error(at, "score key '" + key + "' is not a label id");
      }
      if (!value.is_number()) schema_error(at, "score for label " + key + " is not a number");
      const double s = value.get<double>();
      if (!std::isfinite(s)) schema_error(at, "score for label " + key + " is not finite");
      r.scores[label] = s;
    }
    if (!r.scores.contains(r.true_label)) schema_error(at, "true_label missing from scores");
    records.push_back(std::move(r));
  }
  return records;
}

// ---- model ----------------------------------------------------------------

std::uint64_t config_hash(const TrainConfig& cfg) {
  std::ostringstream s;
  s << std::setprecision(17) << "batch_size=" << cfg.batch_size << ";bias_kind="
    << to_string(cfg.bias_kind) << ";dim=" << cfg.dim << ";epochs=" << cfg.epochs
    << ";eval_seed=" << cfg.eval_seed << ";hash_dim=" << cfg.hash_dim
    << ";init_scale=" << cfg.init_scale << ";lr=" << cfg.learning_rate
    << ";min_color_distance=" << cfg.composite.min_color_distance << ";patch=" << cfg.patch
    << ";seed=" << cfg.seed << ";temperature=" << cfg.temperature;
  return fnv1a64(s.str());
}

void save_model(const ToyModel& model, const TrainConfig& cfg, const std::string& path) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  const json j{{"format", "maskaug-toy-model"},
               {"version", 1},
               {"patch", model.video.patch},
               {"dim", model.video.dim},
               {"hash_dim", model.text.hash_dim},
               {"seed", cfg.seed},
               {"config_hash", hash},
               {"video_weights", model.video.weights.data},
               {"video_bias", model.video.bias},
               {"text_weights", model.text.weights.data}};
  write_text_file(path, j.dump() + "\n");
}

ToyModel load_model(const std::string& path) {
  const Where at{path, std::nullopt};
  const json j = parse_json(read_text_file(path), at);
  if (get_string(j, "format", at) != "maskaug-toy-model") schema_error(at, "not a model checkpoint");
  ToyModel m;
  m.video.patch = get_int(j, "patch", at);
  m.video.dim = get_int(j, "dim", at);
  m.text.hash_dim = get_int(j, "hash_dim", at);
  m.text.dim = m.video.dim;
  if (m.video.patch < 1 || m.video.dim < 2 || m.text.hash_dim < 1) schema_error(at, "bad dimensions");
  auto load_vec = [&](const char* key, std::size_t expected) {
    const json& arr = field(j, key, at);
    if (!arr.is_array() || arr.size() != expected) {
      schema_error(at, std::string("'") + key + "' must hold " + std::to_string(expected) + " numbers");
    }
    return arr.get<std::vector<double>>();
  };
  const auto d = static_cast<std::size_t>(m.video.dim);
  m.video.weights = Matrix(d, m.video.input_size());
  m.video.weights.data = load_vec("video_weights", m.video.weights.data.size());
  m.video.bias = load_vec("video_bias", d);
  m.text.weights = Matrix(d, static_cast<std::size_t>(m.text.hash_dim));
  m.text.weights.data = load_vec("text_weights", m.text.weights.data.size());
  return m;
}

// ---- config ---------------------------------------------------------------

ConfigValues parse_config(const std::string& text, const std::string& origin) {
  ConfigValues values;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = parse_json(text, Where{origin, std::nullopt});
    if (!j.is_object()) schema_error(Where{origin, std::nullopt}, "config must be a flat object");
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        values[key] = value.get<std::string>();
      } else if (value.is_primitive() && !value.is_null()) {
        values[key] = value.dump();
      } else {
        schema_error(Where{origin, std::nullopt}, "config value for '" + key + "' must be scalar");
      }
    }
    return values;
  }
  std::istringstream in(text);
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FileFormatError(ErrorKind::Parse, origin, lineno, "expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw FileFormatError(ErrorKind::Parse, origin, lineno, "empty key");
    values[key] = value;
  }
  return values;
}

ConfigValues load_config(const std::string& path) { return parse_config(read_text_file(path), path); }

// ---- reports --------------------------------------------------------------

namespace {

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

json triple_json(const MetricTriple& t) {
  return json{{"top1", t.top1}, {"b_top1", t.b_top1}, {"p_top1", t.p_top1}};
}

}  // namespace

std::string render_report_table(const MetricsReport& report) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "split" << std::right << std::setw(9) << "top1"
      << std::setw(9) << "B-top1" << std::setw(9) << "P-top1" << "  best epoch(s)\n";
  for (const GroupReport& g : report.groups) {
    out << std::left << std::setw(16) << g.name << std::right << std::setw(9) << fixed2(g.value.top1)
        << std::setw(9) << fixed2(g.value.b_top1) << std::setw(9) << fixed2(g.value.p_top1) << "  ";
    for (std::size_t i = 0; i < g.splits.size(); ++i) {
      if (i) out << ',';
      out << g.splits[i].best.epoch;
    }
    if (g.splits.size() == 3) out << " (mean of 3 splits)";
    out << '\n';
  }
  out << "B-top1/P-top1 taken from the epoch with the best unmasked top1.\n";
  return out.str();
}

std::string render_report_json(const MetricsReport& report) {
  json groups = json::array();
  for (const GroupReport& g : report.groups) {
    json splits = json::array();
    for (const SplitResult& s : g.splits) {
      json series = json::array();
      for (const EpochMetrics& e : s.series) {
        json row = triple_json(e.metrics);
        row["epoch"] = e.epoch;
        series.push_back(row);
      }
      splits.push_back({{"split_index", s.split_index},
                        {"best_epoch", s.best.epoch},
                        {"best", triple_json(s.best.metrics)},
                        {"epochs", series}});
    }
    json entry{{"split", g.name}};
    entry.update(triple_json(g.value));
    entry["splits"] = splits;
    groups.push_back(entry);
  }
  const json j{{"columns", {"top1", "b_top1", "p_top1"}},
               {"selection_rule", std::string(kBestEpochRule)},
               {"groups", groups}};
  return j.dump(2) + "\n";
}

std::string render_epoch_table(const MetricsReport& report) {
  std::ostringstream out;
  for (const GroupReport& g : report.groups) {
    for (const SplitResult& s : g.splits) {
      out << "split " << g.name << " #" << s.split_index << '\n';
      out << std::right << std::setw(6) << "epoch" << std::setw(9) << "top1" << std::setw(9)
          << "B-top1" << std::setw(9) << "P-top1" << '\n';
      for (const EpochMetrics& e : s.series) {
        out << std::setw(6) << e.epoch << std::setw(9) << fixed2(e.metrics.top1) << std::setw(9)
            << fixed2(e.metrics.b_top1) << std::setw(9) << fixed2(e.metrics.p_top1)
            << (e.epoch == s.best.epoch ? "  *" : "") << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace maskaug
