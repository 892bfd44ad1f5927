#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "maskaug/augmentor.hpp"
#include "maskaug/cli.hpp"
#include "maskaug/compositor.hpp"
#include "maskaug/error.hpp"
#include "maskaug/io.hpp"
#include "maskaug/metrics.hpp"
#include "maskaug/synthbias.hpp"
#include "maskaug/zeroshot.hpp"

namespace py = pybind11;
using namespace maskaug;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;
using Box = std::array<int, 4>;

BinaryMask to_mask(const BoolArray& a) {
  if (a.ndim() != 2) throw py::value_error("mask must be a 2-D (H, W) array");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  BinaryMask m(w, h);
  const bool* p = a.data();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) m.set(x, y, p[static_cast<std::size_t>(y) * w + x]);
  return m;
}

py::array_t<bool> from_mask(const BinaryMask& m) {
  py::array_t<bool> out({m.height(), m.width()});
  bool* p = out.mutable_data();
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) p[static_cast<std::size_t>(y) * m.width() + x] = m.at(x, y);
  return out;
}

Frame to_frame(const FloatArray& a) {
  if (a.ndim() != 3 || a.shape(2) != 3) throw py::value_error("frame must be an (H, W, 3) array");
  const int h = static_cast<int>(a.shape(0));
  const int w = static_cast<int>(a.shape(1));
  return Frame(w, h, std::vector<float>(a.data(), a.data() + a.size()));
}

py::array_t<float> from_frame(const Frame& f) {
  py::array_t<float> out({f.height(), f.width(), 3});
  std::memcpy(out.mutable_data(), f.data().data(), f.data().size() * sizeof(float));
  return out;
}

Matrix to_matrix(const DoubleArray& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array");
  Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  std::memcpy(m.data.data(), a.data(), m.data.size() * sizeof(double));
  return m;
}

py::array_t<double> from_matrix(const Matrix& m) {
  py::array_t<double> out({m.rows, m.cols});
  std::memcpy(out.mutable_data(), m.data.data(), m.data.size() * sizeof(double));
  return out;
}

MaskColor to_color(const std::array<float, 3>& c) { return {c[0], c[1], c[2]}; }
std::array<float, 3> from_color(const MaskColor& c) { return {c.r, c.g, c.b}; }

std::vector<BBox> to_boxes(const std::vector<Box>& boxes) {
  std::vector<BBox> out;
  for (const Box& b : boxes) out.push_back({b[0], b[1], b[2], b[3]});
  return out;
}

MaskingMode mode_from(const std::string& name) {
  const auto m = parse_masking_mode(name);
  if (!m) throw py::value_error("unknown masking mode '" + name + "'");
  return *m;
}

py::array_t<float> mask_frame(const FloatArray& frame, const std::string& mode,
                              const std::array<float, 3>& color,
                              std::optional<std::array<float, 3>> object_color,
                              std::optional<BoolArray> person_shape,
                              std::optional<BoolArray> object_shape,
                              const std::vector<Box>& person_boxes,
                              const std::vector<Box>& object_boxes) {
  const Frame f = to_frame(frame);
  FrameAnnotations ann = FrameAnnotations::empty(f.width(), f.height());
  if (person_shape) ann.person_shape = to_mask(*person_shape);
  if (object_shape) ann.object_shape = to_mask(*object_shape);
  ann.person_boxes = to_boxes(person_boxes);
  ann.object_boxes = to_boxes(object_boxes);
  if (!ann.person_shape.same_shape(ann.object_shape) || ann.person_shape.width() != f.width() ||
      ann.person_shape.height() != f.height()) {
    throw py::value_error("mask shapes must match the frame");
  }
  const MaskColor c = to_color(color);
  switch (mode_from(mode)) {
    case MaskingMode::NoMask: return from_frame(f);
    case MaskingMode::Background: return from_frame(mask_background(f, ann, c).frame);
    case MaskingMode::ObjectBbox: return from_frame(mask_object_bbox(f, ann, c));
    case MaskingMode::ObjectShape: return from_frame(mask_object_shape(f, ann, c));
    case MaskingMode::BackgroundAndObject:
      if (!object_color) throw py::value_error("bg-and-object needs object_color");
      return from_frame(mask_background_and_object(f, ann, c, to_color(*object_color)));
    case MaskingMode::PersonBbox: return from_frame(mask_person_bbox(f, ann, c));
  }
  throw py::value_error("unhandled masking mode");
}

std::map<std::string, double> ratio_dict(const std::string& text, const std::string& kind) {
  const RatioSpec spec = parse_ratio(text, parse_bias_kind(kind));
  std::map<std::string, double> out;
  for (MaskingMode m : kAllMaskingModes) {
    if (spec.weight(m) > 0.0) out[std::string(to_string(m))] = spec.weight(m);
  }
  return out;
}

std::vector<std::string> sample_modes(const std::string& text, const std::string& kind,
                                      std::uint64_t seed, std::size_t count) {
  const RatioSpec spec = parse_ratio(text, parse_bias_kind(kind));
  SeededRng rng(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(to_string(sample_mode(spec, rng)));
  return out;
}

py::dict report(const std::vector<std::string>& logs) {
  std::vector<PredictionRecord> records;
  for (const std::string& path : logs) {
    auto part = load_predictions(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  const MetricsReport r = build_report(records);
  py::dict out;
  for (const GroupReport& g : r.groups) {
    py::dict entry;
    entry["top1"] = g.value.top1;
    entry["b_top1"] = g.value.b_top1;
    entry["p_top1"] = g.value.p_top1;
    std::vector<int> best;
    for (const SplitResult& s : g.splits) best.push_back(s.best.epoch);
    entry["best_epochs"] = best;
    out[py::str(g.name)] = entry;
  }
  return out;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"maskaug"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

py::dict generate_synth(const std::string& out_dir, std::uint64_t seed, int classes, int frames,
                        int size, int clips_per_class, int val_clips_per_class, bool objects,
                        int jobs) {
  SynthSpec spec;
  spec.seed = seed;
  spec.classes = classes;
  spec.frames = frames;
  spec.width = spec.height = size;
  spec.train_clips_per_class = clips_per_class;
  spec.val_clips_per_class = val_clips_per_class;
  spec.objects = objects;
  SynthDataset ds;
  {
    py::gil_scoped_release release;
    ds = generate(spec, jobs);
    write_synth_dataset(ds, out_dir, jobs);
  }
  py::dict out;
  out["manifest"] = out_dir + "/manifest.jsonl";
  out["clips"] = ds.clips.size();
  out["labels"] = ds.label_texts;
  return out;
}

}  // namespace

PYBIND11_MODULE(_maskaug, m) {
  m.doc() = "Bindings for the maskaug C++ core";

  py::register_exception<Error>(m, "MaskaugError", PyExc_ValueError);

  std::vector<std::string> modes;
  for (MaskingMode mode : kAllMaskingModes) modes.emplace_back(to_string(mode));
  m.attr("MASKING_MODES") = modes;

  m.def("mask_frame", &mask_frame, py::arg("frame"), py::arg("mode"), py::arg("color"),
        py::arg("object_color") = py::none(), py::arg("person_shape") = py::none(),
        py::arg("object_shape") = py::none(), py::arg("person_boxes") = std::vector<Box>{},
        py::arg("object_boxes") = std::vector<Box>{},
        "Apply one masking mode to an (H, W, 3) float32 frame. Boxes are "
        "(x_min, y_min, x_max, y_max), half-open.");

  m.def(
      "encode_rle",
      [](const BoolArray& mask) { return encode_rle(to_mask(mask)).runs; }, py::arg("mask"),
      "Row-major run lengths, starting with a zero run.");
  m.def(
      "decode_rle",
      [](const std::vector<std::uint32_t>& runs, int height, int width) {
        return from_mask(decode_rle(RleMask{width, height, runs}));
      },
      py::arg("runs"), py::arg("height"), py::arg("width"));

  m.def(
      "sample_color",
      [](std::uint64_t seed) {
        SeededRng rng(seed);
        return from_color(sample_mask_color(rng));
      },
      py::arg("seed"));
  m.def(
      "sample_color_pair",
      [](std::uint64_t seed, double min_distance) {
        SeededRng rng(seed);
        const ColorPair p = sample_color_pair(rng, min_distance);
        return py::make_tuple(from_color(p.background), from_color(p.object));
      },
      py::arg("seed"), py::arg("min_distance") = kDefaultMinColorDistance);

  m.def("parse_ratio", &ratio_dict, py::arg("text"), py::arg("bias_kind") = "background",
        "Normalized weights keyed by masking mode name (zero weights omitted).");
  m.def("sample_modes", &sample_modes, py::arg("text"), py::arg("bias_kind") = "background",
        py::arg("seed") = 0, py::arg("count") = 1);
  m.def("derive_seed", &derive_seed, py::arg("global_seed"), py::arg("epoch"), py::arg("video_id"));

  m.def(
      "infonce_loss",
      [](const DoubleArray& video, const DoubleArray& text, double temperature) {
        const InfoNceResult r = infonce_loss(to_matrix(video), to_matrix(text), temperature);
        return py::make_tuple(r.loss, from_matrix(r.grad_video), from_matrix(r.grad_text));
      },
      py::arg("video"), py::arg("text"), py::arg("temperature") = 0.07,
      "Symmetric infoNCE loss and its gradients w.r.t. both embedding matrices.");

  m.def("report", &report, py::arg("logs"),
        "top1 / B-top1 / P-top1 per split group from prediction logs.");
  m.def("generate_synth", &generate_synth, py::arg("out_dir"), py::arg("seed") = 0,
        py::arg("classes") = 4, py::arg("frames") = 8, py::arg("size") = 32,
        py::arg("clips_per_class") = 64, py::arg("val_clips_per_class") = 32,
        py::arg("objects") = false, py::arg("jobs") = 1);
  m.def("cli", &run_cli, py::arg("args"),
        "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
