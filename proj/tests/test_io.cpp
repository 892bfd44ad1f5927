#include <doctest.h>

#include <fstream>

#include "maskaug/error.hpp"
#include "maskaug/io.hpp"
#include "oracle.hpp"
#include "scratch_dir.hpp"

using namespace maskaug;

namespace {

void write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

template <class F>
FileFormatError capture_format_error(F&& f) {
  try {
    f();
  } catch (const FileFormatError& e) {
    return e;
  }
  FAIL("expected FileFormatError");
  throw 0;
}

}  // namespace

TEST_CASE("empty manifest") {
  testutil::ScratchDir dir("io");
  write(dir.file("m.jsonl"), "");
  CHECK(load_manifest(dir.file("m.jsonl")).empty());
  write(dir.file("blank.jsonl"), "\n\n  \n");
  CHECK(load_manifest(dir.file("blank.jsonl")).empty());
}

TEST_CASE("manifest round trip and schema errors") {
  testutil::ScratchDir dir("io");
  const std::vector<ManifestEntry> entries{
      {"a", 0, "tearing paper", "train", 1, {"f/0.ppm", "f/1.ppm"}, "ann/a.json"},
      {"b", 3, "surfing water", "val", 2, {"f/2.ppm"}, "ann/b.json"}};
  write_manifest(entries, dir.file("m.jsonl"));
  CHECK(load_manifest(dir.file("m.jsonl"), false) == entries);
  CHECK_THROWS_AS(load_manifest(dir.file("m.jsonl"), true), Error);

  write(dir.file("bad.jsonl"),
        "{\"video_id\":\"a\",\"label_id\":0,\"label_text\":\"x\",\"split\":\"train\","
        "\"frames\":[\"0.ppm\"],\"annotations\":\"a.json\"}\n"
        "{\"video_id\":\"b\",\"label_text\":\"x\",\"split\":\"train\",\"frames\":[\"0.ppm\"],"
        "\"annotations\":\"b.json\"}\n");
  const FileFormatError e = capture_format_error([&] { load_manifest(dir.file("bad.jsonl"), false); });
  CHECK(e.kind() == ErrorKind::Schema);
  CHECK(e.line() == 2);
  CHECK(std::string(e.what()).find("label_id") != std::string::npos);

  write(dir.file("garbage.jsonl"), "\n{not json\n");
  const FileFormatError g = capture_format_error([&] { load_manifest(dir.file("garbage.jsonl"), false); });
  CHECK(g.kind() == ErrorKind::Parse);
  CHECK(g.line() == 2);
}

TEST_CASE("annotation round trip") {
  testutil::ScratchDir dir("io");
  SeededRng rng(2);
  AnnotationDoc doc;
  doc.provenance = "synthetic";
  for (int i = 0; i < 5; ++i) doc.frames.push_back(oracle::random_annotations(rng, 13, 7));
  write_annotations(doc, dir.file("a.json"));
  CHECK(load_annotations(dir.file("a.json")) == doc);
}

TEST_CASE("corrupt annotation names the frame") {
  testutil::ScratchDir dir("io");
  const std::string ok = R"({"size":[2,2],"runs":[4]})";
  const std::string bad = R"({"size":[2,2],"runs":[1,1]})";  // sums to 2, not 4
  write(dir.file("c.json"), std::string("{\"frames\":[") +
                                "{\"person_shape\":" + ok + ",\"object_shape\":" + ok +
                                ",\"person_boxes\":[],\"object_boxes\":[]}," +
                                "{\"person_shape\":" + ok + ",\"object_shape\":" + bad +
                                ",\"person_boxes\":[],\"object_boxes\":[]}]}");
  try {
    load_annotations(dir.file("c.json"));
    FAIL("expected CorruptAnnotationError");
  } catch (const CorruptAnnotationError& e) {
    CHECK(e.frame_index() == 1);
    CHECK(std::string(e.what()).find("frame 1") != std::string::npos);
  }
}

TEST_CASE("image formats") {
  testutil::ScratchDir dir("io");
  Image8 img{5, 3, {}};
  for (int i = 0; i < 45; ++i) img.pixels.push_back(static_cast<std::uint8_t>(i * 5));
  write_ppm(img, dir.file("x.ppm"));
  CHECK(read_ppm(dir.file("x.ppm")) == img);
  CHECK(read_image(dir.file("x.ppm")) == img);
  write_raw_rgb8(img, dir.file("x.rgb"));
  CHECK(read_raw_rgb8(dir.file("x.rgb")) == img);
  CHECK(read_image(dir.file("x.rgb")) == img);

  // Comments in the header are allowed.
  std::string ppm = "P6\n# comment\n1 1\n255\n";
  ppm += std::string("\x01\x02\x03", 3);
  write(dir.file("c.ppm"), ppm);
  CHECK(read_ppm(dir.file("c.ppm")).pixels == std::vector<std::uint8_t>{1, 2, 3});

  write(dir.file("short.ppm"), "P6\n2 2\n255\nabc");
  CHECK_THROWS_AS(read_ppm(dir.file("short.ppm")), Error);
  write(dir.file("nope.bin"), "hello");
  CHECK_THROWS_AS(read_image(dir.file("nope.bin")), Error);
  CHECK_THROWS_AS(read_image(dir.file("missing.ppm")), Error);
}

TEST_CASE("prediction log round trip") {
  testutil::ScratchDir dir("io");
  SeededRng rng(6);
  const auto records = oracle::random_records(rng, 50, 4, 3, 3);
  write_predictions(records, dir.file("p.jsonl"));
  CHECK(load_predictions(dir.file("p.jsonl")) == records);

  write(dir.file("bad.jsonl"),
        R"({"video_id":"a","true_label":0,"variant":"sideways","epoch":1,"split":"val","scores":{"0":1}})");
  CHECK_THROWS_AS(load_predictions(dir.file("bad.jsonl")), FileFormatError);
}

TEST_CASE("model checkpoint round trip") {
  testutil::ScratchDir dir("io");
  TrainConfig cfg;
  cfg.patch = 4;
  cfg.dim = 6;
  cfg.hash_dim = 32;
  cfg.seed = 5;
  const ToyModel m = init_model(cfg);
  save_model(m, cfg, dir.file("m.json"));
  CHECK(load_model(dir.file("m.json")) == m);
  TrainConfig other = cfg;
  other.learning_rate = 0.5;
  CHECK(config_hash(cfg) != config_hash(other));
  CHECK(config_hash(cfg) == config_hash(cfg));
}

TEST_CASE("config parsing") {
  const ConfigValues kv = parse_config("# header\nseed = 4\n  lr=0.5  \n\nratio = 0.33:0.67 # trailing\n");
  CHECK(kv.at("seed") == "4");
  CHECK(kv.at("lr") == "0.5");
  CHECK(kv.at("ratio") == "0.33:0.67");

  const ConfigValues js = parse_config(R"({"seed": 4, "ratio": "1:0", "objects": true})");
  CHECK(js.at("seed") == "4");
  CHECK(js.at("ratio") == "1:0");
  CHECK(js.at("objects") == "true");

  CHECK_THROWS_AS(parse_config("just words\n"), Error);
  CHECK_THROWS_AS(parse_config(R"({"nested": {"a": 1}})"), Error);
}
