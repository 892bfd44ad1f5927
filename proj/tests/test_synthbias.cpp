#include <doctest.h>

#include <filesystem>
#include <set>

#include "maskaug/error.hpp"
#include "maskaug/io.hpp"
#include "maskaug/synthbias.hpp"
#include "scratch_dir.hpp"

using namespace maskaug;

namespace {

SynthSpec tiny() {
  SynthSpec s;
  s.frames = 3;
  s.width = 16;
  s.height = 16;
  s.train_clips_per_class = 6;
  s.val_clips_per_class = 3;
  s.seed = 8;
  return s;
}

}  // namespace

TEST_CASE("layout and ids") {
  const SynthDataset ds = generate(tiny());
  CHECK(ds.clips.size() == 4 * 6 + 4 * 3 * 2);
  CHECK(ds.label_texts.size() == 4);
  std::set<std::string> ids;
  for (const SynthClip& c : ds.clips) {
    ids.insert(c.video_id);
    CHECK(c.frames.size() == 3);
    CHECK(c.annotations.size() == 3);
  }
  CHECK(ids.size() == ds.clips.size());
  CHECK(ids.count("train-c00-0000") == 1);
  CHECK(ids.count("mimetic-c03-0002") == 1);
}

TEST_CASE("label texts are distinct sentences") {
  std::set<std::string> texts;
  for (int l = 0; l < 16; ++l) texts.insert(synth_label_text(l));
  CHECK(texts.size() == 16);
  CHECK(synth_label_text(0).rfind("person moving right", 0) == 0);
}

TEST_CASE("rho = 1 makes the background determine the label") {
  SynthSpec s = tiny();
  s.objects = true;
  for (const SynthClip& c : generate(s).clips) {
    if (c.split == "mimetic") continue;
    CHECK(c.background_index == c.label % s.background_colors);
    CHECK(c.object_index == c.label % s.object_textures);
  }
}

TEST_CASE("rho = 0 makes the background independent of the label") {
  SynthSpec s;
  s.frames = 1;
  s.width = 8;
  s.height = 8;
  s.train_clips_per_class = 250;
  s.val_clips_per_class = 0;
  s.val_splits = {};
  s.rho_train = 0.0;
  s.seed = 99;
  const SynthDataset ds = generate(s);
  REQUIRE(ds.clips.size() == 1000);
  double table[4][4] = {};
  for (const SynthClip& c : ds.clips) table[c.label][c.background_index] += 1.0;
  // Chi-square test of independence, df = 9; critical value at alpha = 0.01.
  double chi2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double row = 0.0, col = 0.0;
      for (int k = 0; k < 4; ++k) {
        row += table[i][k];
        col += table[k][j];
      }
      const double expected = row * col / 1000.0;
      chi2 += (table[i][j] - expected) * (table[i][j] - expected) / expected;
    }
  }
  CHECK(chi2 < 21.666);
}

TEST_CASE("annotations match the painted person") {
  SynthSpec s = tiny();
  s.objects = true;
  for (const SynthClip& c : generate(s).clips) {
    for (const FrameAnnotations& a : c.annotations) {
      REQUIRE(a.person_boxes.size() == 1);
      const BBox& b = a.person_boxes[0];
      CHECK(a.person_shape.count() == static_cast<std::size_t>(b.area()));
      CHECK(a.person_shape == from_bboxes(a.person_boxes, 16, 16));
      CHECK(a.object_boxes.size() == 1);
      CHECK(a.object_shape.count() > 0);
    }
  }
}

TEST_CASE("deterministic and independent of jobs") {
  SynthSpec s = tiny();
  s.objects = true;
  const SynthDataset a = generate(s, 1);
  const SynthDataset b = generate(s, 3);
  CHECK(a.clips == b.clips);
  s.seed = 9;
  CHECK(generate(s).clips != a.clips);
}

TEST_CASE("validation") {
  SynthSpec s;
  s.classes = 1;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.rho_train = 1.5;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.val_splits = {{"train", 0.5}};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("written dataset loads back") {
  testutil::ScratchDir dir("synth");
  const SynthDataset ds = generate(tiny());
  write_synth_dataset(ds, dir.path().string(), 2);
  const TrainingData loaded = load_dataset(dir.file("manifest.jsonl"));
  const TrainingData direct = to_training_data(ds);
  REQUIRE(loaded.samples.size() == direct.samples.size());
  CHECK(loaded.label_texts == direct.label_texts);
  for (std::size_t i = 0; i < loaded.samples.size(); ++i) {
    CHECK(loaded.samples[i].video_id == direct.samples[i].video_id);
    CHECK(loaded.samples[i].split == direct.samples[i].split);
    CHECK(loaded.samples[i].clip == direct.samples[i].clip);
    CHECK(loaded.samples[i].annotations == direct.samples[i].annotations);
  }
}
