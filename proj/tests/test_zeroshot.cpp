#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maskaug/error.hpp"
#include "maskaug/synthbias.hpp"
#include "maskaug/zeroshot.hpp"
#include "oracle.hpp"

using namespace maskaug;

namespace {

double norm(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

SynthSpec small_spec() {
  SynthSpec s;
  s.classes = 4;
  s.frames = 4;
  s.width = 16;
  s.height = 16;
  s.train_clips_per_class = 8;
  s.val_clips_per_class = 4;
  s.val_splits = {{"val", 1.0}};
  s.seed = 3;
  return s;
}

TrainConfig small_config() {
  TrainConfig c;
  c.patch = 8;
  c.dim = 16;
  c.hash_dim = 64;
  c.epochs = 3;
  c.seed = 11;
  return c;
}

}  // namespace

TEST_CASE("infoNCE closed forms") {
  Matrix one(1, 3);
  one(0, 0) = 1.0;
  CHECK(infonce_loss(one, one, 0.07).loss == doctest::Approx(0.0).epsilon(1e-12));

  Matrix id(2, 2);
  id(0, 0) = id(1, 1) = 1.0;
  CHECK(infonce_loss(id, id, 1.0).loss == doctest::Approx(std::log1p(std::exp(-1.0))));
  CHECK(std::log1p(std::exp(-1.0)) == doctest::Approx(0.3133).epsilon(1e-4));

  CHECK_THROWS_AS(infonce_loss(id, id, 0.0), Error);
  CHECK_THROWS_AS(infonce_loss(id, Matrix(3, 2), 1.0), Error);
}

TEST_CASE("infoNCE matches brute-force cross-entropy and finite differences") {
  SeededRng rng(21);
  for (std::size_t n : {2u, 5u, 9u}) {
    const Matrix v = oracle::random_unit_rows(rng, n, 6);
    const Matrix t = oracle::random_unit_rows(rng, n, 6);
    for (double tau : {0.07, 0.5, 1.0}) {
      CAPTURE(n);
      CAPTURE(tau);
      const InfoNceResult r = infonce_loss(v, t, tau);
      CHECK(std::abs(r.loss - oracle::softmax_ce(v, t, tau)) < 1e-10);
      const double h = 1e-6;
      CHECK(oracle::relative_error(r.grad_video, oracle::finite_difference(v, t, tau, true, h)) < 1e-5);
      CHECK(oracle::relative_error(r.grad_text, oracle::finite_difference(v, t, tau, false, h)) < 1e-5);
    }
  }
}

TEST_CASE("l2_normalize and its backward pass") {
  const std::vector<double> x{3.0, -4.0, 0.5};
  const Embedding e = l2_normalize(x);
  CHECK(norm(e) == doctest::Approx(1.0).epsilon(1e-7));

  const std::vector<double> g{0.2, 0.7, -1.1};
  const Embedding analytic = l2_normalize_backward(x, g);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto f = [&](double d) {
      std::vector<double> y = x;
      y[i] += d;
      const Embedding n = l2_normalize(y);
      return std::inner_product(n.begin(), n.end(), g.begin(), 0.0);
    };
    CHECK(analytic[i] == doctest::Approx((f(1e-6) - f(-1e-6)) / 2e-6).epsilon(1e-6));
  }
  const std::vector<double> zero(4, 0.0);
  for (double z : l2_normalize(zero)) CHECK(z == 0.0);
}

TEST_CASE("downsample_bilinear") {
  Frame f(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x)
      for (int c = 0; c < 3; ++c) f.at(x, y, c) = static_cast<float>(x + 10 * y + 100 * c);
  // Identity size returns the frame itself.
  const auto same = downsample_bilinear(f, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(same[(y * 4 + x) * 3 + 1] == doctest::Approx(x + 10 * y + 100));
  // Halving averages each 2x2 block for a linear ramp.
  const auto half = downsample_bilinear(f, 2);
  CHECK(half[0] == doctest::Approx(0.5 + 5.0));
  CHECK(half[(1 * 2 + 1) * 3 + 2] == doctest::Approx(2.5 + 25.0 + 200.0));
}

TEST_CASE("encoders produce unit vectors") {
  const TrainConfig cfg = small_config();
  const ToyModel model = init_model(cfg);
  const SynthDataset ds = generate(small_spec());
  const TrainingData data = to_training_data(ds);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(norm(encode_video(model.video, data.samples[i].clip)) == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(norm(encode_label(model.text, "tearing paper")) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(encode_label(model.text, "tearing paper") != encode_label(model.text, "surfing water"));
  CHECK(encode_label(model.text, "Tearing  Paper") == encode_label(model.text, "tearing paper"));
  CHECK_THROWS_AS(encode_label(model.text, "   "), Error);
}

TEST_CASE("temporal mean makes the video encoder frame-order invariant") {
  const ToyModel model = init_model(small_config());
  const SynthDataset ds = generate(small_spec());
  VideoClip clip = to_training_data(ds).samples[0].clip;
  const Embedding forward = encode_video(model.video, clip);
  std::reverse(clip.frames.begin(), clip.frames.end());
  const Embedding backward = encode_video(model.video, clip);
  for (std::size_t i = 0; i < forward.size(); ++i) CHECK(forward[i] == doctest::Approx(backward[i]).epsilon(1e-12));
}

TEST_CASE("hashed_text_features counts unigrams and bigrams") {
  const auto f = hashed_text_features("a b a", 1024);
  CHECK(std::accumulate(f.begin(), f.end(), 0.0) == 5.0);
  CHECK_THROWS_AS(hashed_text_features("", 16), Error);
}

TEST_CASE("zero_shot_classify") {
  const ToyModel model = init_model(small_config());
  const SynthDataset ds = generate(small_spec());
  const VideoClip clip = to_training_data(ds).samples[0].clip;
  const auto single = zero_shot_classify(model, clip, {{7, "only label"}});
  REQUIRE(single.size() == 1);
  PredictionRecord r;
  r.true_label = 7;
  r.scores = single;
  CHECK(predicted_label(r) == 7);

  // Identical texts score identically, so the prediction goes to the smaller id.
  const auto tied = zero_shot_classify(model, clip, {{2, "same text"}, {5, "same text"}});
  CHECK(tied.at(2) == tied.at(5));
  r.scores = tied;
  CHECK(predicted_label(r) == 2);
}

TEST_CASE("train: learning rate 0 leaves weights unchanged") {
  TrainConfig cfg = small_config();
  cfg.learning_rate = 0.0;
  cfg.epochs = 2;
  const TrainingData data = to_training_data(generate(small_spec()));
  const TrainResult r = train(data, RatioSpec::identity(), cfg);
  CHECK(r.model == init_model(cfg));
  CHECK(r.epochs.size() == 2);
}

TEST_CASE("train is deterministic across job counts") {
  TrainConfig cfg = small_config();
  const TrainingData data = to_training_data(generate(small_spec()));
  const RatioSpec half = parse_ratio("0.5:0.5", BiasKind::Background);
  const TrainResult a = train(data, half, cfg);
  cfg.jobs = 3;
  const TrainResult b = train(data, half, cfg);
  CHECK(a.model == b.model);
  CHECK(a.predictions == b.predictions);
  for (std::size_t e = 0; e < a.epochs.size(); ++e) {
    CHECK(a.epochs[e].mean_loss == b.epochs[e].mean_loss);
    CHECK(a.epochs[e].mode_counts == b.epochs[e].mode_counts);
  }
}

TEST_CASE("full-batch loss decreases over the first epochs") {
  SynthSpec spec = small_spec();
  spec.classes = 8;
  spec.train_clips_per_class = 1;
  TrainConfig cfg = small_config();
  cfg.epochs = 5;
  cfg.batch_size = 8;  // one batch, one clip per label
  cfg.learning_rate = 0.01;
  const TrainResult r = train(to_training_data(generate(spec)), RatioSpec::identity(), cfg);
  for (std::size_t e = 1; e < r.epochs.size(); ++e) {
    CAPTURE(e);
    CHECK(r.epochs[e].mean_loss < r.epochs[e - 1].mean_loss);
  }
}

TEST_CASE("train beats chance on unmasked clips") {
  TrainConfig cfg = small_config();
  cfg.epochs = 10;
  const TrainingData data = to_training_data(generate(small_spec()));
  const TrainResult r = train(data, RatioSpec::identity(), cfg);
  CHECK(r.epochs.back().metrics.at("val").top1 > 25.0 + 10.0);
}

TEST_CASE("TrainConfig validation") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.temperature = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.learning_rate = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("repeated frames embed like a single frame") {
  const ToyModel model = init_model(small_config());
  const SynthDataset ds = generate(small_spec());
  const VideoClip src = to_training_data(ds).samples[0].clip;
  const VideoClip single{"one", {src.frames[0]}};
  const VideoClip repeated{"many", std::vector<Frame>(5, src.frames[0])};
  const Embedding a = encode_video(model.video, single);
  const Embedding b = encode_video(model.video, repeated);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("zero_shot_classify argmax does not depend on candidate order or ids") {
  const ToyModel model = init_model(small_config());
  const SynthDataset ds = generate(small_spec());
  const VideoClip clip = to_training_data(ds).samples[3].clip;
  const std::vector<std::string> texts{synth_label_text(0), synth_label_text(1), synth_label_text(2),
                                       synth_label_text(3)};
  std::map<int, std::string> forward, reversed;
  for (int i = 0; i < 4; ++i) {
    forward[i] = texts[static_cast<std::size_t>(i)];
    reversed[3 - i] = texts[static_cast<std::size_t>(i)];
  }
  PredictionRecord f, r;
  f.scores = zero_shot_classify(model, clip, forward);
  r.scores = zero_shot_classify(model, clip, reversed);
  CHECK(forward.at(predicted_label(f)) == reversed.at(predicted_label(r)));
  CHECK_THROWS_AS(zero_shot_classify(model, clip, {}), Error);
}

TEST_CASE("train rejects a dataset without training clips") {
  TrainingData data = to_training_data(generate(small_spec()));
  std::erase_if(data.samples, [](const Sample& s) { return s.split == "train"; });
  CHECK_THROWS_AS(train(data, RatioSpec::identity(), small_config()), Error);
}
