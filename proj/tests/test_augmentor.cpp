#include <doctest.h>

#include <cmath>
#include <set>

#include "maskaug/augmentor.hpp"
#include "maskaug/error.hpp"
#include "oracle.hpp"

using namespace maskaug;

TEST_CASE("parse_ratio") {
  const RatioSpec none = parse_ratio("1:0", BiasKind::Background);
  CHECK(none.weight(MaskingMode::NoMask) == 1.0);
  CHECK(none.weight(MaskingMode::Background) == 0.0);
  CHECK(none.is_identity());

  const RatioSpec table1 = parse_ratio("0.33:0.67", BiasKind::Background);
  CHECK(table1.weight(MaskingMode::NoMask) == doctest::Approx(0.33));
  CHECK(table1.weight(MaskingMode::Background) == doctest::Approx(0.67));

  const RatioSpec table4 = parse_ratio("0.33:0:0.33:0.33", BiasKind::Object);
  CHECK(table4.weight(MaskingMode::NoMask) == doctest::Approx(1.0 / 3));
  CHECK(table4.weight(MaskingMode::ObjectBbox) == 0.0);
  CHECK(table4.weight(MaskingMode::ObjectShape) == doctest::Approx(1.0 / 3));
  CHECK(table4.weight(MaskingMode::BackgroundAndObject) == doctest::Approx(1.0 / 3));

  double total = 0.0;
  for (double w : table4.weights()) total += w;
  CHECK(std::abs(total - 1.0) < 1e-9);

  // Unnormalized input is rescaled.
  CHECK(parse_ratio("1:3", BiasKind::Background).weight(MaskingMode::Background) == 0.75);

  for (const char* bad : {"1", "1:0:0", "-1:2", "0:0", "a:b", "1::0", "", "1:0:"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_ratio(bad, BiasKind::Background), Error);
  }
  CHECK_THROWS_AS(parse_ratio("0.5:0.5", BiasKind::Object), Error);
  CHECK_THROWS_AS(parse_ratio("inf:1", BiasKind::Background), Error);
}

TEST_CASE("RatioSpec rejects person-bbox weight") {
  std::array<double, kMaskingModeCount> w{};
  w[static_cast<std::size_t>(MaskingMode::NoMask)] = 1.0;
  w[static_cast<std::size_t>(MaskingMode::PersonBbox)] = 0.5;
  CHECK_THROWS_AS(RatioSpec{w}, Error);
}

TEST_CASE("format_ratio") {
  CHECK(format_ratio(parse_ratio("1:1", BiasKind::Background), BiasKind::Background) == "0.5:0.5");
  CHECK(format_ratio(parse_ratio("1:0:0:0", BiasKind::Object), BiasKind::Object) == "1:0:0:0");
}

TEST_CASE("sample_mode") {
  SeededRng rng(1);
  const RatioSpec identity = RatioSpec::identity();
  for (int i = 0; i < 1000; ++i) REQUIRE(sample_mode(identity, rng) == MaskingMode::NoMask);

  const RatioSpec half = parse_ratio("0.5:0.5", BiasKind::Background);
  SeededRng freq(123);
  int masked = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) masked += sample_mode(half, freq) == MaskingMode::Background;
  CHECK(std::abs(masked / static_cast<double>(draws) - 0.5) < 0.01);

  // Regression-pinned sequence for seed 7.
  SeededRng golden(7);
  std::string seq;
  for (int i = 0; i < 16; ++i) seq += sample_mode(half, golden) == MaskingMode::NoMask ? '0' : '1';
  CHECK(seq == "0011000000011111");

  const RatioSpec quad = parse_ratio("0.33:0:0.33:0.33", BiasKind::Object);
  SeededRng golden4(7);
  std::vector<int> modes;
  for (int i = 0; i < 16; ++i) modes.push_back(static_cast<int>(sample_mode(quad, golden4)));
  CHECK(modes == std::vector<int>{3, 0, 4, 3, 3, 0, 3, 0, 0, 3, 0, 4, 4, 4, 4, 3});
}

namespace {

struct Fixture {
  VideoClip clip;
  std::vector<FrameAnnotations> anns;
};

Fixture make_fixture(const std::string& id, std::uint64_t seed) {
  SeededRng rng(seed);
  Fixture f{{id, {}}, {}};
  for (int t = 0; t < 4; ++t) {
    f.clip.frames.push_back(oracle::random_frame(rng, 12, 8));
    f.anns.push_back(oracle::random_annotations(rng, 12, 8));
  }
  return f;
}

}  // namespace

TEST_CASE("augment_sample") {
  const Fixture f = make_fixture("video-17", 4);
  const RatioSpec half = parse_ratio("0.5:0.5", BiasKind::Background);

  const AugmentedSample a = augment_sample(f.clip, f.anns, half, 10, 3);
  const AugmentedSample b = augment_sample(f.clip, f.anns, half, 10, 3);
  CHECK(a.mode == b.mode);
  CHECK(a.masked.clip == b.masked.clip);

  // Modes are redrawn per epoch.
  std::set<MaskingMode> seen;
  for (std::uint64_t epoch = 0; epoch < 32; ++epoch) {
    seen.insert(augment_sample(f.clip, f.anns, half, 10, epoch).mode);
  }
  CHECK(seen.size() == 2);

  const RatioSpec always = parse_ratio("0:1", BiasKind::Background);
  for (std::uint64_t epoch = 0; epoch < 10; ++epoch) {
    CHECK(augment_sample(f.clip, f.anns, always, 1, epoch).mode == MaskingMode::Background);
  }

  const RatioSpec identity = parse_ratio("1:0:0:0", BiasKind::Object);
  for (std::uint64_t epoch = 0; epoch < 10; ++epoch) {
    CHECK(augment_sample(f.clip, f.anns, identity, 1, epoch).masked.clip == f.clip);
  }
}

TEST_CASE("derive_seed ignores visiting order and separates its inputs") {
  CHECK(derive_seed(1, 2, "a") == derive_seed(1, 2, "a"));
  CHECK(derive_seed(1, 2, "a") != derive_seed(2, 1, "a"));
  CHECK(derive_seed(1, 2, "a") != derive_seed(1, 2, "b"));
  CHECK(derive_seed(1, 2, "train-c00-0000") == 3058115047897373346ULL);
}
