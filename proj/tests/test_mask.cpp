#include <doctest.h>

#include <vector>

#include "maskaug/error.hpp"
#include "maskaug/mask.hpp"
#include "maskaug/rng.hpp"
#include "oracle.hpp"

using namespace maskaug;

namespace {

BinaryMask from_rows(const std::vector<std::vector<int>>& rows) {
  BinaryMask m(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) m.set(x, y, rows[y][x] != 0);
  return m;
}

}  // namespace

TEST_CASE("new_filled") {
  CHECK(oracle::to_grid(new_filled(2, 2, true)) == oracle::Grid{{1, 1}, {1, 1}});
  CHECK(oracle::to_grid(new_filled(2, 2, false)) == oracle::Grid{{0, 0}, {0, 0}});
  CHECK(coverage(new_filled(3, 5, true)) == 1.0);
  CHECK_THROWS_AS(new_filled(0, 3, true), Error);
  try {
    new_filled(4, 0, false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
}

TEST_CASE("complement") {
  CHECK(complement(from_rows({{1, 0}, {0, 1}})) == from_rows({{0, 1}, {1, 0}}));
  CHECK(complement(new_filled(2, 2, true)) == new_filled(2, 2, false));
  // Padding bits stay clear: 3x3 = 9 bits in one word.
  CHECK(complement(new_filled(3, 3, false)).count() == 9);
}

TEST_CASE("union, intersection, subtract") {
  CHECK(unite(from_rows({{1, 0}}), from_rows({{0, 1}})) == from_rows({{1, 1}}));
  CHECK(intersect(from_rows({{1, 0}}), from_rows({{1, 1}})) == from_rows({{1, 0}}));
  CHECK(subtract(from_rows({{1, 1}}), from_rows({{0, 1}})) == from_rows({{1, 0}}));

  SeededRng rng(3);
  const BinaryMask m = oracle::random_mask(rng, 13, 7, 0.4);
  CHECK(subtract(m, m) == new_filled(13, 7, false));
  CHECK((m | ~m) == new_filled(13, 7, true));
  CHECK((m & ~m) == new_filled(13, 7, false));
  CHECK((m | m) == m);

  const BinaryMask other(7, 13);
  CHECK_THROWS_AS(unite(m, other), Error);
  CHECK_THROWS_AS(intersect(m, other), Error);
  CHECK_THROWS_AS(subtract(m, other), Error);
  CHECK_THROWS_AS(is_disjoint(m, other), Error);
}

TEST_CASE("is_disjoint") {
  CHECK(is_disjoint(from_rows({{1, 0}}), from_rows({{0, 1}})));
  const BinaryMask m = from_rows({{0, 1}, {1, 1}});
  CHECK_FALSE(is_disjoint(m, m));
  SeededRng rng(11);
  for (int i = 0; i < 50; ++i) {
    const BinaryMask a = oracle::random_mask(rng, 9, 9, 0.5);
    const BinaryMask b = oracle::random_mask(rng, 9, 9, 0.5);
    CHECK(is_disjoint(a, subtract(b, a)));
    CHECK(is_disjoint(subtract(a, b), b));
  }
}

TEST_CASE("coverage") {
  CHECK(coverage(new_filled(4, 4, true)) == 1.0);
  CHECK(coverage(new_filled(4, 4, false)) == 0.0);
  CHECK(coverage(from_rows({{1, 0}, {0, 0}})) == 0.25);
}

TEST_CASE("from_bboxes") {
  const std::vector<BBox> one{{0, 0, 1, 1}};
  CHECK(oracle::to_grid(from_bboxes(one, 2, 2)) == oracle::Grid{{1, 0}, {0, 0}});
  CHECK(from_bboxes({}, 2, 2) == new_filled(2, 2, false));

  // Two overlapping boxes: union area 4*4 + 4*4 - 2*2 = 28.
  const std::vector<BBox> two{{0, 0, 4, 4}, {2, 2, 6, 6}};
  const BinaryMask m = from_bboxes(two, 8, 8);
  CHECK(m.count() == 28);
  CHECK(oracle::to_grid(m) == oracle::box_grid(two, 8, 8));

  // Clamping and ignore counting.
  const std::vector<BBox> spill{{-3, -3, 2, 2}, {10, 10, 12, 12}, {3, 3, 3, 5}};
  const BoxRaster r = rasterize_boxes(spill, 8, 8);
  CHECK(r.mask.count() == 4);
  CHECK(r.ignored == 2);
}

TEST_CASE("from_bboxes matches point-in-box on random box sets") {
  SeededRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 1 + static_cast<int>(rng.uniform_index(70));
    const int h = 1 + static_cast<int>(rng.uniform_index(40));
    std::vector<BBox> boxes;
    for (std::uint64_t i = 0, n = rng.uniform_index(5); i < n; ++i)
      boxes.push_back(oracle::random_box(rng, w, h));
    REQUIRE(oracle::to_grid(from_bboxes(boxes, w, h)) == oracle::box_grid(boxes, w, h));
  }
}

TEST_CASE("RLE encode") {
  CHECK(encode_rle(from_rows({{0, 0, 1, 1}})).runs == std::vector<std::uint32_t>{2, 2});
  CHECK(encode_rle(new_filled(2, 2, true)).runs == std::vector<std::uint32_t>{0, 4});
  CHECK(encode_rle(new_filled(2, 2, false)).runs == std::vector<std::uint32_t>{4});
  CHECK(encode_rle(from_rows({{1, 0}, {0, 1}})).runs == std::vector<std::uint32_t>{0, 1, 2, 1});
}

TEST_CASE("RLE decode errors") {
  CHECK_THROWS_AS(decode_rle(RleMask{2, 2, {1, 2}}), CorruptAnnotationError);
  CHECK_THROWS_AS(decode_rle(RleMask{2, 2, {3, 2}}), CorruptAnnotationError);
  CHECK_THROWS_AS(decode_rle(RleMask{0, 2, {}}), CorruptAnnotationError);
  // Non-canonical but consistent runs decode.
  const RleMask loose{2, 1, {1, 0, 0, 1}};
  CHECK_FALSE(loose.canonical());
  CHECK(decode_rle(loose) == from_rows({{0, 1}}));
}

TEST_CASE("RLE round trip on random masks") {
  SeededRng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + static_cast<int>(rng.uniform_index(64));
    const int h = 1 + static_cast<int>(rng.uniform_index(64));
    const BinaryMask m = oracle::random_mask(rng, w, h, rng.uniform());
    const RleMask r = encode_rle(m);
    std::size_t total = 0;
    for (auto run : r.runs) total += run;
    REQUIRE(total == m.size());
    REQUIRE(r.canonical());
    REQUIRE(decode_rle(r) == m);
  }
}

TEST_CASE("fill_rect across word boundaries") {
  BinaryMask m(100, 3);
  m.fill_rect(5, 1, 97, 3);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 100; ++x) CHECK(m.at(x, y) == (y >= 1 && x >= 5 && x < 97));
}
