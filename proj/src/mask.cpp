#include "maskaug/mask.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "maskaug/error.hpp"

namespace maskaug {

namespace {

std::size_t word_count(int width, int height) {
  return (static_cast<std::size_t>(width) * height + 63) / 64;
}

void require_same_shape(const BinaryMask& a, const BinaryMask& b, const char* op) {
  if (!a.same_shape(b)) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, const char* name, Op op) {
  require_same_shape(a, b, name);
  BinaryMask out(a.width(), a.height());
  auto dst = out.words();
  const auto lhs = a.words();
  const auto rhs = b.words();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = op(lhs[i], rhs[i]);
  out.trim();
  return out;
}

}  // namespace

std::optional<BBox> BBox::clamped(int width, int height) const noexcept {
  BBox b{std::clamp(x_min, 0, width), std::clamp(y_min, 0, height), std::clamp(x_max, 0, width),
         std::clamp(y_max, 0, height)};
  if (b.degenerate()) return std::nullopt;
  return b;
}

BinaryMask::BinaryMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidDimension,
                "mask dimensions must be >= 1, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  words_.assign(word_count(width, height), 0);
}

BinaryMask BinaryMask::filled(int width, int height, bool value) {
  BinaryMask m(width, height);
  if (value) {
    std::fill(m.words_.begin(), m.words_.end(), ~std::uint64_t{0});
    m.trim();
  }
  return m;
}

void BinaryMask::fill_rect(int x0, int y0, int x1, int y1) noexcept {
  for (int y = y0; y < y1; ++y) {
    std::size_t i = index(x0, y);
    const std::size_t end = index(0, y) + x1;
    // Head bits up to a word boundary, whole words, then the tail.
    while (i < end && (i & 63) != 0) assign(i++, true);
    while (i + 64 <= end) {
      words_[i >> 6] = ~std::uint64_t{0};
      i += 64;
    }
    while (i < end) assign(i++, true);
  }
}

std::size_t BinaryMask::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BinaryMask::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void BinaryMask::trim() noexcept {
  const std::size_t tail = size() & 63;
  if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

BinaryMask new_filled(int width, int height, bool value) {
  return BinaryMask::filled(width, height, value);
}

BinaryMask complement(const BinaryMask& m) {
  BinaryMask out(m.width(), m.height());
  auto dst = out.words();
  const auto src = m.words();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = ~src[i];
  out.trim();
  return out;
}

BinaryMask unite(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "union", [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

BinaryMask intersect(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "intersection", [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

BinaryMask subtract(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, "subtract", [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

bool is_disjoint(const BinaryMask& a, const BinaryMask& b) {
  require_same_shape(a, b, "is_disjoint");
  const auto lhs = a.words();
  const auto rhs = b.words();
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if ((lhs[i] & rhs[i]) != 0) return false;
  }
  return true;
}

double coverage(const BinaryMask& m) noexcept {
  return static_cast<double>(m.count()) / static_cast<double>(m.size());
}

BoxRaster rasterize_boxes(std::span<const BBox> boxes, int width, int height) {
  BoxRaster out{BinaryMask(width, height), 0};
  for (const BBox& box : boxes) {
    const auto clipped = box.clamped(width, height);
    if (!clipped) {
      ++out.ignored;
      continue;
    }
    out.mask.fill_rect(clipped->x_min, clipped->y_min, clipped->x_max, clipped->y_max);
  }
  return out;
}

BinaryMask from_bboxes(std::span<const BBox> boxes, int width, int height) {
  return rasterize_boxes(boxes, width, height).mask;
}

bool RleMask::canonical() const noexcept {
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i] == 0) return false;
  }
  return true;
}

RleMask encode_rle(const BinaryMask& m) {
  RleMask r{m.width(), m.height(), {}};
  const std::size_t n = m.size();
  bool current = false;
  std::uint32_t run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = m.test(i);
    if (bit != current) {
      r.runs.push_back(run);
      run = 0;
      current = bit;
    }
    ++run;
  }
  r.runs.push_back(run);
  return r;
}

BinaryMask decode_rle(const RleMask& r) {
  if (r.width < 1 || r.height < 1) {
    throw CorruptAnnotationError("RLE size must be positive, got " + std::to_string(r.height) +
                                 "x" + std::to_string(r.width));
  }
  const std::size_t expected = static_cast<std::size_t>(r.width) * r.height;
  std::size_t total = 0;
  for (std::uint32_t run : r.runs) total += run;
  if (total != expected) {
    throw CorruptAnnotationError("RLE runs sum to " + std::to_string(total) + ", expected " +
                                 std::to_string(expected));
  }
  BinaryMask m(r.width, r.height);
  std::size_t pos = 0;
  bool value = false;
  for (std::uint32_t run : r.runs) {
    if (value) {
      for (std::size_t i = pos; i < pos + run; ++i) m.assign(i, true);
    }
    pos += run;
    value = !value;
  }
  return m;
}

}  // namespace maskaug
