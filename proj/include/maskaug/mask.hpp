#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace maskaug {

/// Axis-aligned box in pixel coordinates, half-open: [x_min, x_max) x [y_min, y_max).
struct BBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  bool degenerate() const noexcept { return x_min >= x_max || y_min >= y_max; }
  long long area() const noexcept {
    return degenerate() ? 0 : static_cast<long long>(x_max - x_min) * (y_max - y_min);
  }
  /// Intersection with the frame; nullopt when nothing of the box remains.
  std::optional<BBox> clamped(int width, int height) const noexcept;

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// H x W bitmap, row-major, packed 64 pixels per word. Padding bits past
/// width*height are always zero so word-wise comparison and counting are exact.
class BinaryMask {
 public:
  /// All-zero mask. Throws InvalidDimension if either side is < 1.
  BinaryMask(int width, int height);

  static BinaryMask filled(int width, int height, bool value);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(width_) * height_; }

  bool at(int x, int y) const noexcept { return test(index(x, y)); }
  void set(int x, int y, bool value) noexcept { assign(index(x, y), value); }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void assign(std::size_t i, bool value) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= bit;
    } else {
      words_[i >> 6] &= ~bit;
    }
  }

  /// Sets rows [y0, y1) x columns [x0, x1); bounds must already be inside the mask.
  void fill_rect(int x0, int y0, int x1, int y1) noexcept;

  std::size_t count() const noexcept;
  bool none() const noexcept;
  bool same_shape(const BinaryMask& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// Clears the bits past `size()` in the last word.
  void trim() noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<std::uint64_t> words_;
};

BinaryMask new_filled(int width, int height, bool value);
BinaryMask complement(const BinaryMask& m);
/// Element-wise OR. Throws DimensionMismatch on differing shapes.
BinaryMask unite(const BinaryMask& a, const BinaryMask& b);
/// Element-wise AND.
BinaryMask intersect(const BinaryMask& a, const BinaryMask& b);
/// a AND NOT b.
BinaryMask subtract(const BinaryMask& a, const BinaryMask& b);
bool is_disjoint(const BinaryMask& a, const BinaryMask& b);
/// Fraction of set pixels in [0, 1].
double coverage(const BinaryMask& m) noexcept;

inline BinaryMask operator~(const BinaryMask& m) { return complement(m); }
inline BinaryMask operator|(const BinaryMask& a, const BinaryMask& b) { return unite(a, b); }
inline BinaryMask operator&(const BinaryMask& a, const BinaryMask& b) { return intersect(a, b); }

struct BoxRaster {
  BinaryMask mask;
  /// Boxes that were degenerate or fell entirely outside the frame.
  std::size_t ignored = 0;
};

/// Pixel is set iff it lies inside at least one box. Boxes are clamped to the
/// frame; boxes with nothing left after clamping are skipped and counted.
BoxRaster rasterize_boxes(std::span<const BBox> boxes, int width, int height);
BinaryMask from_bboxes(std::span<const BBox> boxes, int width, int height);

/// Row-major run lengths alternating 0-runs and 1-runs, starting with a
/// (possibly empty) 0-run.
struct RleMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint32_t> runs;

  /// True when only the leading run is zero-length.
  bool canonical() const noexcept;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

RleMask encode_rle(const BinaryMask& m);
/// Throws CorruptAnnotationError when the runs do not sum to width*height.
BinaryMask decode_rle(const RleMask& r);

}  // namespace maskaug
