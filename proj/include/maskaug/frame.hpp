#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maskaug {

/// RGB triple in normalized pixel space.
struct MaskColor {
  float r = 0.0F;
  float g = 0.0F;
  float b = 0.0F;

  float operator[](std::size_t c) const noexcept { return c == 0 ? r : (c == 1 ? g : b); }
  friend bool operator==(const MaskColor&, const MaskColor&) = default;
};

double distance(const MaskColor& a, const MaskColor& b) noexcept;

/// Normalized float frame, interleaved RGB (HWC).
class Frame {
 public:
  static constexpr int kChannels = 3;

  Frame(int width, int height);
  Frame(int width, int height, std::vector<float> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

  float at(int x, int y, int c) const noexcept { return data_[offset(x, y) + c]; }
  float& at(int x, int y, int c) noexcept { return data_[offset(x, y) + c]; }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * width_ + x) * kChannels;
  }

  int width_;
  int height_;
  std::vector<float> data_;
};

struct VideoClip {
  std::string video_id;
  std::vector<Frame> frames;

  friend bool operator==(const VideoClip&, const VideoClip&) = default;
};

/// Throws if the clip is empty or frames disagree on size.
void validate_clip(const VideoClip& clip);

/// 8-bit RGB image as stored on disk.
struct Image8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // HWC

  friend bool operator==(const Image8&, const Image8&) = default;
};

/// Per-channel standardization between 8-bit storage and normalized space:
/// x = (v / 255 - mean) / std.
struct Normalization {
  std::array<float, 3> mean{0.5F, 0.5F, 0.5F};
  std::array<float, 3> stddev{0.25F, 0.25F, 0.25F};

  friend bool operator==(const Normalization&, const Normalization&) = default;
};

Frame normalize(const Image8& image, const Normalization& norm);
/// Inverse of `normalize`, clamped to [0, 1] before quantization.
Image8 denormalize(const Frame& frame, const Normalization& norm);

}  // namespace maskaug
