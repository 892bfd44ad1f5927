#include "maskaug/frame.hpp"

#include <algorithm>
#include <cmath>

#include "maskaug/error.hpp"

namespace maskaug {

double distance(const MaskColor& a, const MaskColor& b) noexcept {
  const double dr = static_cast<double>(a.r) - b.r;
  const double dg = static_cast<double>(a.g) - b.g;
  const double db = static_cast<double>(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

Frame::Frame(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidDimension, "frame dimensions must be >= 1");
  }
  data_.assign(pixel_count() * kChannels, 0.0F);
}

Frame::Frame(int width, int height, std::vector<float> pixels)
    : width_(width), height_(height), data_(std::move(pixels)) {
  if (width < 1 || height < 1) {
    throw Error(ErrorKind::InvalidDimension, "frame dimensions must be >= 1");
  }
  if (data_.size() != pixel_count() * kChannels) {
    throw Error(ErrorKind::InvalidDimension,
                "frame buffer holds " + std::to_string(data_.size()) + " values, expected " +
                    std::to_string(pixel_count() * kChannels));
  }
}

void validate_clip(const VideoClip& clip) {
  if (clip.frames.empty()) {
    throw Error(ErrorKind::InvalidArgument, "clip '" + clip.video_id + "' has no frames");
  }
  const Frame& first = clip.frames.front();
  for (const Frame& f : clip.frames) {
    if (f.width() != first.width() || f.height() != first.height()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "clip '" + clip.video_id + "' mixes frame sizes");
    }
  }
}

Frame normalize(const Image8& image, const Normalization& norm) {
  Frame out(image.width, image.height);
  auto dst = out.data();
  if (image.pixels.size() != dst.size()) {
    throw Error(ErrorKind::InvalidDimension, "image buffer does not match its dimensions");
  }
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const std::size_t c = i % Frame::kChannels;
    dst[i] = (static_cast<float>(image.pixels[i]) / 255.0F - norm.mean[c]) / norm.stddev[c];
  }
  return out;
}

Image8 denormalize(const Frame& frame, const Normalization& norm) {
  Image8 out{frame.width(), frame.height(), {}};
  const auto src = frame.data();
  out.pixels.resize(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::size_t c = i % Frame::kChannels;
    const float unit = std::clamp(src[i] * norm.stddev[c] + norm.mean[c], 0.0F, 1.0F);
    out.pixels[i] = static_cast<std::uint8_t>(std::lround(unit * 255.0F));
  }
  return out;
}

}  // namespace maskaug
