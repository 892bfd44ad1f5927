#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "maskaug/compositor.hpp"
#include "maskaug/masking_mode.hpp"
#include "maskaug/rng.hpp"

namespace maskaug {

/// Which ratio layout a ratio string uses.
///   background: NoMask : Background
///   object:     NoMask : ObjectBbox : ObjectShape : BackgroundAndObject
enum class BiasKind { Background, Object };

std::string_view to_string(BiasKind kind) noexcept;
BiasKind parse_bias_kind(std::string_view name);

/// Categorical distribution over training masking modes.
class RatioSpec {
 public:
  /// Normalizes `weights` (indexed by MaskingMode). Throws on negative or
  /// non-finite entries, an all-zero vector, or a positive PersonBbox weight.
  explicit RatioSpec(const std::array<double, kMaskingModeCount>& weights);

  /// NoMask with probability 1.
  static RatioSpec identity();

  double weight(MaskingMode mode) const noexcept {
    return weights_[static_cast<std::size_t>(mode)];
  }
  const std::array<double, kMaskingModeCount>& weights() const noexcept { return weights_; }
  bool is_identity() const noexcept { return weight(MaskingMode::NoMask) == 1.0; }

  friend bool operator==(const RatioSpec&, const RatioSpec&) = default;

 private:
  std::array<double, kMaskingModeCount> weights_;
};

/// Parses "1:0", "0.33:0.67", "0.33:0:0.33:0.33". Throws ErrorKind::Parse.
RatioSpec parse_ratio(std::string_view text, BiasKind kind);

/// Inverse notation of `parse_ratio` for logs (weights after normalization).
std::string format_ratio(const RatioSpec& spec, BiasKind kind);

/// One categorical draw: a single uniform compared against the cumulative
/// weights in MaskingMode order.
MaskingMode sample_mode(const RatioSpec& spec, SeededRng& rng);

struct AugmentedSample {
  MaskedClip masked;
  MaskingMode mode = MaskingMode::NoMask;
};

/// Seeds an rng from (global_seed, epoch, video_id), draws the mode, then masks
/// the clip with colors drawn from the same rng.
AugmentedSample augment_sample(const VideoClip& clip, std::span<const FrameAnnotations> anns,
                               const RatioSpec& spec, std::uint64_t global_seed,
                               std::uint64_t epoch, const CompositeOptions& options = {});

}  // namespace maskaug
