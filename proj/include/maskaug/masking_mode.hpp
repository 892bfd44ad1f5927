#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace maskaug {

/// Masking applied to a clip. `PersonBbox` only exists for evaluation.
enum class MaskingMode {
  NoMask,
  Background,
  ObjectBbox,
  ObjectShape,
  BackgroundAndObject,
  PersonBbox,
};

inline constexpr std::size_t kMaskingModeCount = 6;

inline constexpr std::array<MaskingMode, kMaskingModeCount> kAllMaskingModes{
    MaskingMode::NoMask,      MaskingMode::Background,          MaskingMode::ObjectBbox,
    MaskingMode::ObjectShape, MaskingMode::BackgroundAndObject, MaskingMode::PersonBbox,
};

/// CLI spelling: none, background, object-bbox, object-shape, bg-and-object, person-bbox.
std::string_view to_string(MaskingMode mode) noexcept;
std::optional<MaskingMode> parse_masking_mode(std::string_view name) noexcept;

}  // namespace maskaug
