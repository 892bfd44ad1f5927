#include "maskaug/masking_mode.hpp"

namespace maskaug {

std::string_view to_string(MaskingMode mode) noexcept {
  switch (mode) {
    case MaskingMode::NoMask: return "none";
    case MaskingMode::Background: return "background";
    case MaskingMode::ObjectBbox: return "object-bbox";
    case MaskingMode::ObjectShape: return "object-shape";
    case MaskingMode::BackgroundAndObject: return "bg-and-object";
    case MaskingMode::PersonBbox: return "person-bbox";
  }
  return "none";
}

std::optional<MaskingMode> parse_masking_mode(std::string_view name) noexcept {
  for (MaskingMode mode : kAllMaskingModes) {
    if (to_string(mode) == name) return mode;
  }
  return std::nullopt;
}

}  // namespace maskaug
