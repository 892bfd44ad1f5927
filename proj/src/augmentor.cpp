#include "maskaug/augmentor.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "maskaug/error.hpp"

namespace maskaug {

namespace {

constexpr std::array<MaskingMode, 2> kBackgroundLayout{MaskingMode::NoMask,
                                                       MaskingMode::Background};
constexpr std::array<MaskingMode, 4> kObjectLayout{
    MaskingMode::NoMask, MaskingMode::ObjectBbox, MaskingMode::ObjectShape,
    MaskingMode::BackgroundAndObject};

std::span<const MaskingMode> layout(BiasKind kind) {
  if (kind == BiasKind::Background) return kBackgroundLayout;
  return kObjectLayout;
}

double parse_entry(std::string_view token, std::string_view text) {
  auto fail = [&](const std::string& why) -> double {
    throw Error(ErrorKind::Parse, "ratio '" + std::string(text) + "': " + why);
  };
  if (token.empty()) return fail("empty entry");
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return fail("'" + std::string(token) + "' is not a number");
  if (!std::isfinite(value)) return fail("entries must be finite");
  if (value < 0.0) return fail("entries must be non-negative");
  return value;
}

}  // namespace

std::string_view to_string(BiasKind kind) noexcept {
  return kind == BiasKind::Background ? "background" : "object";
}

BiasKind parse_bias_kind(std::string_view name) {
  if (name == "background") return BiasKind::Background;
  if (name == "object") return BiasKind::Object;
  throw Error(ErrorKind::Parse,
              "bias kind must be 'background' or 'object', got '" + std::string(name) + "'");
}

RatioSpec::RatioSpec(const std::array<double, kMaskingModeCount>& weights) : weights_(weights) {
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "ratio weights must be finite and non-negative");
    }
    total += w;
  }
  if (weight(MaskingMode::PersonBbox) > 0.0) {
    throw Error(ErrorKind::InvalidArgument, "person-bbox masking is evaluation-only");
  }
  if (total <= 0.0) throw Error(ErrorKind::InvalidArgument, "ratio has no positive weight");
  for (double& w : weights_) w /= total;
}

RatioSpec RatioSpec::identity() {
  std::array<double, kMaskingModeCount> w{};
  w[static_cast<std::size_t>(MaskingMode::NoMask)] = 1.0;
  return RatioSpec(w);
}

RatioSpec parse_ratio(std::string_view text, BiasKind kind) {
  const auto modes = layout(kind);
  std::vector<double> entries;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    entries.push_back(parse_entry(text.substr(start, colon - start), text));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (entries.size() != modes.size()) {
    throw Error(ErrorKind::Parse, "ratio '" + std::string(text) + "' has " +
                                      std::to_string(entries.size()) + " entries, " +
                                      std::string(to_string(kind)) + " bias expects " +
                                      std::to_string(modes.size()));
  }
  std::array<double, kMaskingModeCount> weights{};
  double total = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    weights[static_cast<std::size_t>(modes[i])] = entries[i];
    total += entries[i];
  }
  if (total <= 0.0) throw Error(ErrorKind::Parse, "ratio '" + std::string(text) + "' is all zero");
  return RatioSpec(weights);
}

std::string format_ratio(const RatioSpec& spec, BiasKind kind) {
  std::ostringstream out;
  bool first = true;
  for (MaskingMode mode : layout(kind)) {
    if (!first) out << ':';
    out << spec.weight(mode);
    first = false;
  }
  return out.str();
}

MaskingMode sample_mode(const RatioSpec& spec, SeededRng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  MaskingMode last_positive = MaskingMode::NoMask;
  for (MaskingMode mode : kAllMaskingModes) {
    const double w = spec.weight(mode);
    if (w <= 0.0) continue;
    cumulative += w;
    last_positive = mode;
    if (u < cumulative) return mode;
  }
  // Rounding can leave the cumulative sum a hair below 1.
  return last_positive;
}

AugmentedSample augment_sample(const VideoClip& clip, std::span<const FrameAnnotations> anns,
                               const RatioSpec& spec, std::uint64_t global_seed,
                               std::uint64_t epoch, const CompositeOptions& options) {
  SeededRng rng(derive_seed(global_seed, epoch, clip.video_id));
  const MaskingMode mode = sample_mode(spec, rng);
  return {mask_clip(clip, anns, mode, rng, options), mode};
}

}  // namespace maskaug
