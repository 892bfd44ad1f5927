#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maskaug/frame.hpp"
#include "maskaug/mask.hpp"
#include "maskaug/masking_mode.hpp"
#include "maskaug/rng.hpp"

namespace maskaug {

/// Per-frame detections. `object_shape` is kept as detected and may overlap
/// `person_shape`; overlap is resolved in favour of the person when compositing.
struct FrameAnnotations {
  BinaryMask person_shape;
  BinaryMask object_shape;
  std::vector<BBox> person_boxes;
  std::vector<BBox> object_boxes;

  /// No person, no object.
  static FrameAnnotations empty(int width, int height);

  friend bool operator==(const FrameAnnotations&, const FrameAnnotations&) = default;
};

/// X = (1 - M) * V + c * M. Pixels with M = 1 become `c`; the rest are copied
/// bit-for-bit.
Frame apply_mask(const Frame& frame, const BinaryMask& m, const MaskColor& c);

struct MaskedFrame {
  Frame frame;
  /// Person mask was empty, so the whole frame was painted.
  bool empty_person = false;
};

/// Keeps the person, paints everything else.
MaskedFrame mask_background(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c);

/// Paints object boxes except where they cover the person.
Frame mask_object_bbox(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c);

/// Paints object pixels that are not person pixels.
Frame mask_object_shape(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c);

/// Person kept; object (minus person) painted `c_obj`; the rest painted `c_bg`.
Frame mask_background_and_object(const Frame& frame, const FrameAnnotations& ann,
                                 const MaskColor& c_bg, const MaskColor& c_obj);

/// Paints person boxes except where they cover object shapes. Evaluation only.
Frame mask_person_bbox(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c);

/// The three disjoint regions of the two-color rule.
struct BackgroundObjectRegions {
  BinaryMask person;
  BinaryMask object;
  BinaryMask background;
};
BackgroundObjectRegions background_object_regions(const FrameAnnotations& ann);

/// Three independent standard-normal channels.
MaskColor sample_mask_color(SeededRng& rng);

struct ColorPair {
  MaskColor background;
  MaskColor object;
};

inline constexpr double kDefaultMinColorDistance = 0.1;
inline constexpr int kMaxColorResamples = 100;

/// Resamples the object color until it is at least `min_distance` away from
/// the background color. Throws after `kMaxColorResamples` failed attempts.
ColorPair sample_color_pair(SeededRng& rng, double min_distance = kDefaultMinColorDistance);

struct CompositeOptions {
  double min_color_distance = kDefaultMinColorDistance;
};

struct MaskedClip {
  VideoClip clip;
  /// Colors drawn for this clip: none for NoMask, {bg, obj} for
  /// BackgroundAndObject, one otherwise.
  std::vector<MaskColor> colors;
  /// Frames whose person mask was empty under a person-preserving mode.
  std::vector<std::size_t> frames_without_person;
};

/// Applies `mode` to every frame. Colors are drawn once and shared by all frames.
MaskedClip mask_clip(const VideoClip& clip, std::span<const FrameAnnotations> anns,
                     MaskingMode mode, SeededRng& rng, const CompositeOptions& options = {});

}  // namespace maskaug
