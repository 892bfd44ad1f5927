#include "maskaug/compositor.hpp"

#include <bit>
#include <string>

#include "maskaug/error.hpp"

namespace maskaug {

namespace {

void require_match(const Frame& frame, const BinaryMask& m, const char* what) {
  if (frame.width() != m.width() || frame.height() != m.height()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " is " + std::to_string(m.width()) + "x" +
                    std::to_string(m.height()) + ", frame is " + std::to_string(frame.width()) +
                    "x" + std::to_string(frame.height()));
  }
}

void require_match(const Frame& frame, const FrameAnnotations& ann) {
  require_match(frame, ann.person_shape, "person_shape");
  require_match(frame, ann.object_shape, "object_shape");
}

// Writes `c` to every pixel whose bit is set; walks set bits word by word.
void paint(Frame& frame, const BinaryMask& region, const MaskColor& c) {
  auto px = frame.data();
  const auto words = region.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      const std::size_t i = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
      float* dst = px.data() + i * Frame::kChannels;
      dst[0] = c.r;
      dst[1] = c.g;
      dst[2] = c.b;
      bits &= bits - 1;
    }
  }
}

}  // namespace

FrameAnnotations FrameAnnotations::empty(int width, int height) {
  return {BinaryMask(width, height), BinaryMask(width, height), {}, {}};
}

Frame apply_mask(const Frame& frame, const BinaryMask& m, const MaskColor& c) {
  require_match(frame, m, "mask");
  Frame out = frame;
  paint(out, m, c);
  return out;
}

MaskedFrame mask_background(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c) {
  require_match(frame, ann);
  return {apply_mask(frame, complement(ann.person_shape), c), ann.person_shape.none()};
}

Frame mask_object_bbox(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c) {
  require_match(frame, ann);
  const BinaryMask keep =
      unite(complement(from_bboxes(ann.object_boxes, frame.width(), frame.height())),
            ann.person_shape);
  return apply_mask(frame, complement(keep), c);
}

Frame mask_object_shape(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c) {
  require_match(frame, ann);
  return apply_mask(frame, subtract(ann.object_shape, ann.person_shape), c);
}

BackgroundObjectRegions background_object_regions(const FrameAnnotations& ann) {
  BinaryMask object = subtract(ann.object_shape, ann.person_shape);
  BinaryMask background = intersect(complement(ann.person_shape), complement(object));
  return {ann.person_shape, std::move(object), std::move(background)};
}

Frame mask_background_and_object(const Frame& frame, const FrameAnnotations& ann,
                                 const MaskColor& c_bg, const MaskColor& c_obj) {
  require_match(frame, ann);
  const BackgroundObjectRegions regions = background_object_regions(ann);
  Frame out = frame;
  paint(out, regions.background, c_bg);
  paint(out, regions.object, c_obj);
  return out;
}

Frame mask_person_bbox(const Frame& frame, const FrameAnnotations& ann, const MaskColor& c) {
  require_match(frame, ann);
  const BinaryMask keep =
      unite(complement(from_bboxes(ann.person_boxes, frame.width(), frame.height())),
            ann.object_shape);
  return apply_mask(frame, complement(keep), c);
}

MaskColor sample_mask_color(SeededRng& rng) {
  const double r = rng.normal();
  const double g = rng.normal();
  const double b = rng.normal();
  return {static_cast<float>(r), static_cast<float>(g), static_cast<float>(b)};
}

ColorPair sample_color_pair(SeededRng& rng, double min_distance) {
  if (!(min_distance >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "min color distance must be non-negative");
  }
  ColorPair pair{sample_mask_color(rng), sample_mask_color(rng)};
  int resamples = 0;
  while (distance(pair.background, pair.object) < min_distance) {
    if (++resamples > kMaxColorResamples) {
      throw Error(ErrorKind::InvalidArgument,
                  "no color pair at distance >= " + std::to_string(min_distance) + " after " +
                      std::to_string(kMaxColorResamples) + " resamples");
    }
    pair.object = sample_mask_color(rng);
  }
  return pair;
}

MaskedClip mask_clip(const VideoClip& clip, std::span<const FrameAnnotations> anns,
                     MaskingMode mode, SeededRng& rng, const CompositeOptions& options) {
  validate_clip(clip);
  if (anns.size() != clip.frames.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "clip '" + clip.video_id + "' has " + std::to_string(clip.frames.size()) +
                    " frames but " + std::to_string(anns.size()) + " annotations");
  }

  MaskedClip out{VideoClip{clip.video_id, {}}, {}, {}};
  if (mode == MaskingMode::NoMask) {
    out.clip = clip;
    return out;
  }

  if (mode == MaskingMode::BackgroundAndObject) {
    const ColorPair pair = sample_color_pair(rng, options.min_color_distance);
    out.colors = {pair.background, pair.object};
  } else {
    out.colors = {sample_mask_color(rng)};
  }

  out.clip.frames.reserve(clip.frames.size());
  for (std::size_t t = 0; t < clip.frames.size(); ++t) {
    const Frame& frame = clip.frames[t];
    const FrameAnnotations& ann = anns[t];
    const bool person_preserving =
        mode == MaskingMode::Background || mode == MaskingMode::BackgroundAndObject;
    if (person_preserving && ann.person_shape.none()) out.frames_without_person.push_back(t);

    switch (mode) {
      case MaskingMode::Background:
        out.clip.frames.push_back(mask_background(frame, ann, out.colors[0]).frame);
        break;
      case MaskingMode::ObjectBbox:
        out.clip.frames.push_back(mask_object_bbox(frame, ann, out.colors[0]));
        break;
      case MaskingMode::ObjectShape:
        out.clip.frames.push_back(mask_object_shape(frame, ann, out.colors[0]));
        break;
      case MaskingMode::BackgroundAndObject:
        out.clip.frames.push_back(
            mask_background_and_object(frame, ann, out.colors[0], out.colors[1]));
        break;
      case MaskingMode::PersonBbox:
        out.clip.frames.push_back(mask_person_bbox(frame, ann, out.colors[0]));
        break;
      case MaskingMode::NoMask:
        break;
    }
  }
  return out;
}

}  // namespace maskaug
