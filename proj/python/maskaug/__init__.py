"""Masking augmentation and static-bias probing for video action recognition."""

from ._maskaug import (
    MASKING_MODES,
    MaskaugError,
    cli,
    decode_rle,
    derive_seed,
    encode_rle,
    generate_synth,
    infonce_loss,
    mask_frame,
    parse_ratio,
    report,
    sample_color,
    sample_color_pair,
    sample_modes,
)

__all__ = [
    "MASKING_MODES",
    "MaskaugError",
    "cli",
    "decode_rle",
    "derive_seed",
    "encode_rle",
    "generate_synth",
    "infonce_loss",
    "mask_frame",
    "parse_ratio",
    "report",
    "sample_color",
    "sample_color_pair",
    "sample_modes",
]
