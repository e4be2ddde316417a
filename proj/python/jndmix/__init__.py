"""JND-bounded perceptual noise augmentation for NR-IQA datasets."""

from jndmix._core import (
    AugmentedSample,
    DatasetManifest,
    IoError,
    ManifestRecord,
    MetricReport,
    Rng,
    Split,
    ValidationError,
    derive_seed,
    estimate_jnd,
    full_jnd_inject,
    gaussian_inject,
    jndmix,
    load_image,
    load_jnd_map,
    load_manifest,
    make_split,
    plcc,
    rank_with_ties,
    repeat_protocol,
    sample_lambda,
    sample_sign_field,
    save_image,
    save_jnd_map,
    scale_map,
    srcc,
    subsample_train,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedSample",
    "DatasetManifest",
    "IoError",
    "ManifestRecord",
    "MetricReport",
    "Rng",
    "Split",
    "ValidationError",
    "derive_seed",
    "estimate_jnd",
    "full_jnd_inject",
    "gaussian_inject",
    "jndmix",
    "load_image",
    "load_jnd_map",
    "load_manifest",
    "make_split",
    "plcc",
    "rank_with_ties",
    "repeat_protocol",
    "sample_lambda",
    "sample_sign_field",
    "save_image",
    "save_jnd_map",
    "scale_map",
    "srcc",
    "subsample_train",
]
