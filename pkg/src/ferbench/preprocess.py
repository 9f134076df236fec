"""Illumination correction and global normalization, applied once per image.

Order is fixed: histogram equalization first, then subtraction/division by the
mean and standard deviation pooled over all training-split pixels. Validation
and test images reuse the frozen training statistics; the pipeline refuses to
run twice on the same data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import SPLITS, FerDataset, stratified_indices


@dataclass(frozen=True)
class NormStats:
    """Global intensity statistics of the equalized training split.

    Population (not sample) standard deviation. dataset_hash ties the stats
    to the dataset they were computed from so mismatched reuse is detected.
    """

    mean: float
    std: float
    dataset_hash: str = ""

    def __post_init__(self) -> None:
        if not self.std > 0:
            raise ValueError(f"std must be positive, got {self.std}")


def histogram_equalize(image: np.ndarray) -> np.ndarray:
    """Spread the intensity histogram via the discrete CDF remap.

    T(v) = floor(255 * (cdf(v) - cdf_min) / (N - cdf_min) + 0.5) with cdf_min
    the smallest nonzero CDF value. Monotone nondecreasing in v; constant
    images map to themselves.
    """
    if image.dtype != np.uint8:
        raise TypeError(f"expected uint8 intensities, got {image.dtype}")
    hist = np.bincount(image.ravel(), minlength=256)
    cdf = np.cumsum(hist)
    n = image.size
    cdf_min = int(cdf[np.flatnonzero(hist)[0]])
    if cdf_min == n:  # single intensity, remap undefined
        return image.copy()
    lut = np.floor(255.0 * (cdf - cdf_min) / (n - cdf_min) + 0.5)
    lut = np.clip(lut, 0, 255).astype(np.uint8)
    return lut[image]


def equalize_images(images: np.ndarray) -> np.ndarray:
    """Apply histogram_equalize per image over an (N, H, W) stack."""
    out = np.empty_like(images)
    for i in range(images.shape[0]):
        out[i] = histogram_equalize(images[i])
    return out


def compute_norm_stats(dataset: FerDataset) -> NormStats:
    """Pooled mean/std of all equalized training pixels.

    Takes the whole dataset but reads only the training split, so statistics
    can never be derived from validation or test data.
    """
    train = dataset.images["train"]
    if train.shape[0] == 0:
        raise ValueError("training split is empty")
    pixels = equalize_images(train).astype(np.float64)
    mean = float(pixels.mean())
    std = float(pixels.std())  # population convention
    if std == 0.0:
        raise ValueError("training pixels have zero variance")
    return NormStats(mean=mean, std=std, dataset_hash=dataset.content_hash())


def normalize(image: np.ndarray, stats: NormStats) -> np.ndarray:
    """(pixel - mean) / std, elementwise, as float32."""
    return ((image.astype(np.float32) - stats.mean) / stats.std).astype(np.float32)


@dataclass
class PreprocessedDataset:
    """Equalized and normalized float32 splits plus the frozen NormStats."""

    images: dict[str, np.ndarray]  # split -> (N, 48, 48) float32
    labels: dict[str, np.ndarray]
    stats: NormStats
    dataset_hash: str

    def __post_init__(self) -> None:
        for split in SPLITS:
            self.images[split].setflags(write=False)


def preprocess(dataset: FerDataset, stats: NormStats | None = None) -> PreprocessedDataset:
    """Equalize every split, then normalize with training-split statistics.

    When stats is given (a frozen record from an earlier run) its dataset
    hash must match; otherwise stats are computed here from the training
    split. Feeding an already-preprocessed dataset is rejected.
    """
    if isinstance(dataset, PreprocessedDataset):
        raise TypeError("dataset is already preprocessed; the pipeline runs once")
    if stats is None:
        stats = compute_norm_stats(dataset)
    elif stats.dataset_hash and stats.dataset_hash != dataset.content_hash():
        raise ValueError(
            "norm stats were computed from a different dataset "
            f"(stats hash {stats.dataset_hash[:12]}.., data hash {dataset.content_hash()[:12]}..)"
        )
    images = {
        split: normalize(equalize_images(dataset.images[split]), stats)
        for split in SPLITS
    }
    return PreprocessedDataset(
        images=images,
        labels={s: dataset.labels[s].copy() for s in SPLITS},
        stats=stats,
        dataset_hash=dataset.content_hash(),
    )


def subset_train(pre: PreprocessedDataset, fraction: float, seed: int) -> PreprocessedDataset:
    """Stratified subsample of the training split of preprocessed data.

    Applied after normalization so desk-scale runs keep the full-split
    NormStats and stay comparable across fractions. fraction=1 is identity.
    """
    if fraction == 1.0:
        return pre
    idx = stratified_indices(pre.labels["train"], fraction, seed)
    images = dict(pre.images)
    labels = dict(pre.labels)
    images["train"] = pre.images["train"][idx].copy()
    labels["train"] = pre.labels["train"][idx].copy()
    return PreprocessedDataset(
        images=images, labels=labels, stats=pre.stats, dataset_hash=pre.dataset_hash
    )
