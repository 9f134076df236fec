"""FER2013 ingestion: CSV parsing, official splits, label statistics, subsampling.

The source file is the standard FER2013 CSV (header ``emotion,pixels,Usage``;
``pixels`` holds 2,304 space-separated intensities in row-major order). Usage
tags map onto the official partitions: Training -> train, PublicTest ->
validation, PrivateTest -> test. Row order within each split is preserved.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

IMAGE_SIZE = 48
PIXELS_PER_IMAGE = IMAGE_SIZE * IMAGE_SIZE
NUM_CLASSES = 7

SPLITS = ("train", "validation", "test")

USAGE_TO_SPLIT = {
    "Training": "train",
    "PublicTest": "validation",
    "PrivateTest": "test",
}

# FER2013 numeric label convention; index 3 (happiness) is the modal class.
EXPRESSION_NAMES = (
    "anger",
    "disgust",
    "fear",
    "happiness",
    "sadness",
    "surprise",
    "neutral",
)


class ParseError(ValueError):
    """Malformed FER2013 row; the message names the offending data row."""


def class_name(label: int) -> str:
    """Human-readable expression name for a class id in {0..6}."""
    if not 0 <= int(label) < NUM_CLASSES:
        raise ValueError(f"label must be in 0..{NUM_CLASSES - 1}, got {label}")
    return EXPRESSION_NAMES[int(label)]


@dataclass(frozen=True)
class Sample:
    """One 48x48 grayscale face crop with its expression label."""

    image: np.ndarray  # (48, 48) uint8
    label: int
    split: str
    index: int  # ordinal within the split


@dataclass(frozen=True)
class DatasetStats:
    """Per-split counts and per-class histograms."""

    split_counts: dict[str, int]
    class_counts: dict[str, np.ndarray]  # split -> (7,) int64
    total: int


@dataclass
class FerDataset:
    """Parsed dataset: one (images, labels) array pair per split.

    Images are (N, 48, 48) uint8, labels (N,) int64. Arrays are treated as
    immutable after construction and are safe to share across threads.
    """

    images: dict[str, np.ndarray]
    labels: dict[str, np.ndarray]
    source: str = ""
    _hash: str = field(default="", repr=False)

    def __post_init__(self) -> None:
        for split in SPLITS:
            self.images.setdefault(split, np.zeros((0, IMAGE_SIZE, IMAGE_SIZE), np.uint8))
            self.labels.setdefault(split, np.zeros((0,), np.int64))
            self.images[split].setflags(write=False)
            self.labels[split].setflags(write=False)

    @property
    def stats(self) -> DatasetStats:
        split_counts = {s: int(self.labels[s].shape[0]) for s in SPLITS}
        class_counts = {
            s: np.bincount(self.labels[s], minlength=NUM_CLASSES).astype(np.int64)
            for s in SPLITS
        }
        return DatasetStats(split_counts, class_counts, sum(split_counts.values()))

    def sample(self, split: str, index: int) -> Sample:
        return Sample(self.images[split][index], int(self.labels[split][index]), split, index)

    def samples(self, split: str) -> list[Sample]:
        return [self.sample(split, i) for i in range(self.labels[split].shape[0])]

    def content_hash(self) -> str:
        """sha256 over pixel and label content, invariant to CSV formatting."""
        if not self._hash:
            h = hashlib.sha256()
            for split in SPLITS:
                h.update(split.encode())
                h.update(self.labels[split].tobytes())
                h.update(self.images[split].tobytes())
            self._hash = h.hexdigest()
        return self._hash


def parse_fer2013(path: str | Path) -> FerDataset:
    """Parse a FER2013 CSV into per-split arrays.

    Raises FileNotFoundError for a missing file and ParseError (naming the
    1-based data row) for a wrong pixel count, an out-of-range emotion, or an
    unknown usage tag. A header-only file yields an empty dataset.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"FER2013 CSV not found: {path}")

    images: dict[str, list[np.ndarray]] = {s: [] for s in SPLITS}
    labels: dict[str, list[int]] = {s: [] for s in SPLITS}

    with path.open("r", newline="") as fh:
        header = fh.readline()
        if not header.strip():
            raise ParseError("missing header row")
        for row_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ParseError(f"row {row_no}: expected 3 fields, got {len(parts)}")
            emotion_s, pixels_s, usage = parts[0].strip(), parts[1], parts[2].strip()
            try:
                emotion = int(emotion_s)
            except ValueError:
                raise ParseError(f"row {row_no}: emotion {emotion_s!r} is not an integer") from None
            if not 0 <= emotion < NUM_CLASSES:
                raise ParseError(f"row {row_no}: emotion {emotion} outside 0..{NUM_CLASSES - 1}")
            if usage not in USAGE_TO_SPLIT:
                raise ParseError(f"row {row_no}: unknown usage tag {usage!r}")
            try:
                pixels = np.array(pixels_s.split(), dtype=np.int16)
            except (ValueError, OverflowError):
                raise ParseError(f"row {row_no}: non-integer pixel value") from None
            if pixels.shape[0] != PIXELS_PER_IMAGE:
                raise ParseError(
                    f"row {row_no}: expected {PIXELS_PER_IMAGE} pixels, got {pixels.shape[0]}"
                )
            if pixels.min() < 0 or pixels.max() > 255:
                raise ParseError(f"row {row_no}: pixel value outside 0..255")
            split = USAGE_TO_SPLIT[usage]
            images[split].append(pixels.astype(np.uint8).reshape(IMAGE_SIZE, IMAGE_SIZE))
            labels[split].append(emotion)

    return FerDataset(
        images={
            s: (np.stack(images[s]) if images[s] else np.zeros((0, IMAGE_SIZE, IMAGE_SIZE), np.uint8))
            for s in SPLITS
        },
        labels={s: np.array(labels[s], dtype=np.int64) for s in SPLITS},
        source=str(path),
    )


def pixels_to_string(image: np.ndarray) -> str:
    """Serialize one image back to the CSV pixel-field format (lossless)."""
    return " ".join(str(int(v)) for v in image.ravel())


def stratified_indices(labels: np.ndarray, fraction: float, seed: int) -> np.ndarray:
    """Deterministic class-stratified selection, preserving source order.

    Per class c with n_c members, round(n_c * fraction) are drawn without
    replacement; the union is returned sorted so relative order survives.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    if labels.shape[0] == 0:
        raise ValueError("cannot subsample an empty split")
    if fraction == 1.0:
        return np.arange(labels.shape[0])
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    chosen: list[np.ndarray] = []
    for c in range(NUM_CLASSES):
        members = np.flatnonzero(labels == c)
        if members.shape[0] == 0:
            continue
        k = int(round(members.shape[0] * fraction))
        if k > 0:
            chosen.append(rng.choice(members, size=k, replace=False))
    return np.sort(np.concatenate(chosen)) if chosen else np.zeros((0,), np.int64)


def subset(dataset: FerDataset, split: str, fraction: float, seed: int) -> FerDataset:
    """Dataset with the given split replaced by a stratified subsample.

    fraction=1 returns the input unchanged. Other splits are untouched.
    """
    if split not in SPLITS:
        raise ValueError(f"unknown split {split!r}")
    if fraction == 1.0:
        return dataset
    idx = stratified_indices(dataset.labels[split], fraction, seed)
    images = dict(dataset.images)
    labels = dict(dataset.labels)
    images[split] = dataset.images[split][idx].copy()
    labels[split] = dataset.labels[split][idx].copy()
    return FerDataset(images=images, labels=labels, source=dataset.source)


def write_manifest(dataset: FerDataset, path: str | Path) -> None:
    """Write the dataset manifest in a key-value text format.

    Layout: one ``key: value`` pair per line; class counts are comma-joined
    in label order (anger..neutral).
    """
    stats = dataset.stats
    lines = [
        "format: fer2013-manifest/1",
        f"source: {dataset.source}",
        f"content_hash: {dataset.content_hash()}",
        f"total: {stats.total}",
    ]
    for split in SPLITS:
        lines.append(f"{split}.count: {stats.split_counts[split]}")
        lines.append(f"{split}.class_counts: " + ",".join(map(str, stats.class_counts[split])))
    Path(path).write_text("\n".join(lines) + "\n")


def read_manifest(path: str | Path) -> dict[str, str]:
    """Parse a manifest written by write_manifest back into a flat dict."""
    out: dict[str, str] = {}
    for line in Path(path).read_text().splitlines():
        if line.strip():
            key, _, value = line.partition(":")
            out[key.strip()] = value.strip()
    return out
