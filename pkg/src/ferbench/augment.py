"""Deterministic train-time augmentation and test-time ten-crop oversampling.

Every random draw is a pure function of (global_seed, epoch, sample_index):
each key owns a private counter-based generator, so the augmented view of a
sample does not depend on batch composition, worker count, or the order in
which samples are materialized.

Key derivation (the contract an independent reimplementation must follow):
    SeedSequence(global_seed, spawn_key=(STREAM_AUGMENT, epoch, index))
    feeding a Philox generator; draws, in order:
        mirror  = generator.random() < mirror_prob
        dy, dx  = generator.integers(0, 2 * pad + 1, size=2)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# spawn_key namespaces; keep disjoint from training's order/torch streams
STREAM_AUGMENT = 0

MIRROR_PROB = 0.5


def mirror(image: np.ndarray) -> np.ndarray:
    """Reverse the columns (horizontal flip)."""
    return np.ascontiguousarray(image[..., ::-1])


def zero_pad(image: np.ndarray, pad: int) -> np.ndarray:
    if pad < 0:
        raise ValueError(f"pad must be >= 0, got {pad}")
    if pad == 0:
        return image
    return np.pad(image, ((pad, pad), (pad, pad)))


@dataclass(frozen=True)
class AugmentDraw:
    mirror: bool
    dy: int
    dx: int


@dataclass(frozen=True)
class AugmentStream:
    """Counter-mode keyed randomness source for train-time augmentation."""

    global_seed: int
    mirror_prob: float = MIRROR_PROB

    def generator(self, epoch: int, index: int) -> np.random.Generator:
        seq = np.random.SeedSequence(
            self.global_seed, spawn_key=(STREAM_AUGMENT, int(epoch), int(index))
        )
        return np.random.Generator(np.random.Philox(seq))

    def draw(self, epoch: int, index: int, pad: int) -> AugmentDraw:
        g = self.generator(epoch, index)
        do_mirror = bool(g.random() < self.mirror_prob)
        dy, dx = (int(v) for v in g.integers(0, 2 * pad + 1, size=2))
        return AugmentDraw(do_mirror, dy, dx)


def pad_random_crop(
    image: np.ndarray, pad: int, stream: AugmentStream, epoch: int, index: int
) -> np.ndarray:
    """Zero-pad by `pad` per side, then crop back to the input size at a
    stream-keyed offset drawn uniformly from {0..2*pad}^2."""
    draw = stream.draw(epoch, index, pad)
    return crop_at(image, pad, draw.dy, draw.dx)


def crop_at(image: np.ndarray, pad: int, dy: int, dx: int) -> np.ndarray:
    h, w = image.shape
    padded = zero_pad(image, pad)
    return np.ascontiguousarray(padded[dy : dy + h, dx : dx + w])


def apply_train_augmentation(
    image: np.ndarray, stream: AugmentStream, epoch: int, index: int, pad: int
) -> np.ndarray:
    """Mirror with probability mirror_prob, then pad-and-random-crop.

    Both decisions come from the single keyed generator for (epoch, index),
    so two consumers of the same stream see bit-identical outputs.
    """
    draw = stream.draw(epoch, index, pad)
    if draw.mirror:
        image = mirror(image)
    return crop_at(image, pad, draw.dy, draw.dx)


def ten_crop(image: np.ndarray, pad: int) -> np.ndarray:
    """The five canonical crops of the zero-padded image plus their mirrors.

    Crop size equals the input size, so the center crop (position 4) is the
    original image. Order: top-left, top-right, bottom-left, bottom-right,
    center, then the horizontal mirrors of those five.
    """
    if pad < 1:
        raise ValueError(f"ten_crop needs pad >= 1, got {pad}")
    h, w = image.shape
    padded = zero_pad(image, pad)
    offsets = [(0, 0), (0, 2 * pad), (2 * pad, 0), (2 * pad, 2 * pad), (pad, pad)]
    crops = [padded[dy : dy + h, dx : dx + w] for dy, dx in offsets]
    crops += [mirror(c) for c in crops]
    return np.stack([np.ascontiguousarray(c) for c in crops])
