"""Symbolic layer vocabulary for the architecture catalog.

A network is an ordered tuple of these specs. Letter codes cover only the
structural layers (C/P/N/I/F and residual groups written as e.g. "3R");
BatchNorm, Dropout, and Flatten never appear in a code. ReLU activations are
implicit: the substrate inserts one after every conv/fc (and its batch norm,
when present) except the final classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

POOL_KINDS = ("max", "avg", "stochastic")


@dataclass(frozen=True)
class Conv:
    out_channels: int
    kernel: int
    stride: int = 1
    padding: int = 0

    def __post_init__(self) -> None:
        if self.out_channels < 1 or self.kernel < 1 or self.stride < 1 or self.padding < 0:
            raise ValueError(f"invalid conv spec {self}")


@dataclass(frozen=True)
class Pool:
    kind: str
    kernel: int
    stride: int

    def __post_init__(self) -> None:
        if self.kind not in POOL_KINDS:
            raise ValueError(f"pool kind must be one of {POOL_KINDS}, got {self.kind!r}")
        if self.kernel < 1 or self.stride < 1:
            raise ValueError(f"invalid pool spec {self}")


@dataclass(frozen=True)
class ResponseNorm:
    """Local response normalization across channels; no learnable parameters."""

    window: int = 5

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"invalid response-norm window {self.window}")


@dataclass(frozen=True)
class FullyConnected:
    units: int

    def __post_init__(self) -> None:
        if self.units < 1:
            raise ValueError(f"invalid fc units {self.units}")


@dataclass(frozen=True)
class BatchNorm:
    pass


@dataclass(frozen=True)
class Dropout:
    """rate=None defers to the run-level (grid-searched) dropout rate."""

    rate: float | None = None

    def __post_init__(self) -> None:
        if self.rate is not None and not 0.0 <= self.rate < 1.0:
            raise ValueError(f"dropout rate must be in [0, 1), got {self.rate}")


@dataclass(frozen=True)
class InceptionBlock:
    """Multi-branch block parameterized by the 3x3 feature-map count n.

    Branch widths follow fixed ratios of n (floored, minimum 1):
    1x1 = 3n/4, 3x3-reduce = n/2, 3x3 = n, 5x5-reduce = n/8, 5x5 = n/4,
    pool-projection = n/4. Output channels = 1x1 + 3x3 + 5x5 + pool.
    Every branch conv carries its own batch norm.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"invalid inception base count {self.n}")

    @property
    def widths(self) -> dict[str, int]:
        n = self.n
        return {
            "b1x1": max(1, 3 * n // 4),
            "b3x3_reduce": max(1, n // 2),
            "b3x3": n,
            "b5x5_reduce": max(1, n // 8),
            "b5x5": max(1, n // 4),
            "pool_proj": max(1, n // 4),
        }

    @property
    def out_channels(self) -> int:
        w = self.widths
        return w["b1x1"] + w["b3x3"] + w["b5x5"] + w["pool_proj"]


@dataclass(frozen=True)
class ResidualBlock:
    """Two 3x3 convs with identity shortcut; projection (1x1 conv) exactly
    when stride != 1 or the channel count changes. Batch norms built in."""

    channels: int
    stride: int = 1

    def __post_init__(self) -> None:
        if self.channels < 1 or self.stride < 1:
            raise ValueError(f"invalid residual block {self}")


@dataclass(frozen=True)
class Flatten:
    pass


@dataclass(frozen=True)
class Classifier:
    units: int = 7


LayerSpec = Union[
    Conv,
    Pool,
    ResponseNorm,
    FullyConnected,
    BatchNorm,
    Dropout,
    InceptionBlock,
    ResidualBlock,
    Flatten,
    Classifier,
]

# letters for code_of; blocks of ResidualBlock runs are handled separately
_LETTERS = {
    Conv: "C",
    Pool: "P",
    ResponseNorm: "N",
    InceptionBlock: "I",
    FullyConnected: "F",
    Classifier: "F",
}

# weighted-layer depth contribution per structural layer
_DEPTH = {Conv: 1, FullyConnected: 1, Classifier: 1, InceptionBlock: 2, ResidualBlock: 2}


@dataclass(frozen=True)
class ArchitectureSpec:
    """Named layer sequence plus the published parameter budget."""

    name: str
    code: str
    layers: tuple[LayerSpec, ...]
    target_params: int
    input_shape: tuple[int, int, int] = (1, 48, 48)
    notes: str = ""

    def __post_init__(self) -> None:
        derived = code_of(self.layers)
        if derived != self.code:
            raise ValueError(
                f"{self.name}: code {self.code!r} inconsistent with layers ({derived!r})"
            )

    @property
    def depth(self) -> int:
        return spec_depth(self.layers)


def code_of(layers: tuple[LayerSpec, ...]) -> str:
    """Letter code of a layer sequence; runs of residual blocks with equal
    width collapse to '<count>R'. BN/Dropout/Flatten carry no letter."""
    parts: list[str] = []
    run_channels: int | None = None
    run_len = 0

    def flush() -> None:
        nonlocal run_channels, run_len
        if run_len:
            parts.append(f"{run_len}R")
        run_channels, run_len = None, 0

    for layer in layers:
        if isinstance(layer, ResidualBlock):
            if run_len and layer.channels != run_channels:
                flush()
            run_channels = layer.channels
            run_len += 1
            continue
        flush()
        letter = _LETTERS.get(type(layer))
        if letter:
            parts.append(letter)
    flush()
    return "".join(parts)


def spec_depth(layers: tuple[LayerSpec, ...]) -> int:
    """Number of weighted layers (inception and residual blocks count 2)."""
    return sum(_DEPTH.get(type(l), 0) for l in layers)
