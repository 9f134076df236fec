"""Shape inference and exact learnable-parameter counting over layer specs.

Counting convention: every conv/fc (classifier included) has a bias; batch
norm contributes 2 learnable scalars per channel (running statistics are
buffers, not parameters). Inception and residual blocks include the batch
norms attached to their internal convs. The torch substrate follows the same
convention, so counts match instantiated models exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layers import (
    ArchitectureSpec,
    BatchNorm,
    Classifier,
    Conv,
    Dropout,
    Flatten,
    FullyConnected,
    InceptionBlock,
    LayerSpec,
    Pool,
    ResidualBlock,
    ResponseNorm,
)


class ShapeError(ValueError):
    """A spatial dimension underflowed or a layer saw an impossible input."""


@dataclass(frozen=True)
class LayerShape:
    layer: LayerSpec
    out: tuple[int, ...]  # (C, H, W) or (units,)
    params: int


def _conv_out(size: int, kernel: int, stride: int, padding: int) -> int:
    out = (size + 2 * padding - kernel) // stride + 1
    if out < 1:
        raise ShapeError(f"kernel {kernel} (stride {stride}) underflows size {size}")
    return out


def infer_shapes(spec: ArchitectureSpec) -> list[LayerShape]:
    """Annotate every layer with its output shape and parameter count."""
    shape: tuple[int, ...] = spec.input_shape
    out: list[LayerShape] = []
    for layer in spec.layers:
        if isinstance(layer, (Conv, Pool, ResponseNorm, InceptionBlock, ResidualBlock)):
            if len(shape) != 3:
                raise ShapeError(f"{type(layer).__name__} needs a (C, H, W) input, got {shape}")
            c, h, w = shape
            if isinstance(layer, Conv):
                h2 = _conv_out(h, layer.kernel, layer.stride, layer.padding)
                w2 = _conv_out(w, layer.kernel, layer.stride, layer.padding)
                params = layer.kernel * layer.kernel * c * layer.out_channels + layer.out_channels
                shape = (layer.out_channels, h2, w2)
            elif isinstance(layer, Pool):
                h2 = _conv_out(h, layer.kernel, layer.stride, 0)
                w2 = _conv_out(w, layer.kernel, layer.stride, 0)
                params = 0
                shape = (c, h2, w2)
            elif isinstance(layer, ResponseNorm):
                params = 0
            elif isinstance(layer, InceptionBlock):
                params = _inception_params(layer, c)
                shape = (layer.out_channels, h, w)
            else:  # ResidualBlock
                h2 = _conv_out(h, 3, layer.stride, 1)
                w2 = _conv_out(w, 3, layer.stride, 1)
                params = _residual_params(layer, c)
                shape = (layer.channels, h2, w2)
        elif isinstance(layer, BatchNorm):
            params = 2 * shape[0]  # works for (C, H, W) and (units,) alike
        elif isinstance(layer, Dropout):
            params = 0
        elif isinstance(layer, Flatten):
            c, h, w = shape
            shape = (c * h * w,)
            params = 0
        elif isinstance(layer, (FullyConnected, Classifier)):
            if len(shape) != 1:
                raise ShapeError(f"{type(layer).__name__} needs a flat input, got {shape}")
            units = layer.units
            params = shape[0] * units + units
            shape = (units,)
        else:
            raise ShapeError(f"unknown layer spec {layer!r}")
        out.append(LayerShape(layer, shape, params))
    return out


def _inception_params(block: InceptionBlock, cin: int) -> int:
    w = block.widths
    convs = (
        cin * w["b1x1"] + w["b1x1"]
        + cin * w["b3x3_reduce"] + w["b3x3_reduce"]
        + 9 * w["b3x3_reduce"] * w["b3x3"] + w["b3x3"]
        + cin * w["b5x5_reduce"] + w["b5x5_reduce"]
        + 25 * w["b5x5_reduce"] * w["b5x5"] + w["b5x5"]
        + cin * w["pool_proj"] + w["pool_proj"]
    )
    bn = 2 * sum(w.values())
    return convs + bn


def _residual_params(block: ResidualBlock, cin: int) -> int:
    c = block.channels
    params = (9 * cin * c + c) + 2 * c  # conv1 + bn1
    params += (9 * c * c + c) + 2 * c  # conv2 + bn2
    if block.stride != 1 or cin != c:
        params += (cin * c + c) + 2 * c  # projection shortcut + bn
    return params


def count_parameters(spec: ArchitectureSpec) -> int:
    """Exact count of learnable scalars over the whole network."""
    return sum(s.params for s in infer_shapes(spec))


def output_units(spec: ArchitectureSpec) -> int:
    final = infer_shapes(spec)[-1].out
    if len(final) != 1:
        raise ShapeError(f"network does not end in a flat output: {final}")
    return final[0]


def within_target(spec: ArchitectureSpec, tolerance: float = 0.05) -> bool:
    """True when the exact count is within +-tolerance of the published one."""
    count = count_parameters(spec)
    return abs(count - spec.target_params) <= tolerance * spec.target_params
