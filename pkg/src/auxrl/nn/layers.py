"""Dense layers, DenseNet-style concatenation blocks, and plain MLPs."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .tensor import Tensor, concat

ACTIVATIONS = ("identity", "relu", "swish", "tanh")


def _apply_activation(x: Tensor, name: str) -> Tensor:
    if name == "identity":
        return x
    if name == "relu":
        return x.relu()
    if name == "swish":
        return x.swish()
    if name == "tanh":
        return x.tanh()
    raise ValueError(f"unknown activation {name!r}")


class Module:
    """Base class providing parameter collection over nested modules."""

    def parameters(self) -> list[Tensor]:
        params = []
        for value in vars(self).values():
            if isinstance(value, Tensor) and value.requires_grad:
                params.append(value)
            elif isinstance(value, Module):
                params.extend(value.parameters())
            elif isinstance(value, (list, tuple)):
                for item in value:
                    if isinstance(item, Module):
                        params.extend(item.parameters())
        return params

    def zero_grad(self):
        for p in self.parameters():
            p.grad = None

    def __call__(self, x):
        return self.forward(x)


class Dense(Module):
    """Fully connected layer: activation(x @ weight + bias).

    ``weight[i, j]`` connects input coordinate i to output j. Hidden layers
    use fan-in scaled uniform init; pass ``init_scale`` for the small-uniform
    init conventional on output layers.
    """

    def __init__(
        self,
        in_dim: int,
        out_dim: int,
        activation: str = "identity",
        *,
        rng: np.random.Generator,
        init_scale: float | None = None,
        dtype=np.float32,
    ):
        if in_dim < 1 or out_dim < 1:
            raise ShapeError(f"dense layer needs positive dims, got {in_dim}x{out_dim}")
        if activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {activation!r}")
        self.in_dim = in_dim
        self.out_dim = out_dim
        self.activation = activation
        bound = init_scale if init_scale is not None else np.sqrt(6.0 / in_dim)
        w = rng.uniform(-bound, bound, size=(in_dim, out_dim))
        self.weight = Tensor(w.astype(dtype), requires_grad=True)
        self.bias = Tensor(np.zeros(out_dim, dtype=dtype), requires_grad=True)

    def forward(self, x) -> Tensor:
        x = x if isinstance(x, Tensor) else Tensor(x)
        if x.data.ndim == 1:
            return self.forward(x.reshape(1, -1)).reshape(-1)
        if x.data.ndim != 2 or x.data.shape[1] != self.in_dim:
            raise ShapeError(
                f"dense layer expects (*, {self.in_dim}) input, got {x.data.shape}"
            )
        return _apply_activation(x @ self.weight + self.bias, self.activation)


class DenseBlock(Module):
    """DenseNet-style block: output = [input, activation(dense(input))].

    Output dimension is exactly ``in_dim + width`` and the first ``in_dim``
    entries are the input passed through untouched.
    """

    def __init__(self, in_dim: int, width: int, activation: str = "swish", *, rng, dtype=np.float32):
        self.layer = Dense(in_dim, width, activation, rng=rng, dtype=dtype)
        self.in_dim = in_dim
        self.width = width
        self.out_dim = in_dim + width

    def forward(self, x) -> Tensor:
        x = x if isinstance(x, Tensor) else Tensor(x)
        return concat([x, self.layer(x)], axis=-1)


class DenseStack(Module):
    """L stacked DenseNet blocks; output dimension grows by width per block."""

    def __init__(self, in_dim: int, num_blocks: int, width: int, activation: str = "swish", *, rng, dtype=np.float32):
        if num_blocks < 1:
            raise ShapeError(f"a DenseNet stack needs at least one block, got {num_blocks}")
        self.blocks = []
        dim = in_dim
        for _ in range(num_blocks):
            block = DenseBlock(dim, width, activation, rng=rng, dtype=dtype)
            self.blocks.append(block)
            dim = block.out_dim
        self.in_dim = in_dim
        self.out_dim = dim

    def forward(self, x) -> Tensor:
        for block in self.blocks:
            x = block(x)
        return x


class MLP(Module):
    """Plain feedforward net used by the actor and critic heads."""

    def __init__(
        self,
        in_dim: int,
        hidden: tuple[int, ...],
        out_dim: int,
        hidden_activation: str = "relu",
        out_activation: str = "identity",
        *,
        rng,
        out_init_scale: float = 3e-3,
        dtype=np.float32,
    ):
        self.layers = []
        dim = in_dim
        for width in hidden:
            self.layers.append(Dense(dim, width, hidden_activation, rng=rng, dtype=dtype))
            dim = width
        self.layers.append(
            Dense(dim, out_dim, out_activation, rng=rng, init_scale=out_init_scale, dtype=dtype)
        )
        self.in_dim = in_dim
        self.out_dim = out_dim

    def forward(self, x) -> Tensor:
        for layer in self.layers:
            x = layer(x)
        return x
