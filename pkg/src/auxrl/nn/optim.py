"""Adam optimizer with bias correction."""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .tensor import Tensor


class Adam:
    """Standard Adam over a fixed list of parameter tensors.

    Keeps first/second moment buffers and a step counter; ``step()`` applies
    one bias-corrected update to every parameter with a gradient and then
    increments the counter. Parameters with ``grad is None`` (e.g. unused
    heads) are skipped.
    """

    def __init__(self, params: list[Tensor], lr: float = 3e-4, beta1: float = 0.9,
                 beta2: float = 0.999, eps: float = 1e-8):
        self.params = list(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.step_count = 0
        self.m = [np.zeros_like(p.data) for p in self.params]
        self.v = [np.zeros_like(p.data) for p in self.params]

    def zero_grad(self):
        for p in self.params:
            p.grad = None

    def step(self):
        self.step_count += 1
        b1, b2 = self.beta1, self.beta2
        bc1 = 1.0 - b1 ** self.step_count
        bc2 = 1.0 - b2 ** self.step_count
        for i, p in enumerate(self.params):
            g = p.grad
            if g is None:
                continue
            if g.shape != p.data.shape:
                raise ShapeError(f"gradient shape {g.shape} != parameter shape {p.data.shape}")
            self.m[i] = b1 * self.m[i] + (1.0 - b1) * g
            self.v[i] = b2 * self.v[i] + (1.0 - b2) * (g * g)
            m_hat = self.m[i] / bc1
            v_hat = self.v[i] / bc2
            p.data = p.data - self.lr * m_hat / (np.sqrt(v_hat) + self.eps)

    # checkpoint support ------------------------------------------------------

    def state_arrays(self) -> dict[str, np.ndarray]:
        out = {"step_count": np.asarray(self.step_count, dtype=np.int64)}
        for i in range(len(self.params)):
            out[f"m{i}"] = self.m[i]
            out[f"v{i}"] = self.v[i]
        return out

    def load_state_arrays(self, arrays: dict[str, np.ndarray]):
        self.step_count = int(arrays["step_count"])
        for i in range(len(self.params)):
            self.m[i] = np.array(arrays[f"m{i}"])
            self.v[i] = np.array(arrays[f"v{i}"])
