"""Finite-difference verification of analytic gradients.

The checker re-evaluates the loss with individual parameter coordinates
nudged by ±h and compares the central difference against the gradient from
one reverse-mode pass. It is the independent oracle for the autodiff engine
and is exposed on the command line as ``auxrl gradcheck``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensor import Tensor


@dataclass
class CoordinateResult:
    param_index: int
    coord: tuple
    analytic: float
    numeric: float
    rel_error: float


@dataclass
class GradCheckReport:
    max_rel_error: float
    tolerance: float
    num_coords: int
    worst: CoordinateResult | None = None
    failures: list[CoordinateResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_rel_error <= self.tolerance

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: max relative error {self.max_rel_error:.3e} over "
            f"{self.num_coords} coordinates (tolerance {self.tolerance:.1e})"
        )


def check_gradients(
    params: list[Tensor],
    loss_fn,
    *,
    rng: np.random.Generator,
    num_coords: int = 100,
    h: float = 1e-5,
    tolerance: float = 1e-4,
    grad_offset: float = 0.0,
) -> GradCheckReport:
    """Compare reverse-mode gradients of ``loss_fn()`` against central
    finite differences on randomly sampled parameter coordinates.

    ``loss_fn`` must rebuild the forward pass from the current parameter
    values and return a scalar Tensor. Parameters should be float64 for the
    default tolerance to be meaningful. ``grad_offset`` deliberately corrupts
    the analytic gradients (negative-control hook for the CLI).

    Relative error uses max(|analytic|, |numeric|, 1e-8) as denominator.
    """
    for p in params:
        p.grad = None
    loss = loss_fn()
    loss.backward()
    grads = [np.array(p.grad) + grad_offset for p in params]

    # Sample coordinates across all parameters, proportional to their size.
    sizes = np.array([p.data.size for p in params])
    total = int(sizes.sum())
    picks = rng.integers(0, total, size=num_coords)
    bounds = np.cumsum(sizes)

    results = []
    for flat in picks:
        pi = int(np.searchsorted(bounds, flat, side="right"))
        local = int(flat - (bounds[pi - 1] if pi > 0 else 0))
        coord = np.unravel_index(local, params[pi].data.shape)
        original = params[pi].data[coord]
        params[pi].data[coord] = original + h
        up = loss_fn().item()
        params[pi].data[coord] = original - h
        down = loss_fn().item()
        params[pi].data[coord] = original
        numeric = (up - down) / (2.0 * h)
        analytic = float(grads[pi][coord])
        rel = abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-8)
        results.append(CoordinateResult(pi, tuple(int(c) for c in coord), analytic, numeric, rel))

    worst = max(results, key=lambda r: r.rel_error)
    failures = [r for r in results if r.rel_error > tolerance]
    return GradCheckReport(
        max_rel_error=worst.rel_error,
        tolerance=tolerance,
        num_coords=num_coords,
        worst=worst,
        failures=failures,
    )
