"""Autodiff engine: hand-checked derivatives and finite-difference oracles."""

import numpy as np
import pytest

from auxrl.errors import NumericsError, ShapeError
from auxrl.nn import Tensor, concat, minimum
from auxrl.nn.tensor import _unbroadcast


def fd_grad(f, x, h=1e-6):
    """Central finite differences of scalar f at ndarray x."""
    g = np.zeros_like(x)
    it = np.nditer(x, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        orig = x[idx]
        x[idx] = orig + h
        up = f()
        x[idx] = orig - h
        down = f()
        x[idx] = orig
        g[idx] = (up - down) / (2 * h)
    return g


def test_linear_loss_gradient_is_input():
    w = Tensor(np.array([[3.0]]), requires_grad=True)
    x = Tensor(np.array([[2.0]]))
    loss = (x @ w).sum()
    loss.backward()
    assert w.grad[0, 0] == 2.0


def test_mse_at_optimum_has_zero_gradient():
    w = Tensor(np.array([[1.0, 0.0], [0.0, 1.0]]), requires_grad=True)
    x = Tensor(np.array([[1.0, 2.0]]))
    target = np.array([[1.0, 2.0]])
    loss = (((x @ w) - target) ** 2).mean()
    loss.backward()
    assert np.allclose(w.grad, 0.0)


def test_add_broadcasts_bias_and_sums_gradient():
    b = Tensor(np.zeros(3), requires_grad=True)
    x = Tensor(np.ones((4, 3)))
    (x + b).sum().backward()
    assert b.grad.shape == (3,)
    assert np.allclose(b.grad, 4.0)


def test_unbroadcast_handles_keepdim_axes():
    g = np.ones((5, 3))
    assert _unbroadcast(g, (1, 3)).shape == (1, 3)
    assert _unbroadcast(g, (3,)).shape == (3,)
    assert np.allclose(_unbroadcast(g, (1, 3)), 5.0)


def test_every_op_matches_fd_with_weights():
    rng = np.random.default_rng(3)
    ops = {
        "relu": lambda t: t.relu(),
        "tanh": lambda t: t.tanh(),
        "sigmoid": lambda t: t.sigmoid(),
        "swish": lambda t: t.swish(),
        "exp": lambda t: t.exp(),
        "softplus": lambda t: t.softplus(),
        "clip": lambda t: t.clip(-0.5, 0.7),
        "square": lambda t: t * t,
        "cube": lambda t: t**3,
        "ratio": lambda t: t / (t * t + 1.0),
        "affine": lambda t: (t - 2.0) * (-t),
        "log_shift": lambda t: (t * t + 1.0).log(),
    }
    for name, op in ops.items():
        x_val = rng.normal(size=6)
        w = rng.normal(size=6)
        x = Tensor(x_val.copy(), requires_grad=True)
        loss = (op(x) * w).sum()
        loss.backward()
        numeric = fd_grad(lambda: (ops[name](Tensor(x.data)).data * w).sum(), x.data)
        np.testing.assert_allclose(x.grad, numeric, rtol=1e-5, atol=1e-7, err_msg=name)


def test_matmul_gradients_match_fd():
    rng = np.random.default_rng(11)
    a = Tensor(rng.normal(size=(4, 3)), requires_grad=True)
    b = Tensor(rng.normal(size=(3, 2)), requires_grad=True)
    w = rng.normal(size=(4, 2))
    ((a @ b) * w).sum().backward()
    na = fd_grad(lambda: ((a.data @ b.data) * w).sum(), a.data)
    nb = fd_grad(lambda: ((a.data @ b.data) * w).sum(), b.data)
    np.testing.assert_allclose(a.grad, na, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(b.grad, nb, rtol=1e-6, atol=1e-8)


def test_matmul_rejects_non_2d():
    with pytest.raises(ValueError):
        Tensor(np.ones(3)) @ Tensor(np.ones((3, 2)))


def test_concat_splits_gradient():
    a = Tensor(np.ones((2, 2)), requires_grad=True)
    b = Tensor(np.ones((2, 3)), requires_grad=True)
    out = concat([a, b], axis=1)
    assert out.shape == (2, 5)
    (out * np.arange(10.0).reshape(2, 5)).sum().backward()
    np.testing.assert_allclose(a.grad, [[0, 1], [5, 6]])
    np.testing.assert_allclose(b.grad, [[2, 3, 4], [7, 8, 9]])


def test_minimum_routes_gradient_to_smaller_side():
    a = Tensor(np.array([1.0, 5.0]), requires_grad=True)
    b = Tensor(np.array([2.0, 3.0]), requires_grad=True)
    minimum(a, b).sum().backward()
    np.testing.assert_allclose(a.grad, [1.0, 0.0])
    np.testing.assert_allclose(b.grad, [0.0, 1.0])


def test_diamond_graph_accumulates_both_paths():
    x = Tensor(np.array(2.0), requires_grad=True)
    y = x * x  # reused twice below
    loss = y * 3.0 + y
    loss.backward()
    # d/dx 4x^2 = 8x = 16
    assert float(x.grad) == pytest.approx(16.0)


def test_detach_blocks_gradient():
    x = Tensor(np.array(2.0), requires_grad=True)
    (x.detach() * x).backward()
    assert float(x.grad) == pytest.approx(2.0)


def test_backward_requires_scalar():
    x = Tensor(np.ones(3), requires_grad=True)
    with pytest.raises(RuntimeError):
        (x * 2).backward()


def test_backward_rejects_nonfinite_loss():
    x = Tensor(np.array(np.inf), requires_grad=True)
    with pytest.raises(NumericsError):
        (x * 1.0).backward()


def test_float32_graph_stays_float32():
    x = Tensor(np.ones((2, 2), dtype=np.float32), requires_grad=True)
    out = ((x @ x) * 0.5).swish().mean()
    assert out.dtype == np.float32
    out.backward()
    assert x.grad.dtype == np.float32


def test_deep_chain_does_not_hit_recursion_limit():
    x = Tensor(np.array(1.0), requires_grad=True)
    y = x
    for _ in range(5000):
        y = y * 1.0001
    y.backward()
    assert np.isfinite(x.grad)
