"""Reverse-mode automatic differentiation over numpy arrays.

A ``Tensor`` wraps an ndarray and records the operations applied to it.
Calling :meth:`Tensor.backward` on a scalar result walks the recorded graph
in reverse topological order and accumulates exact gradients into every
reachable tensor created with ``requires_grad=True``.

Only the operations needed for dense networks and actor-critic losses are
implemented. All of them are vectorized; graphs stay small (one node per
array op, not per element) so the bookkeeping overhead is negligible next
to the numpy work.
"""

from __future__ import annotations

import numpy as np

from ..errors import NumericsError


def _unbroadcast(grad: np.ndarray, shape: tuple) -> np.ndarray:
    """Reduce ``grad`` back to ``shape`` by summing over broadcast axes."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(shape) if n == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad


class Tensor:
    """An ndarray plus the bookkeeping needed for reverse-mode gradients."""

    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False):
        if isinstance(data, Tensor):
            data = data.data
        self.data = np.asarray(data)
        self.grad = None
        self.requires_grad = requires_grad
        self._parents = ()
        self._backward = None

    # -- basic introspection -------------------------------------------------

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def dtype(self):
        return self.data.dtype

    def item(self) -> float:
        return float(self.data)

    def __repr__(self):
        return f"Tensor(shape={self.data.shape}, requires_grad={self.requires_grad})"

    def detach(self) -> "Tensor":
        """A view of the same data that is cut off from the graph."""
        return Tensor(self.data)

    def zero_grad(self):
        self.grad = None

    # -- graph construction --------------------------------------------------

    @staticmethod
    def _make(data, parents, backward) -> "Tensor":
        out = Tensor(data)
        if any(p.requires_grad for p in parents):
            out.requires_grad = True
            out._parents = parents
            out._backward = backward
        return out

    def _accumulate(self, grad: np.ndarray):
        if self.requires_grad:
            self.grad = grad if self.grad is None else self.grad + grad

    def backward(self, grad=None):
        """Accumulate gradients of ``self`` into every reachable parameter."""
        if not self.requires_grad:
            raise RuntimeError("backward() on a tensor that does not require grad")
        if grad is None:
            if self.data.size != 1:
                raise RuntimeError("backward() without an explicit gradient needs a scalar")
            if not np.isfinite(self.data).all():
                raise NumericsError("backward() called on a non-finite loss")
            grad = np.ones_like(self.data)
        # Iterative topological sort: graphs from deep nets overflow the
        # recursion limit quickly.
        topo = []
        visited = {id(self)}
        stack = [(self, iter(self._parents))]
        while stack:
            node, parents = stack[-1]
            advanced = False
            for p in parents:
                if p.requires_grad and id(p) not in visited:
                    visited.add(id(p))
                    stack.append((p, iter(p._parents)))
                    advanced = True
                    break
            if not advanced:
                topo.append(node)
                stack.pop()
        self._accumulate(np.asarray(grad, dtype=self.data.dtype))
        for node in reversed(topo):
            if node._backward is not None:
                node._backward(node.grad)

    # -- arithmetic ----------------------------------------------------------
    #
    # Python int/float operands get a dedicated path: numpy keeps them "weak"
    # so float32 graphs stay float32, and no broadcast bookkeeping is needed.

    @staticmethod
    def _lift(x) -> "Tensor":
        return x if isinstance(x, Tensor) else Tensor(x)

    def __add__(self, other):
        a = self
        if isinstance(other, (int, float)):
            return self._make(a.data + other, (a,), lambda g: a._accumulate(g))
        b = self._lift(other)

        def backward(g):
            a._accumulate(_unbroadcast(g, a.data.shape))
            b._accumulate(_unbroadcast(g, b.data.shape))

        return self._make(a.data + b.data, (a, b), backward)

    __radd__ = __add__

    def __neg__(self):
        a = self

        def backward(g):
            a._accumulate(-g)

        return self._make(-a.data, (a,), backward)

    def __sub__(self, other):
        a = self
        if isinstance(other, (int, float)):
            return self._make(a.data - other, (a,), lambda g: a._accumulate(g))
        b = self._lift(other)

        def backward(g):
            a._accumulate(_unbroadcast(g, a.data.shape))
            b._accumulate(_unbroadcast(-g, b.data.shape))

        return self._make(a.data - b.data, (a, b), backward)

    def __rsub__(self, other):
        a = self
        if isinstance(other, (int, float)):
            return self._make(other - a.data, (a,), lambda g: a._accumulate(-g))
        return self._lift(other).__sub__(self)

    def __mul__(self, other):
        a = self
        if isinstance(other, (int, float)):
            return self._make(a.data * other, (a,), lambda g: a._accumulate(g * other))
        b = self._lift(other)

        def backward(g):
            a._accumulate(_unbroadcast(g * b.data, a.data.shape))
            b._accumulate(_unbroadcast(g * a.data, b.data.shape))

        return self._make(a.data * b.data, (a, b), backward)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return self.__mul__(1.0 / other)
        a, b = self, self._lift(other)

        def backward(g):
            a._accumulate(_unbroadcast(g / b.data, a.data.shape))
            b._accumulate(_unbroadcast(-g * a.data / (b.data * b.data), b.data.shape))

        return self._make(a.data / b.data, (a, b), backward)

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, float)):
            raise TypeError("only constant exponents are supported")
        a = self

        def backward(g):
            a._accumulate(g * exponent * a.data ** (exponent - 1))

        return self._make(a.data ** exponent, (a,), backward)

    def __matmul__(self, other):
        other = self._lift(other)
        a, b = self, other
        if a.data.ndim != 2 or b.data.ndim != 2:
            raise ValueError("matmul supports 2-D operands only")

        def backward(g):
            a._accumulate(g @ b.data.T)
            b._accumulate(a.data.T @ g)

        return self._make(a.data @ b.data, (a, b), backward)

    # -- reductions ----------------------------------------------------------

    def sum(self, axis=None, keepdims=False):
        a = self

        def backward(g):
            if axis is None:
                a._accumulate(np.broadcast_to(g, a.data.shape).astype(a.data.dtype, copy=False))
            else:
                if not keepdims:
                    g = np.expand_dims(g, axis)
                a._accumulate(np.broadcast_to(g, a.data.shape).astype(a.data.dtype, copy=False))

        return self._make(a.data.sum(axis=axis, keepdims=keepdims), (a,), backward)

    def mean(self, axis=None, keepdims=False):
        if axis is None:
            n = self.data.size
        else:
            n = self.data.shape[axis]
        return self.sum(axis=axis, keepdims=keepdims) * (1.0 / n)

    # -- elementwise nonlinearities -------------------------------------------

    def relu(self):
        a = self
        out_data = np.maximum(a.data, 0)

        def backward(g):
            a._accumulate(g * (a.data > 0))

        return self._make(out_data, (a,), backward)

    def tanh(self):
        a = self
        t = np.tanh(a.data)

        def backward(g):
            a._accumulate(g * (1.0 - t * t))

        return self._make(t, (a,), backward)

    def sigmoid(self):
        a = self
        s = 1.0 / (1.0 + np.exp(-a.data))

        def backward(g):
            a._accumulate(g * s * (1.0 - s))

        return self._make(s, (a,), backward)

    def swish(self):
        """x * sigmoid(x); the smooth relu variant used by the encoder stacks."""
        a = self
        s = 1.0 / (1.0 + np.exp(-a.data))
        out_data = a.data * s

        def backward(g):
            a._accumulate(g * (s + out_data * (1.0 - s)))

        return self._make(out_data, (a,), backward)

    def exp(self):
        a = self
        e = np.exp(a.data)

        def backward(g):
            a._accumulate(g * e)

        return self._make(e, (a,), backward)

    def log(self):
        a = self

        def backward(g):
            a._accumulate(g / a.data)

        return self._make(np.log(a.data), (a,), backward)

    def softplus(self):
        """log(1 + exp(x)), computed without overflow for large |x|."""
        a = self
        out_data = np.logaddexp(0.0, a.data)
        s = 1.0 / (1.0 + np.exp(-a.data))

        def backward(g):
            a._accumulate(g * s)

        return self._make(out_data, (a,), backward)

    def clip(self, low: float, high: float):
        """Clamp to [low, high]; gradient is zero where the clamp is active."""
        a = self
        inside = (a.data >= low) & (a.data <= high)

        def backward(g):
            a._accumulate(g * inside)

        return self._make(np.clip(a.data, low, high), (a,), backward)

    def reshape(self, *shape):
        a = self

        def backward(g):
            a._accumulate(g.reshape(a.data.shape))

        return self._make(a.data.reshape(*shape), (a,), backward)


def concat(tensors, axis: int = -1) -> Tensor:
    """Concatenate tensors along ``axis``; gradients split back verbatim."""
    tensors = [Tensor._lift(t) for t in tensors]
    sizes = [t.data.shape[axis] for t in tensors]
    offsets = np.cumsum([0] + sizes)

    def backward(g):
        for t, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
            idx = [slice(None)] * g.ndim
            idx[axis] = slice(lo, hi)
            t._accumulate(g[tuple(idx)])

    return Tensor._make(np.concatenate([t.data for t in tensors], axis=axis), tuple(tensors), backward)


def minimum(a: Tensor, b: Tensor) -> Tensor:
    """Elementwise minimum; ties route their gradient to ``a``."""
    a = Tensor._lift(a)
    b = Tensor._lift(b)
    take_a = a.data <= b.data

    def backward(g):
        a._accumulate(_unbroadcast(g * take_a, a.data.shape))
        b._accumulate(_unbroadcast(g * ~take_a, b.data.shape))

    return Tensor._make(np.minimum(a.data, b.data), (a, b), backward)
