"""Minimal differentiable network substrate backed by numpy."""

from .gradcheck import GradCheckReport, check_gradients
from .layers import ACTIVATIONS, Dense, DenseBlock, DenseStack, MLP, Module
from .optim import Adam
from .tensor import Tensor, concat, minimum

__all__ = [
    "ACTIVATIONS",
    "Adam",
    "Dense",
    "DenseBlock",
    "DenseStack",
    "GradCheckReport",
    "MLP",
    "Module",
    "Tensor",
    "check_gradients",
    "concat",
    "minimum",
]
