"""auxrl: decoupled state-representation learning with auxiliary prediction
tasks feeding off-policy actor-critic agents, plus a desk-scale
sample-efficiency benchmark harness."""

__version__ = "0.1.0"
