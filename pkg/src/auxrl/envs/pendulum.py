"""Torque-limited pendulum swing-up, matching the public Pendulum-v1
definition: obs (cos th, sin th, th_dot), reward -(th^2 + 0.1 th_dot^2 +
0.001 u^2) with the angle wrapped to [-pi, pi], semi-implicit Euler at
dt=0.05, 200-step episodes."""

from __future__ import annotations

import numpy as np

from .base import Env, EnvSpec, StepResult

MAX_TORQUE = 2.0
MAX_SPEED = 8.0
DT = 0.05
GRAVITY = 10.0
MASS = 1.0
LENGTH = 1.0


def angle_normalize(theta: float) -> float:
    return ((theta + np.pi) % (2.0 * np.pi)) - np.pi


class Pendulum(Env):
    spec = EnvSpec(
        obs_dim=3,
        action_dim=1,
        action_low=np.array([-MAX_TORQUE]),
        action_high=np.array([MAX_TORQUE]),
        max_episode_steps=200,
    )

    def __init__(self):
        self.theta = 0.0
        self.theta_dot = 0.0
        self._t = 0

    def reset(self, seed: int) -> np.ndarray:
        rng = np.random.default_rng(seed)
        self.theta = rng.uniform(-np.pi, np.pi)
        self.theta_dot = rng.uniform(-1.0, 1.0)
        self._t = 0
        return self._obs()

    def _obs(self) -> np.ndarray:
        return np.array([np.cos(self.theta), np.sin(self.theta), self.theta_dot])

    def step(self, action) -> StepResult:
        u = float(self._check_action(action)[0])
        th_bar = angle_normalize(self.theta)
        reward = -(th_bar**2 + 0.1 * self.theta_dot**2 + 0.001 * u**2)

        accel = (3.0 * GRAVITY / (2.0 * LENGTH)) * np.sin(self.theta) + (
            3.0 / (MASS * LENGTH**2)
        ) * u
        self.theta_dot = np.clip(self.theta_dot + accel * DT, -MAX_SPEED, MAX_SPEED)
        self.theta = angle_normalize(self.theta + self.theta_dot * DT)

        self._t += 1
        return StepResult(self._obs(), float(reward), self._t >= self.spec.max_episode_steps)
