"""Common environment contract: seedable resets, bounded actions, fixed
horizons, and an optional goal interface for hindsight relabeling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotGoalConditionedError


@dataclass(frozen=True)
class EnvSpec:
    obs_dim: int
    action_dim: int
    action_low: np.ndarray
    action_high: np.ndarray
    max_episode_steps: int
    goal_dim: int = 0
    success_threshold: float = 0.0

    @property
    def is_goal_conditioned(self) -> bool:
        return self.goal_dim > 0


@dataclass
class StepResult:
    observation: np.ndarray
    reward: float
    done: bool
    success: bool | None = None


class Env:
    """Base class; subclasses fill in ``spec``, ``reset`` and ``step``.

    Contract: identical (seed, action sequence) pairs produce bit-identical
    trajectories. ``step`` clips actions into the declared bounds and raises
    ValueError on non-finite actions. Episodes are fixed-horizon; ``done``
    turns true exactly at ``max_episode_steps``.
    """

    spec: EnvSpec

    def reset(self, seed: int) -> np.ndarray:
        raise NotImplementedError

    def step(self, action) -> StepResult:
        raise NotImplementedError

    def _check_action(self, action) -> np.ndarray:
        action = np.asarray(action, dtype=np.float64).reshape(-1)
        if action.shape[0] != self.spec.action_dim:
            raise ValueError(
                f"expected action of dim {self.spec.action_dim}, got {action.shape[0]}"
            )
        if not np.isfinite(action).all():
            raise ValueError(f"non-finite action: {action}")
        return np.clip(action, self.spec.action_low, self.spec.action_high)

    # -- goal interface --------------------------------------------------------
    #
    # Goal-conditioned observations end with [achieved_goal, desired_goal];
    # both step() rewards and hindsight relabeling go through compute_reward
    # so the two can never diverge.

    def _require_goals(self):
        if not self.spec.is_goal_conditioned:
            raise NotGoalConditionedError(
                f"{type(self).__name__} has no goal space"
            )

    def compute_reward(self, achieved_goal, desired_goal) -> float:
        self._require_goals()
        achieved = np.asarray(achieved_goal, dtype=np.float64)
        desired = np.asarray(desired_goal, dtype=np.float64)
        return -float(np.linalg.norm(achieved - desired))

    def success(self, achieved_goal, desired_goal) -> bool:
        self._require_goals()
        achieved = np.asarray(achieved_goal, dtype=np.float64)
        desired = np.asarray(desired_goal, dtype=np.float64)
        return float(np.linalg.norm(achieved - desired)) < self.spec.success_threshold

    def achieved_goal(self, obs: np.ndarray) -> np.ndarray:
        self._require_goals()
        g = self.spec.goal_dim
        return np.asarray(obs)[-2 * g : -g]

    def desired_goal(self, obs: np.ndarray) -> np.ndarray:
        self._require_goals()
        return np.asarray(obs)[-self.spec.goal_dim :]

    def replace_goal(self, obs: np.ndarray, new_goal: np.ndarray) -> np.ndarray:
        self._require_goals()
        out = np.array(obs)
        out[-self.spec.goal_dim :] = new_goal
        return out
