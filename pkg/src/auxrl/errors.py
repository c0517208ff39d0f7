"""Exception types shared across the package."""


class ShapeError(ValueError):
    """An array argument does not match the dimensions a component declares."""


class NumericsError(ArithmeticError):
    """A loss or intermediate value became non-finite; the run must abort."""


class DegenerateRewardError(RuntimeError):
    """Reward prediction was requested but the collected rewards are
    (near-)constant, so the prediction target carries no information about
    observations and actions."""


class NotGoalConditionedError(RuntimeError):
    """A goal-space operation was called on an environment without goals."""


class ConfigError(ValueError):
    """One or more configuration fields are invalid.

    ``problems`` lists every violated field so a user can fix a config file
    in one pass.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {p}" for p in self.problems))
