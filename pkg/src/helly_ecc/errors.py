"""Exception types raised across the package."""

from __future__ import annotations


class GraphFormatError(ValueError):
    """Edge-list input that does not describe a simple connected graph."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceededError(ValueError):
    """An exhaustive oracle was asked to run on a graph above its size cap."""

    def __init__(self, oracle: str, n: int, cap: int, flag: str):
        self.oracle = oracle
        self.n = n
        self.cap = cap
        super().__init__(
            f"{oracle}: n={n} exceeds the cap of {cap} (raise it with {flag})"
        )


class NotHellyError(RuntimeError):
    """A structural guarantee that holds on every Helly graph was violated.

    The fast algorithms carry no contract on non-Helly input; they raise this
    instead of returning a silently wrong answer.
    """

    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(f"[{stage}] {message}")
