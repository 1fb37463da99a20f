"""Shared helpers for the test suite."""

import numpy as np


class CountingProblem:
    """Wraps a benchmark problem and counts every objective evaluation row."""

    def __init__(self, inner):
        self.inner = inner
        self.rows = 0
        self.name = inner.name
        self.dim = inner.dim
        self.lower = inner.lower
        self.upper = inner.upper
        self.optimum_pos = inner.optimum_pos
        self.optimum_val = inner.optimum_val

    def evaluate(self, xs) -> np.ndarray:
        xs = np.asarray(xs)
        self.rows += xs.shape[0]
        return self.inner.evaluate(xs)

    def objective(self, x) -> float:
        self.rows += 1
        return self.inner.objective(x)
