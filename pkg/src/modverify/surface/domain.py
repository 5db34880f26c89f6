"""Points of the upper half plane and reduction to the standard fundamental domain."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_SLACK = 1e-14


@dataclass(frozen=True)
class PointH:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"PointH needs y > 0, got {self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def act(self, g) -> "PointH":
        (a, b), (c, d) = g
        w = (a * self.z + b) / (c * self.z + d)
        return PointH(w.real, w.imag)


def in_domain(p: PointH, slack: float = _SLACK) -> bool:
    return abs(p.x) <= 0.5 + slack and p.x * p.x + p.y * p.y >= 1 - slack


def reduce(p: PointH, max_moves: int = 10000):
    """Map p into the closed standard domain; returns (point, g) with point = g.p."""
    x, y = p.x, p.y
    a, b, c, d = 1, 0, 0, 1
    for _ in range(max_moves):
        n = math.floor(x + 0.5)
        if n:
            x -= n
            a, b = a - n * c, b - n * d
        r = x * x + y * y
        if r < 1 - _SLACK:
            x, y = -x / r, y / r
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise RuntimeError("reduction did not terminate")
    return PointH(x, y), ((a, b), (c, d))


def reduce_many(x: np.ndarray, y: np.ndarray, max_moves: int = 10000):
    """Vectorised reduction; returns reduced (x, y) and the matrix entries (a, b, c, d)."""
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    a = np.ones_like(x)
    b = np.zeros_like(x)
    c = np.zeros_like(x)
    d = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    for _ in range(max_moves):
        if not active.any():
            break
        n = np.floor(x + 0.5)
        x -= n
        a, b = a - n * c, b - n * d
        r = x * x + y * y
        flip = r < 1 - _SLACK
        active = flip
        x = np.where(flip, -x / np.where(flip, r, 1), x)
        y = np.where(flip, y / np.where(flip, r, 1), y)
        a, b, c, d = np.where(flip, -c, a), np.where(flip, -d, b), np.where(flip, a, c), np.where(flip, b, d)
    return x, y, (a, b, c, d)


def random_word(rng: np.random.Generator, length: int):
    """Random product of T^{+-1} and S of the given length."""
    g = np.eye(2, dtype=np.int64)
    T = np.array([[1, 1], [0, 1]])
    Ti = np.array([[1, -1], [0, 1]])
    S = np.array([[0, -1], [1, 0]])
    for _ in range(length):
        g = [T, Ti, S][rng.integers(3)] @ g
    return tuple(map(tuple, g.tolist()))
