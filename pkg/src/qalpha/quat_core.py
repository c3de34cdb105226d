"""Quaternion arithmetic.

Two flavours live here: a small immutable :class:`Quaternion` value type for
scalar work and tests, and array functions operating on ``(..., 4)`` float
arrays laid out as ``(a, b, c, d)`` for ``a + ib + jc + kd``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

AXES = ("i", "j", "k")


@dataclass(frozen=True)
class Quaternion:
    """q = a + ib + jc + kd with Hamilton product rules."""

    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __add__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    def __sub__(self, other: Quaternion) -> Quaternion:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.a - other.a, self.b - other.b,
                          self.c - other.c, self.d - other.d)

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return multiply(self, other)
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(other)
        return NotImplemented

    def scale(self, s: float) -> Quaternion:
        return Quaternion(self.a * s, self.b * s, self.c * s, self.d * s)

    def conjugate(self) -> Quaternion:
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm(self) -> float:
        """Squared length a² + b² + c² + d²."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def magnitude(self) -> float:
        # hypot scales internally, so tiny or huge parts do not under/overflow
        return math.hypot(self.a, self.b, self.c, self.d)

    @property
    def scalar(self) -> float:
        return self.a

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.b, self.c, self.d)

    def is_pure(self) -> bool:
        return self.a == 0

    def to_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d], dtype=float)

    @classmethod
    def from_array(cls, arr) -> Quaternion:
        a, b, c, d = (float(x) for x in arr)
        return cls(a, b, c, d)


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
UNITS = {"i": I, "j": J, "k": K}


def multiply(p: Quaternion, q: Quaternion) -> Quaternion:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return Quaternion(
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def add(p: Quaternion, q: Quaternion) -> Quaternion:
    return p + q


def subtract(p: Quaternion, q: Quaternion) -> Quaternion:
    return p - q


def scale(q: Quaternion, s: float) -> Quaternion:
    return q.scale(s)


def conjugate(q: Quaternion) -> Quaternion:
    return q.conjugate()


def norm(q: Quaternion) -> float:
    return q.norm()


def magnitude(q: Quaternion) -> float:
    return q.magnitude()


def is_pure(q: Quaternion) -> bool:
    return q.is_pure()


def _axis_index(axis: str) -> int:
    try:
        return 1 + AXES.index(axis)
    except ValueError:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}") from None


def exp_unit(axis: str, theta: float) -> Quaternion:
    """Kernel value cos(theta) - u sin(theta) for the unit u named by `axis`.

    The minus sign is the forward-transform convention; pass ``-theta`` for
    the inverse kernel.
    """
    comps = [math.cos(theta), 0.0, 0.0, 0.0]
    comps[_axis_index(axis)] = -math.sin(theta)
    return Quaternion(*comps)


# -- array forms -------------------------------------------------------------

def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Broadcasting Hamilton product of ``(..., 4)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ], axis=-1)


def qconj(q: np.ndarray) -> np.ndarray:
    out = np.array(q, dtype=float, copy=True)
    out[..., 1:] *= -1.0
    return out


def qabs(q: np.ndarray) -> np.ndarray:
    """Elementwise magnitude of a ``(..., 4)`` array."""
    return np.sqrt(np.sum(np.square(q), axis=-1))


def exp_unit_array(axis: str, theta: np.ndarray) -> np.ndarray:
    """Array version of :func:`exp_unit`; returns shape ``theta.shape + (4,)``."""
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (4,))
    out[..., 0] = np.cos(theta)
    out[..., _axis_index(axis)] = -np.sin(theta)
    return out
