"""Strictly monotone maps used to transform random variables."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["MonotoneMap", "parse_map"]


@dataclass(frozen=True)
class MonotoneMap:
    """A strictly monotone, differentiable bijection on part of the real line.

    ``kind`` is one of ``identity``, ``affine`` (``a*x + b``, ``a != 0``),
    ``power`` (``x**p`` on ``x >= 0``, ``p > 0``) or ``reciprocal``
    (``1/x`` on ``x > 0``).
    """

    kind: str
    a: float = 1.0
    b: float = 0.0
    p: float = 1.0

    def __post_init__(self):
        if self.kind not in ("identity", "affine", "power", "reciprocal"):
            raise DomainError(f"unsupported map {self.kind!r}; must be monotone")
        if self.kind == "affine" and self.a == 0:
            raise DomainError("affine map needs a != 0 to be monotone")
        if self.kind == "power" and not self.p > 0:
            raise DomainError("power map needs p > 0")

    @classmethod
    def identity(cls):
        return cls("identity")

    @classmethod
    def affine(cls, a: float, b: float = 0.0):
        return cls("affine", a=float(a), b=float(b))

    @classmethod
    def shift(cls, b: float):
        return cls("affine", a=1.0, b=float(b))

    @classmethod
    def power(cls, p: float):
        return cls("power", p=float(p))

    @classmethod
    def sqrt(cls):
        return cls("power", p=0.5)

    @classmethod
    def reciprocal(cls):
        return cls("reciprocal")

    @property
    def increasing(self) -> bool:
        return not (self.kind == "reciprocal" or (self.kind == "affine" and self.a < 0))

    @property
    def key(self) -> str:
        if self.kind == "affine":
            if self.a == 1.0:
                return f"shift:b={self.b!r}"
            return f"affine:a={self.a!r},b={self.b!r}"
        if self.kind == "power":
            return "sqrt" if self.p == 0.5 else f"pow:p={self.p!r}"
        return {"identity": "identity", "reciprocal": "inv"}[self.kind]

    def _check(self, x):
        if self.kind == "power" and np.any(x < 0):
            raise DomainError("power map defined for x >= 0 only")
        if self.kind == "reciprocal" and np.any(x < 0):
            raise DomainError("reciprocal map defined for x > 0 only")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        self._check(x)
        with np.errstate(divide="ignore"):
            if self.kind == "identity":
                y = x
            elif self.kind == "affine":
                y = self.a * x + self.b
            elif self.kind == "power":
                y = x ** self.p
            else:
                y = 1.0 / x
        return y if y.ndim else float(y)

    def inverse(self, y):
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            if self.kind == "identity":
                x = y
            elif self.kind == "affine":
                x = (y - self.b) / self.a
            elif self.kind == "power":
                x = y ** (1.0 / self.p)
            else:
                x = 1.0 / y
        return x if x.ndim else float(x)

    def derivative(self, x):
        """d map / dx."""
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            if self.kind == "identity":
                d = np.ones_like(x)
            elif self.kind == "affine":
                d = np.full_like(x, self.a)
            elif self.kind == "power":
                d = self.p * x ** (self.p - 1.0)
            else:
                d = -1.0 / (x * x)
        return d if d.ndim else float(d)

    def inverse_derivative(self, y):
        """d map^{-1} / dy."""
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore"):
            if self.kind == "identity":
                d = np.ones_like(y)
            elif self.kind == "affine":
                d = np.full_like(y, 1.0 / self.a)
            elif self.kind == "power":
                d = (1.0 / self.p) * y ** (1.0 / self.p - 1.0)
            else:
                d = -1.0 / (y * y)
        return d if d.ndim else float(d)

    def image(self, lo: float, hi: float) -> tuple[float, float]:
        """Image of the interval ``[lo, hi]``, ordered."""
        a, b = self(lo), self(hi)
        return (a, b) if a <= b else (b, a)


def parse_map(text: str) -> MonotoneMap:
    """Parse ``identity | sqrt | inv | shift:b=<v> | affine:a=<v>,b=<v> | pow:p=<v>``."""
    text = text.strip()
    head, _, rest = text.partition(":")
    kv = {}
    if rest:
        for part in rest.split(","):
            k, eq, v = part.partition("=")
            if not eq:
                raise ValueError(f"bad map parameter {part!r}")
            kv[k.strip()] = float(v)
    if head == "identity" and not kv:
        return MonotoneMap.identity()
    if head == "sqrt" and not kv:
        return MonotoneMap.sqrt()
    if head in ("inv", "reciprocal") and not kv:
        return MonotoneMap.reciprocal()
    if head == "shift" and set(kv) == {"b"}:
        return MonotoneMap.shift(kv["b"])
    if head == "affine" and set(kv) <= {"a", "b"} and "a" in kv:
        return MonotoneMap.affine(kv["a"], kv.get("b", 0.0))
    if head == "pow" and set(kv) == {"p"}:
        return MonotoneMap.power(kv["p"])
    raise ValueError(f"cannot parse map spec {text!r}")
