"""Weight (utility) functions omega(x) >= 0 used by every weighted measure."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["Weight", "ONE", "X", "INVX", "power", "shift", "invshift", "parse_weight",
           "derived_weights"]

_KINDS = ("one", "x", "invx", "pow", "shift", "invshift", "sqrt", "square")


@dataclass(frozen=True)
class Weight:
    """A weight function.

    ``kind`` is one of ``one``, ``x``, ``invx`` (1/x), ``pow`` (x**m),
    ``shift`` (x + b), ``invshift`` (1/(x + b)), or the compositions ``sqrt``
    and ``square`` of a ``base`` weight.  Use the module constructors rather
    than building instances directly; they canonicalise, so that e.g.
    ``square(sqrt(w)) == w`` and ``sqrt(pow m=2) == x``.
    """

    kind: str
    param: float = 0.0
    base: "Weight | None" = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.kind in ("pow",) and not self.param > 0:
            raise DomainError("power weight needs m > 0")
        if self.kind in ("shift", "invshift") and not self.param > 0:
            raise DomainError("shifted weight needs b > 0")
        if self.kind in ("sqrt", "square") and self.base is None:
            raise DomainError(f"{self.kind} weight needs a base weight")

    # -- evaluation -----------------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        k = self.kind
        if k == "one":
            out = np.ones_like(x)
        elif k == "x":
            out = x.copy()
        elif k == "invx":
            if np.any(x <= 0):
                raise DomainError("weight 1/x needs x > 0")
            out = 1.0 / x
        elif k == "pow":
            out = np.abs(x) ** self.param
        elif k == "shift":
            out = x + self.param
        elif k == "invshift":
            if np.any(x + self.param <= 0):
                raise DomainError(f"weight 1/(x+{self.param}) needs x > -{self.param}")
            out = 1.0 / (x + self.param)
        elif k == "sqrt":
            out = np.sqrt(self.base(x))
        else:
            b = self.base(x)
            out = b * b
        return out if out.ndim else float(out)

    eval = __call__

    # -- algebra --------------------------------------------------------------
    def sqrt(self) -> "Weight":
        if self.kind == "one":
            return self
        if self.kind == "square":
            return self.base
        if self.kind == "x":
            return power(0.5)
        if self.kind == "pow":
            return power(self.param / 2.0)
        return Weight("sqrt", base=self)

    def square(self) -> "Weight":
        if self.kind == "one":
            return self
        if self.kind == "sqrt":
            return self.base
        if self.kind == "x":
            return power(2.0)
        if self.kind == "pow":
            return power(self.param * 2.0)
        return Weight("square", base=self)

    @property
    def key(self) -> str:
        """Canonical spec string (parseable by :func:`parse_weight`)."""
        k = self.kind
        if k in ("one", "x", "invx"):
            return k
        if k == "pow":
            return f"pow:m={self.param!r}"
        if k in ("shift", "invshift"):
            return f"{k}:b={self.param!r}"
        return f"{k}({self.base.key})"

    def __str__(self):
        return self.key


ONE = Weight("one")
X = Weight("x")
INVX = Weight("invx")


def power(m: float) -> Weight:
    m = float(m)
    if m == 1.0:
        return X
    return Weight("pow", param=m)


def shift(b: float) -> Weight:
    return Weight("shift", param=float(b))


def invshift(b: float) -> Weight:
    return Weight("invshift", param=float(b))


def derived_weights(w: Weight) -> tuple[Weight, Weight]:
    """``(sqrt-of w, square-of w)``."""
    return w.sqrt(), w.square()


def parse_weight(text: str) -> Weight:
    """Parse ``one | x | invx | pow:m=<v> | shift:b=<v> | invshift:b=<v>``,
    optionally wrapped as ``sqrt(<w>)`` or ``square(<w>)``."""
    t = text.strip()
    for wrap in ("sqrt", "square"):
        if t.startswith(wrap + "(") and t.endswith(")"):
            inner = parse_weight(t[len(wrap) + 1:-1])
            return inner.sqrt() if wrap == "sqrt" else inner.square()
    if t in ("one", "1"):
        return ONE
    if t == "x":
        return X
    if t in ("invx", "1/x"):
        return INVX
    head, sep, rest = t.partition(":")
    if sep:
        key, eq, val = rest.partition("=")
        try:
            v = float(val)
        except ValueError:
            raise ValueError(f"cannot parse weight spec {text!r}") from None
        if not math.isfinite(v) or not eq:
            raise ValueError(f"cannot parse weight spec {text!r}")
        if head == "pow" and key.strip() == "m":
            return power(v)
        if head == "shift" and key.strip() == "b":
            return shift(v)
        if head == "invshift" and key.strip() == "b":
            return invshift(v)
    raise ValueError(f"cannot parse weight spec {text!r}")
