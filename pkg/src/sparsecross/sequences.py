"""Positive weight sequences with computable norms and certified tail sums.

A sequence is an explicit positive head plus a tail rule: either zero
(finite sequences) or a power law ``b_j = kappa * j**-q`` for ``j > J0``.
Infinite sums are returned as two-sided enclosures so downstream
enumeration can certify what the unexamined dimensions contribute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

# Relative padding applied to every computed enclosure endpoint; keeps
# double-precision rounding of the explicit partial sums inside the interval.
_REL_PAD = 1e-13


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; ``divergent`` marks a sum with no finite value."""

    lo: float
    hi: float
    divergent: bool = False

    def __post_init__(self) -> None:
        if not self.divergent and not (self.lo <= self.hi):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def divergent_marker(cls) -> "Interval":
        return cls(math.inf, math.inf, divergent=True)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval | float") -> "Interval":
        if isinstance(other, Interval):
            if self.divergent or other.divergent:
                return Interval.divergent_marker()
            return Interval(self.lo + other.lo, self.hi + other.hi)
        return Interval(self.lo + other, self.hi + other)

    __radd__ = __add__

    def scale(self, c: float) -> "Interval":
        """Multiply by a nonnegative scalar."""
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        if self.divergent:
            return Interval.divergent_marker()
        return Interval(self.lo * c, self.hi * c)

    def to_json_dict(self) -> dict:
        if self.divergent:
            return {"divergent": True}
        return {"lo": self.lo, "hi": self.hi}


def _pad(lo: float, hi: float) -> Interval:
    """Widen an enclosure by a relative double-precision safety margin."""
    mag = max(abs(lo), abs(hi), 1e-300)
    eps = _REL_PAD * mag
    return Interval(lo - eps, hi + eps)


@dataclass(frozen=True)
class ZeroTail:
    """b_j = 0 beyond the explicit head."""

    kind = "zero"


@dataclass(frozen=True)
class PowerTail:
    """b_j = kappa * j**-q beyond the explicit head."""

    kappa: float
    q: float
    kind = "power"

    def __post_init__(self) -> None:
        if not (self.kappa > 0):
            raise ValueError("kappa must be positive")
        if not (self.q > 0):
            raise ValueError("q must be positive")


Tail = Union[ZeroTail, PowerTail]


def _tail_power_sum(kappa: float, q: float, start: int, p: float,
                    explicit_terms: int = 4096) -> Interval:
    """Enclosure of sum_{j >= start} (kappa * j**-q)**p.

    Sums ``explicit_terms`` leading terms directly, then brackets the rest
    with integrals: int_A^inf x^-r dx <= sum_{j>=A} j^-r <= A^-r + same.
    """
    r = q * p
    if r <= 1.0:
        return Interval.divergent_marker()
    kp = kappa**p
    j = np.arange(start, start + explicit_terms, dtype=np.float64)
    partial = kp * float(np.sum(j**(-r)))
    a = float(start + explicit_terms)
    rem_lo = kp * a ** (1.0 - r) / (r - 1.0)
    rem_hi = rem_lo + kp * a ** (-r)
    return _pad(partial + rem_lo, partial + rem_hi)


@dataclass(frozen=True)
class WeightSequence:
    """Positive sequence b = (b_j) with an explicit head and a computable tail."""

    head: tuple[float, ...]
    tail: Tail = field(default_factory=ZeroTail)

    def __post_init__(self) -> None:
        head = tuple(float(x) for x in self.head)
        object.__setattr__(self, "head", head)
        for x in head:
            if not (x > 0):
                raise ValueError("head values must be strictly positive")
        if isinstance(self.tail, ZeroTail) and not head:
            raise ValueError("a zero-tail sequence needs a nonempty head")

    @property
    def head_len(self) -> int:
        return len(self.head)

    @property
    def is_finite(self) -> bool:
        return isinstance(self.tail, ZeroTail)

    def value(self, j: int) -> float:
        """b_j for a 1-based index j."""
        if j < 1:
            raise ValueError("indices are 1-based")
        if j <= len(self.head):
            return self.head[j - 1]
        if isinstance(self.tail, ZeroTail):
            return 0.0
        return self.tail.kappa * float(j) ** (-self.tail.q)

    def extend_head(self, count: int) -> "WeightSequence":
        """Move ``count`` tail values into the explicit head (narrows enclosures)."""
        if isinstance(self.tail, ZeroTail) or count <= 0:
            return self
        j0 = len(self.head)
        extra = tuple(self.value(j) for j in range(j0 + 1, j0 + count + 1))
        return WeightSequence(self.head + extra, self.tail)

    # -- norms ------------------------------------------------------------

    def ell1_norm(self, explicit_terms: int = 4096) -> Interval:
        """Enclosure of sum_j b_j."""
        return self.ellp_norm_p(1.0, explicit_terms=explicit_terms)

    def ellp_norm_p(self, p: float, explicit_terms: int = 4096) -> Interval:
        """Enclosure of sum_j b_j**p; divergent marker when p*q <= 1."""
        if not (p > 0):
            raise ValueError("p must be positive")
        head_sum = math.fsum(x**p for x in self.head)
        if isinstance(self.tail, ZeroTail):
            return _pad(head_sum, head_sum)
        tail = _tail_power_sum(self.tail.kappa, self.tail.q, len(self.head) + 1,
                               p, explicit_terms=explicit_terms)
        if tail.divergent:
            return tail
        return _pad(head_sum + tail.lo, head_sum + tail.hi)

    def tail_ell1_beyond(self, j0: int, explicit_terms: int = 4096) -> Interval:
        """Enclosure of sum_{j > j0} b_j."""
        return self.tail_ellp_beyond(j0, 1.0, explicit_terms=explicit_terms)

    def tail_ellp_beyond(self, j0: int, p: float,
                         explicit_terms: int = 4096) -> Interval:
        """Enclosure of sum_{j > j0} b_j**p."""
        head_part = math.fsum(
            self.head[j - 1] ** p for j in range(j0 + 1, len(self.head) + 1)
        )
        if isinstance(self.tail, ZeroTail):
            return _pad(head_part, head_part)
        start = max(j0, len(self.head)) + 1
        tail = _tail_power_sum(self.tail.kappa, self.tail.q, start, p,
                               explicit_terms=explicit_terms)
        if tail.divergent:
            return tail
        return _pad(head_part + tail.lo, head_part + tail.hi)

    def sup_norm(self) -> float:
        """sup_j b_j; the tail supremum is its first value by monotonicity."""
        out = max(self.head, default=0.0)
        if isinstance(self.tail, PowerTail):
            out = max(out, self.value(len(self.head) + 1))
        return out

    def active_dimension(self, threshold: float) -> int:
        """Smallest J with b_j < threshold for every j > J."""
        if not (threshold > 0):
            raise ValueError("threshold must be positive")
        j_active = 0
        for j in range(len(self.head), 0, -1):
            if self.head[j - 1] >= threshold:
                j_active = j
                break
        if isinstance(self.tail, PowerTail):
            j0 = len(self.head)
            if self.value(j0 + 1) >= threshold:
                # largest j with kappa * j**-q >= threshold, refined against
                # floating error in the closed-form estimate
                est = (self.tail.kappa / threshold) ** (1.0 / self.tail.q)
                j = max(j0 + 1, int(math.floor(est)))
                while self.value(j + 1) >= threshold:
                    j += 1
                while j > j0 + 1 and self.value(j) < threshold:
                    j -= 1
                j_active = max(j_active, j)
        return j_active

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        if isinstance(self.tail, ZeroTail):
            tail: dict = {"kind": "zero"}
        else:
            tail = {"kind": "power", "kappa": self.tail.kappa, "q": self.tail.q}
        return {"head": list(self.head), "tail": tail}

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "WeightSequence":
        tail_obj = obj.get("tail", {"kind": "zero"})
        kind = tail_obj.get("kind")
        if kind == "zero":
            tail: Tail = ZeroTail()
        elif kind == "power":
            tail = PowerTail(float(tail_obj["kappa"]), float(tail_obj["q"]))
        else:
            raise ValueError(f"unknown tail kind {kind!r}")
        return cls(tuple(float(x) for x in obj["head"]), tail)
