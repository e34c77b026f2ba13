"""Sparse finitely supported multi-indices and their factorial-ratio weights.

A multi-index holds finitely many (dimension, exponent) pairs with 1-based
dimensions and exponents >= 1.  The weight attached to an index ``s`` for a
positive sequence ``b`` is

    w(s) = (|s|_1! / s!) * b**s,

where ``|s|_1`` is the total degree and ``s!`` the product of exponent
factorials.  All weight arithmetic happens in the log domain via ``lgamma``
so that degrees far beyond factorial overflow remain usable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

_MAX_COMPONENT = 2**32 - 1


class ZeroWeightError(ValueError):
    """A weight is exactly zero because b vanishes somewhere on the support."""


@dataclass(frozen=True, order=True)
class MultiIndex:
    """Finitely supported multi-index stored as sorted (dimension, exponent) pairs.

    Entries are canonical: dimensions strictly increasing, exponents >= 1,
    zero exponents never stored.  Equality and hashing are structural, and
    the empty tuple represents the zero index.
    """

    entries: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        last = 0
        for dim, exp in self.entries:
            if not isinstance(dim, int) or not isinstance(exp, int):
                raise TypeError("dimensions and exponents must be plain integers")
            if dim <= last:
                raise ValueError("dimensions must be strictly increasing and >= 1")
            if exp < 1:
                raise ValueError("stored exponents must be >= 1")
            if dim > _MAX_COMPONENT or exp > _MAX_COMPONENT:
                raise ValueError("dimension or exponent exceeds 2**32 - 1")
            last = dim

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "MultiIndex":
        """Build an index from a {dimension: exponent} mapping, dropping zeros."""
        entries = tuple(
            (int(d), int(e)) for d, e in sorted(mapping.items()) if int(e) != 0
        )
        return cls(entries)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.entries)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.entries)

    def exponent(self, dim: int) -> int:
        for d, e in self.entries:
            if d == dim:
                return e
        return 0

    def bump(self, dim: int) -> "MultiIndex":
        """Return s + e_dim."""
        items = dict(self.entries)
        items[dim] = items.get(dim, 0) + 1
        return MultiIndex.from_mapping(items)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __str__(self) -> str:
        if not self.entries:
            return "{}"
        return "{" + ", ".join(f"{d}:{e}" for d, e in self.entries) + "}"

    def to_json_dict(self) -> dict[str, int]:
        """JSON form maps 1-based dimension (string key) to exponent."""
        return {str(d): e for d, e in self.entries}

    @classmethod
    def from_json_dict(cls, obj: Mapping[str, int]) -> "MultiIndex":
        return cls.from_mapping({int(k): int(v) for k, v in obj.items()})


ZERO_INDEX = MultiIndex()


@dataclass(frozen=True)
class LogWeight:
    """Natural log of w(s), with an explicit flag for an exactly-zero weight."""

    log_value: float
    is_zero: bool = False

    def value(self) -> float:
        if self.is_zero:
            return 0.0
        return math.exp(self.log_value)

    @classmethod
    def one(cls) -> "LogWeight":
        return cls(0.0)

    @classmethod
    def zero(cls) -> "LogWeight":
        return cls(-math.inf, is_zero=True)


def degree(s: MultiIndex) -> int:
    """Total degree |s|_1 = sum of exponents."""
    return s.degree


def log_multinomial(s: MultiIndex) -> float:
    """ln(|s|_1! / s!), computed via lgamma; always >= 0."""
    total = s.degree
    if total == 0:
        return 0.0
    out = math.lgamma(total + 1)
    for _, e in s.entries:
        out -= math.lgamma(e + 1)
    return out


def log_weight(s: MultiIndex, b) -> LogWeight:
    """ln w(s) with w(s) = (|s|_1!/s!) * b**s for a weight sequence b.

    Raises ZeroWeightError when b vanishes on the support of s (the weight
    is exactly zero and must not silently become -inf).
    """
    acc = log_multinomial(s)
    for d, e in s.entries:
        bj = b.value(d)
        if bj == 0.0:
            raise ZeroWeightError(
                f"b_{d} = 0 on the support of {s}; weight is exactly zero"
            )
        if bj < 0.0:
            raise ValueError(f"b_{d} = {bj} is negative")
        acc += e * math.log(bj)
    return LogWeight(acc)
