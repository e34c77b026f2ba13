"""Sparse coefficient fields over (spatial frequency, parametric index) pairs.

A field stores finitely many real coefficients indexed by (k, s) with
k a nonzero integer vector of length m.  Two graded norms act on fields:

  * ``norm_graded``   weights each entry by |k|_inf**alpha / w_b(s);
  * ``norm_sobolev``  weights each entry by |k|_inf**beta.

Truncating at a ratio threshold T keeps exactly the entries whose weight
ratio (the graded weight at smoothness alpha - beta) is at most T; the
discarded remainder is controlled by T**-1 times the graded norm.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .hypercross import MEMBERSHIP_SLACK
from .multiindex import MultiIndex, log_weight
from .sequences import WeightSequence

Key = tuple[tuple[int, ...], MultiIndex]


@dataclass(frozen=True)
class CoefficientField:
    """Immutable sparse map (k, s) -> coefficient with canonical iteration."""

    m: int
    coeffs: tuple[tuple[Key, float], ...]

    @classmethod
    def from_entries(cls, m: int,
                     entries: Iterable[tuple[tuple[int, ...], MultiIndex, float]]
                     ) -> "CoefficientField":
        seen: dict[Key, float] = {}
        for k, s, value in entries:
            k = tuple(int(c) for c in k)
            if len(k) != m:
                raise ValueError(f"frequency vector {k} does not have length {m}")
            if any(c == 0 for c in k):
                raise ValueError(f"frequency vector {k} has a zero component")
            key = (k, s)
            if key in seen:
                raise ValueError(f"duplicate entry at {key}")
            if value != 0.0:
                seen[key] = float(value)
        ordered = tuple(sorted(seen.items(), key=lambda kv: (kv[0][0], kv[0][1].entries)))
        return cls(m, ordered)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __sub__(self, other: "CoefficientField") -> "CoefficientField":
        if other.m != self.m:
            raise ValueError("mixing fields of different spatial dimension")
        acc = {key: value for key, value in self.coeffs}
        for key, value in other.coeffs:
            acc[key] = acc.get(key, 0.0) - value
        return CoefficientField.from_entries(
            self.m, ((k, s, v) for (k, s), v in acc.items()))

    def norm_l2(self) -> float:
        return math.sqrt(math.fsum(v * v for _, v in self.coeffs))

    def to_jsonl(self) -> str:
        lines = [
            json.dumps({"k": list(k), "s": s.to_json_dict(), "value": v},
                       sort_keys=True)
            for (k, s), v in self.coeffs
        ]
        return "\n".join(lines)

    @classmethod
    def from_jsonl(cls, m: int, text: str) -> "CoefficientField":
        entries = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            entries.append((tuple(obj["k"]),
                            MultiIndex.from_json_dict(obj["s"]),
                            float(obj["value"])))
        return cls.from_entries(m, entries)


def _log_ratio(k: tuple[int, ...], s: MultiIndex, a: float,
               b: WeightSequence) -> float:
    """ln of |k|_inf**a / w_b(s), the graded weight at smoothness a."""
    kinf = max(abs(c) for c in k)
    return a * math.log(kinf) - log_weight(s, b).log_value


def norm_graded(v: CoefficientField, alpha: float, b: WeightSequence) -> float:
    """Root sum of squares with weights |k|_inf**alpha / w_b(s)."""
    terms = []
    for (k, s), value in v.coeffs:
        rho = math.exp(_log_ratio(k, s, alpha, b))
        terms.append((rho * value) ** 2)
    return math.sqrt(math.fsum(terms))


def norm_sobolev(v: CoefficientField, beta: float) -> float:
    """Root sum of squares with weights |k|_inf**beta; beta = 0 is plain l2."""
    terms = []
    for (k, s), value in v.coeffs:
        kinf = max(abs(c) for c in k)
        terms.append((kinf**beta * value) ** 2)
    return math.sqrt(math.fsum(terms))


def project_truncation(v: CoefficientField, big_t: float, alpha: float,
                       beta: float, b: WeightSequence) -> CoefficientField:
    """Keep exactly the entries with ratio weight at smoothness alpha - beta
    at most T (log-domain comparison with the shared slack); idempotent."""
    if not (alpha > beta):
        raise ValueError("projection requires alpha > beta")
    a = alpha - beta
    log_t = math.log(big_t) + MEMBERSHIP_SLACK
    kept = [(k, s, value) for (k, s), value in v.coeffs
            if _log_ratio(k, s, a, b) <= log_t]
    return CoefficientField.from_entries(v.m, kept)


@dataclass(frozen=True)
class ProjectionReport:
    lhs: float
    rhs: float
    ok: bool

    def to_json_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "ok": self.ok}


def check_projection_bound(v: CoefficientField, big_t: float, alpha: float,
                           beta: float, b: WeightSequence) -> ProjectionReport:
    """Verify || v - S_T v ||_{beta} <= T**-1 || v ||_{alpha, b}."""
    if not (big_t >= 1.0):
        raise ValueError("T must be at least 1")
    projected = project_truncation(v, big_t, alpha, beta, b)
    lhs = norm_sobolev(v - projected, beta)
    rhs = norm_graded(v, alpha, b) / big_t
    return ProjectionReport(lhs, rhs, lhs <= rhs * (1.0 + 1e-10))
