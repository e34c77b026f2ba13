"""Affine-diffusion problem descriptions and their derived decay data.

The diffusion coefficient is a(x, y) = abar(x) + sum_j y_j psi_j(x) with
parameters y_j in [-1, 1]; the claimed ellipticity window [r, R] is checked
against certified extrema of the trigonometric data.  The decay sequences
turn the problem data into the factorial-weight bounds

    ||u_s|| <= K (|s|_1!/s!) d**s

for the solution's orthonormal Legendre coefficients, in the first-order
(gradient) and second-order (Laplacian) spatial norms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from ..sequences import WeightSequence, ZeroTail
from .trig import TrigFunction

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class EllipticityReport:
    min_lower: float
    max_upper: float
    r_ok: bool
    big_r_ok: bool

    @property
    def ok(self) -> bool:
        return self.r_ok and self.big_r_ok


@dataclass(frozen=True)
class ProblemSpec:
    """Affine parametric diffusion problem on the periodic box."""

    m: int
    abar: TrigFunction
    psi: tuple[TrigFunction, ...]
    f: TrigFunction
    r: float
    big_r: float

    def __post_init__(self) -> None:
        if not (0 < self.r <= self.big_r):
            raise ValueError("need 0 < r <= R")
        for g in (self.abar, self.f, *self.psi):
            if g.m != self.m:
                raise ValueError("all fields must share the spatial dimension")
        if self.f.chat((0,) * self.m) != 0:
            raise ValueError("the right-hand side must have zero mean")

    @property
    def n_params(self) -> int:
        return len(self.psi)

    def coefficient_at(self, y: Sequence[float]) -> TrigFunction:
        """The frozen coefficient a(. , y) for one parameter vector."""
        if len(y) != len(self.psi):
            raise ValueError("parameter vector length mismatch")
        out = self.abar
        for yj, psi_j in zip(y, self.psi):
            if yj != 0.0:
                out = out + psi_j.scaled(float(yj))
        return out

    def certify_ellipticity(self, grid: int = 4096) -> EllipticityReport:
        """Check r <= a(x, y) <= R for all |y_j| <= 1 via certified extrema:
        min_x abar - sum_j max_x |psi_j| and the max analogue."""
        spread = math.fsum(p.sup_upper(grid) for p in self.psi)
        lo = self.abar.min_lower(grid) - spread
        hi = self.abar.max_upper(grid) + spread
        return EllipticityReport(lo, hi, self.r <= lo, self.big_r >= hi)

    def sup_w1inf_upper(self, grid: int = 4096) -> float:
        """Certified upper bound for sup_y max_d || partial_d a(., y) ||_inf."""
        return self.abar.w1inf_upper(grid) + math.fsum(
            p.w1inf_upper(grid) for p in self.psi)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "abar": self.abar.to_json_dict(),
            "psi": [p.to_json_dict() for p in self.psi],
            "f": self.f.to_json_dict(),
            "r": self.r,
            "R": self.big_r,
        }

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "ProblemSpec":
        return cls(
            m=int(obj["m"]),
            abar=TrigFunction.from_json_dict(obj["abar"]),
            psi=tuple(TrigFunction.from_json_dict(p) for p in obj["psi"]),
            f=TrigFunction.from_json_dict(obj["f"]),
            r=float(obj["r"]),
            big_r=float(obj["R"]),
        )

    @classmethod
    def from_json_file(cls, path) -> "ProblemSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))


@dataclass(frozen=True)
class DecaySequences:
    """Constant K and sequence d in the Legendre-coefficient decay bound."""

    K: float
    d: tuple[float, ...]

    @classmethod
    def gradient_version(cls, spec: ProblemSpec) -> "DecaySequences":
        """First-order bound: K = ||f||_dual / r and d_j = ||grad psi_j|| / ln 2."""
        k_const = spec.f.dual_norm() / spec.r
        d = tuple(p.norm_grad_l2() / _LN2 for p in spec.psi)
        return cls(k_const, d)

    @classmethod
    def laplacian_version(cls, spec: ProblemSpec,
                          grid: int = 4096) -> "DecaySequences":
        """Second-order bound driven by sup-norm data of the coefficient:

            K   = (1/r) (2 + W/r) ||f||_L2,
            d_j = (1/(r sqrt(3))) ((W/r + 2) ||psi_j||_inf + |psi_j|_W1inf),

        with W an upper bound for sup_y |a(., y)|_W1inf.
        """
        w1 = spec.sup_w1inf_upper(grid)
        k_const = (2.0 + w1 / spec.r) * spec.f.norm_l2() / spec.r
        d = tuple(
            ((w1 / spec.r + 2.0) * p.sup_upper(grid) + p.w1inf_upper(grid))
            / (spec.r * math.sqrt(3.0))
            for p in spec.psi)
        return cls(k_const, d)

    def bound(self, s) -> float:
        """K (|s|_1!/s!) d**s for a multi-index supported in 1..len(d)."""
        out = self.K * math.exp(
            math.lgamma(s.degree + 1)
            - math.fsum(math.lgamma(e + 1) for _, e in s.entries))
        for dim, exp in s.entries:
            out *= self.d[dim - 1] ** exp
        return out


def study_weights(spec: ProblemSpec, c_exponent: float = 1.1,
                  grid: int = 4096) -> tuple[WeightSequence, float]:
    """Weight sequence b_j = c_j d_j with c_j = 1 + j**-c_exponent, plus the
    tensorized l2 norm of 1/c over indices supported in the active dimensions:
    sqrt(prod_j 1 / (1 - c_j**-2))."""
    decay = DecaySequences.laplacian_version(spec, grid)
    c = [1.0 + float(j) ** (-c_exponent) for j in range(1, len(decay.d) + 1)]
    b = tuple(cj * dj for cj, dj in zip(c, decay.d))
    c_inv_l2 = math.sqrt(math.prod(1.0 / (1.0 - cj**-2) for cj in c))
    return WeightSequence(b, ZeroTail()), c_inv_l2
