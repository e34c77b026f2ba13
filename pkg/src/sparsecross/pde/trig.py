"""Real trigonometric polynomials on the periodic box and their stiffness data.

Functions are stored through complex exponential coefficients with Hermitian
symmetry (so values are real).  The Galerkin machinery works in the real
orthonormal basis indexed by nonzero integer vectors kappa, where a positive
component selects sqrt(2) cos(2 pi k x) and a negative one sqrt(2) sin:
this keeps every assembled matrix real and symmetric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np
from scipy.linalg import solveh_banded

TWO_PI = 2.0 * math.pi

Freq = tuple[int, ...]


def _canonical(k: Freq) -> tuple[Freq, bool]:
    """Half-space representative of +/-k; flag says whether k was flipped."""
    for c in k:
        if c > 0:
            return k, False
        if c < 0:
            return tuple(-x for x in k), True
    return k, False


@dataclass(frozen=True)
class TrigFunction:
    """Real trig polynomial sum_k chat_k exp(2 pi i k.x) with chat_{-k} = conj."""

    m: int
    modes: tuple[tuple[Freq, complex], ...]

    def __post_init__(self) -> None:
        lookup = dict(self.modes)
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_terms(cls, m: int,
                   terms: Iterable[tuple[Freq, float] | tuple[Freq, float, float]]
                   ) -> "TrigFunction":
        """Build from (k, cos_amp[, sin_amp]) terms, k in the half space."""
        acc: dict[Freq, complex] = {}
        for term in terms:
            k = tuple(int(c) for c in term[0])
            cos_amp = float(term[1])
            sin_amp = float(term[2]) if len(term) > 2 else 0.0
            if len(k) != m:
                raise ValueError(f"frequency {k} does not have length {m}")
            canon, flipped = _canonical(k)
            if flipped:
                raise ValueError(
                    f"frequency {k} is not a half-space representative")
            if all(c == 0 for c in k):
                if sin_amp != 0.0:
                    raise ValueError("the constant term has no sine part")
                acc[k] = acc.get(k, 0.0) + cos_amp
                continue
            chat = 0.5 * (cos_amp - 1j * sin_amp)
            acc[k] = acc.get(k, 0.0) + chat
            neg = tuple(-c for c in k)
            acc[neg] = acc.get(neg, 0.0) + chat.conjugate()
        cleaned = {k: v for k, v in acc.items() if v != 0}
        return cls(m, tuple(sorted(cleaned.items())))

    @classmethod
    def constant(cls, m: int, value: float) -> "TrigFunction":
        return cls.from_terms(m, [((0,) * m, value)])

    def chat(self, k: Freq) -> complex:
        return self._lookup.get(tuple(k), 0j)

    def mode_keys(self) -> tuple[Freq, ...]:
        return tuple(k for k, _ in self.modes)

    @property
    def max_freq(self) -> int:
        out = 0
        for k, _ in self.modes:
            out = max(out, max(abs(c) for c in k) if k else 0)
        return out

    # -- algebra ----------------------------------------------------------

    def scaled(self, factor: float) -> "TrigFunction":
        return TrigFunction(self.m, tuple((k, v * factor) for k, v in self.modes))

    def __add__(self, other: "TrigFunction") -> "TrigFunction":
        if other.m != self.m:
            raise ValueError("mixing functions of different dimension")
        acc = dict(self.modes)
        for k, v in other.modes:
            acc[k] = acc.get(k, 0j) + v
        cleaned = {k: v for k, v in acc.items() if v != 0}
        return TrigFunction(self.m, tuple(sorted(cleaned.items())))

    # -- evaluation and certified bounds -----------------------------------

    def values_on_grid(self, n: int) -> np.ndarray:
        """Values on the uniform tensor grid with n points per dimension."""
        axes = [np.arange(n) / n] * self.m
        grids = np.meshgrid(*axes, indexing="ij") if self.m > 1 else [axes[0]]
        out = np.zeros(grids[0].shape)
        for k, chat in self.modes:
            phase = sum(kc * g for kc, g in zip(k, grids))
            out += (chat * np.exp(2j * math.pi * phase)).real
        return out

    def _coeff_l1(self) -> float:
        return math.fsum(abs(v) for _, v in self.modes)

    def _gradient_l1(self) -> float:
        """sum_d of an l_inf bound for the d-th partial derivative."""
        return math.fsum(
            TWO_PI * abs(k[d]) * abs(v)
            for k, v in self.modes for d in range(self.m))

    def _grid_step(self, n: int) -> float:
        # off-grid deviation is at most half a cell diameter times the
        # gradient bound
        return 0.5 / n

    def min_lower(self, n: int = 4096) -> float:
        """Certified lower bound for min_x of the function."""
        return float(np.min(self.values_on_grid(n))) \
            - self._grid_step(n) * self._gradient_l1()

    def max_upper(self, n: int = 4096) -> float:
        """Certified upper bound for max_x."""
        return float(np.max(self.values_on_grid(n))) \
            + self._grid_step(n) * self._gradient_l1()

    def sup_upper(self, n: int = 4096) -> float:
        """Certified upper bound for the sup norm."""
        vals = self.values_on_grid(n)
        return float(np.max(np.abs(vals))) \
            + self._grid_step(n) * self._gradient_l1()

    def partial(self, d: int) -> "TrigFunction":
        """d-th partial derivative (0-based coordinate)."""
        return TrigFunction(self.m, tuple(
            (k, v * 2j * math.pi * k[d]) for k, v in self.modes if k[d] != 0))

    def w1inf_upper(self, n: int = 4096) -> float:
        """Certified upper bound for max_d || partial_d . ||_inf."""
        return max((self.partial(d).sup_upper(n) for d in range(self.m)),
                   default=0.0)

    # -- exact spectral norms ----------------------------------------------

    def norm_l2(self) -> float:
        return math.sqrt(math.fsum(abs(v) ** 2 for _, v in self.modes))

    def norm_grad_l2(self) -> float:
        """|| grad . ||_L2 = 2 pi sqrt(sum |k|_2^2 |chat_k|^2)."""
        return TWO_PI * math.sqrt(math.fsum(
            sum(c * c for c in k) * abs(v) ** 2 for k, v in self.modes))

    def dual_norm(self) -> float:
        """Norm in the dual of the mean-zero energy space (requires chat_0 = 0)."""
        if self.chat((0,) * self.m) != 0:
            raise ValueError("dual norm requires a mean-zero function")
        return math.sqrt(math.fsum(
            abs(v) ** 2 / (TWO_PI**2 * sum(c * c for c in k))
            for k, v in self.modes)) if self.modes else 0.0

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        terms = []
        for k, v in self.modes:
            canon, flipped = _canonical(k)
            if flipped:
                continue
            if all(c == 0 for c in k):
                terms.append({"k": list(k), "cos": v.real})
            else:
                terms.append({"k": list(k), "cos": 2.0 * v.real,
                              "sin": -2.0 * v.imag})
        return {"m": self.m, "terms": terms}

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "TrigFunction":
        m = int(obj["m"])
        terms = [(tuple(t["k"]), float(t.get("cos", 0.0)),
                  float(t.get("sin", 0.0))) for t in obj["terms"]]
        return cls.from_terms(m, terms)


# -- real orthonormal basis ----------------------------------------------

def real_expansion(kappa: Freq) -> list[tuple[Freq, complex]]:
    """Expansion of the real basis function phi_kappa over complex exponentials.

    Per dimension, +a stands for sqrt(2) cos(2 pi a x) and -a for
    sqrt(2) sin(2 pi a x); a zero component stands for the constant 1.
    """
    per_dim: list[list[tuple[int, complex]]] = []
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    for t in kappa:
        if t == 0:
            per_dim.append([(0, 1.0 + 0j)])
        elif t > 0:
            per_dim.append([(t, inv_sqrt2 + 0j), (-t, inv_sqrt2 + 0j)])
        else:
            a = -t
            per_dim.append([(a, -1j * inv_sqrt2), (-a, 1j * inv_sqrt2)])
    out: list[tuple[Freq, complex]] = [((), 1.0 + 0j)]
    for choices in per_dim:
        out = [(k + (extra,), coef * c) for k, coef in out for extra, c in choices]
    return out


def real_coefficient(f: TrigFunction, kappa: Freq) -> float:
    """Coefficient of f against the real basis function phi_kappa."""
    acc = 0j
    for k, coef in real_expansion(kappa):
        neg = tuple(-c for c in k)
        acc += coef * f.chat(neg)
    assert abs(acc.imag) <= 1e-12 * (1.0 + abs(acc.real))
    return acc.real


def stiffness_entry(c: TrigFunction, k: Freq, k2: Freq) -> complex:
    """Energy-form entry over complex exponentials,
    int c grad(e_k) . grad(conj(e_k2)) = (2 pi)^2 (k . k2) chat_{k2 - k}."""
    dot = sum(a * b for a, b in zip(k, k2))
    diff = tuple(b - a for a, b in zip(k, k2))
    return TWO_PI**2 * dot * c.chat(diff)


def stiffness_entry_real(c: TrigFunction, kappa: Freq, kappa2: Freq) -> float:
    """Energy-form entry between two real basis functions,
    int c grad(phi_kappa) . grad(phi_kappa2); real by construction."""
    acc = 0j
    for p, u in real_expansion(kappa):
        for q, u2 in real_expansion(kappa2):
            dot = sum(a * b for a, b in zip(p, q))
            if dot == 0:
                continue
            target = tuple(-(a + b) for a, b in zip(p, q))
            chat = c.chat(target)
            if chat != 0:
                acc += u * u2 * (-(TWO_PI**2)) * dot * chat
    assert abs(acc.imag) <= 1e-10 * (1.0 + abs(acc.real))
    return acc.real


# -- fast path for one spatial dimension ----------------------------------

def kappas_1d(radius: int) -> list[Freq]:
    """Banded ordering [+1, -1, +2, -2, ...] of the nonzero frequencies."""
    out = []
    for a in range(1, radius + 1):
        out.append((a,))
        out.append((-a,))
    return out


def stiffness_band_1d(c: TrigFunction, radius: int) -> np.ndarray:
    """Lower-form banded stiffness matrix of c over kappas_1d(radius).

    Closed forms with R_t = Re chat_t and I_t = Im chat_t (w = (2 pi)^2 a a'):
        cos_a, cos_a' -> w (R_{|a-a'|} - R_{a+a'})
        sin_a, sin_a' -> w (R_{|a-a'|} + R_{a+a'})
        cos_a, sin_a' -> w (I_{a+a'} + I_{a-a'})   (I at the signed integer)
    """
    fmax = c.max_freq
    n = 2 * radius
    bw = min(2 * fmax + 1, n - 1) if n > 1 else 0
    rvals = np.zeros(2 * radius + fmax + 2)
    ivals = np.zeros(2 * radius + fmax + 2)
    for (k,), v in c.modes:
        if 0 <= k < rvals.shape[0]:
            rvals[k] = v.real
            ivals[k] = v.imag

    def r_at(t: np.ndarray) -> np.ndarray:
        return rvals[np.abs(t)]

    def i_at(t: np.ndarray) -> np.ndarray:
        return np.sign(t) * ivals[np.abs(t)]

    ab = np.zeros((bw + 1, n))
    idx = np.arange(n)
    a_of = idx // 2 + 1
    is_sin = idx % 2 == 1
    for off in range(bw + 1):
        rows = idx[: n - off]
        cols = rows + off
        a, a2 = a_of[rows], a_of[cols]
        w = TWO_PI**2 * a * a2
        both_cos = ~is_sin[rows] & ~is_sin[cols]
        both_sin = is_sin[rows] & is_sin[cols]
        mixed_cs = ~is_sin[rows] & is_sin[cols]   # (cos a, sin a2)
        mixed_sc = is_sin[rows] & ~is_sin[cols]   # (sin a, cos a2)
        vals = np.zeros(rows.shape[0])
        vals[both_cos] = (r_at(a - a2) - r_at(a + a2))[both_cos]
        vals[both_sin] = (r_at(a - a2) + r_at(a + a2))[both_sin]
        vals[mixed_cs] = (i_at(a + a2) + i_at(a - a2))[mixed_cs]
        vals[mixed_sc] = (i_at(a + a2) + i_at(a2 - a))[mixed_sc]
        ab[off, : n - off] = w * vals
    return ab


def load_vector_1d(f: TrigFunction, radius: int) -> np.ndarray:
    """Right-hand side of f against the real basis over kappas_1d(radius)."""
    out = np.zeros(2 * radius)
    for a in range(1, radius + 1):
        chat = f.chat((a,))
        out[2 * (a - 1)] = math.sqrt(2.0) * chat.real
        out[2 * (a - 1) + 1] = -math.sqrt(2.0) * chat.imag
    return out


def solve_deterministic_1d(c: TrigFunction, f: TrigFunction,
                           radius: int) -> np.ndarray:
    """Banded Cholesky solve of the one-dimensional spectral system: find the
    real-basis coefficients u with stiffness(c) u = load(f)."""
    ab = stiffness_band_1d(c, radius)
    rhs = load_vector_1d(f, radius)
    return solveh_banded(ab, rhs, lower=True)
