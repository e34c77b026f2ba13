"""Summability classification and certified sums for factorial-ratio weights.

For a positive sequence b, the family w(s) = (|s|_1!/s!) b**s over all
finitely supported multi-indices s is p-power summable

  * for 0 < p <= 1  iff  ||b||_1 < 1 and b is ell_p-summable, and
  * for p > 1 (infinitely many positive b_j)  iff  ||b||_1 <= 1.

Verdicts are decided from interval enclosures only, never midpoints.  For
finite sequences (zero tail) and p > 1 the classification falls back to
finite-support logic: ||b||_1 < 1 gives geometric level sums, ||b||_1 > 1
admits a divergence witness, and the exact boundary is left undecided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .multiindex import MultiIndex
from .sequences import Interval, WeightSequence

SUMMABLE = "summable"
NOT_SUMMABLE = "not-summable"
BOUNDARY_UNSUPPORTED = "boundary-unsupported"

# Rule tags identifying which criterion decided a verdict.
RULE_SMALL_P = "l1-strict-and-lp"          # 0 < p <= 1: ||b||_1 < 1 and b in ell_p
RULE_LARGE_P = "l1-at-most-one"            # p > 1, infinite support: ||b||_1 <= 1
RULE_FINITE_GEOMETRIC = "finite-geometric" # p > 1, finite support, ||b||_1 < 1
RULE_FINITE_WITNESS = "finite-witness"     # p > 1, finite support, ||b||_1 > 1
RULE_FINITE_BOUNDARY = "finite-boundary"   # p > 1, finite support, boundary
RULE_STRADDLE = "enclosure-straddles-threshold"
RULE_TENSOR = "sup-below-one-and-lp"       # plain product weights b**s


class TailBoundInconclusive(RuntimeError):
    """The certified tail machinery cannot reach the requested width."""


@dataclass(frozen=True)
class SummabilityVerdict:
    verdict: str
    rule: str
    norms: dict

    @property
    def is_summable(self) -> bool:
        return self.verdict == SUMMABLE

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "rule": self.rule,
            "norms": {k: v.to_json_dict() for k, v in self.norms.items()},
        }


def classify(p: float, b: WeightSequence) -> SummabilityVerdict:
    """Classify ell_p summability of ((|s|_1!/s!) b**s) over all indices s."""
    if not (p > 0):
        raise ValueError("p must be positive")
    ell1 = b.ell1_norm()
    ellp = b.ellp_norm_p(p)
    norms = {"l1": ell1, "lp_p": ellp}

    if p <= 1.0:
        if ellp.divergent:
            return SummabilityVerdict(NOT_SUMMABLE, RULE_SMALL_P, norms)
        if ell1.hi < 1.0:
            return SummabilityVerdict(SUMMABLE, RULE_SMALL_P, norms)
        if ell1.lo >= 1.0:
            return SummabilityVerdict(NOT_SUMMABLE, RULE_SMALL_P, norms)
        return SummabilityVerdict(BOUNDARY_UNSUPPORTED, RULE_STRADDLE, norms)

    if b.is_finite:
        # Finite support sits outside the p > 1 criterion; only the strict
        # cases are decidable (geometric domination below 1, witness above).
        if ell1.hi < 1.0:
            return SummabilityVerdict(SUMMABLE, RULE_FINITE_GEOMETRIC, norms)
        if ell1.lo > 1.0:
            return SummabilityVerdict(NOT_SUMMABLE, RULE_FINITE_WITNESS, norms)
        return SummabilityVerdict(BOUNDARY_UNSUPPORTED, RULE_FINITE_BOUNDARY, norms)

    if ell1.hi <= 1.0:
        return SummabilityVerdict(SUMMABLE, RULE_LARGE_P, norms)
    if ell1.lo > 1.0:
        return SummabilityVerdict(NOT_SUMMABLE, RULE_LARGE_P, norms)
    return SummabilityVerdict(BOUNDARY_UNSUPPORTED, RULE_STRADDLE, norms)


def classify_tensor(p: float, b: WeightSequence) -> SummabilityVerdict:
    """Classify ell_p summability of the plain product weights (b**s)."""
    if not (p > 0):
        raise ValueError("p must be positive")
    sup = b.sup_norm()
    ellp = b.ellp_norm_p(p)
    norms = {"sup": Interval.point(sup), "lp_p": ellp}
    if sup >= 1.0 or ellp.divergent:
        return SummabilityVerdict(NOT_SUMMABLE, RULE_TENSOR, norms)
    return SummabilityVerdict(SUMMABLE, RULE_TENSOR, norms)


# -- certified sums ---------------------------------------------------------

_FP_SLACK = 1e-11       # covers double rounding inside the level-sum recurrences
_LEVEL_CAP = 600
_DIM_CAP = 4096


def _level_tail_bound(p: float, bhat: float, ndims: int, m0: int) -> float:
    """Upper bound for sum_{M > m0} of the M-th level sum of an
    ``ndims``-dimensional system with ell_1 mass ``bhat`` < 1.

    For p >= 1 level sums are at most bhat**(p M).  For p < 1 they are at
    most count(M)**(1-p) * bhat**(p M) with count(M) = C(M+ndims-1, ndims-1),
    which is eventually dominated by a geometric series.
    """
    if bhat >= 1.0:
        return math.inf
    if p >= 1.0:
        ratio = bhat**p
        return ratio ** (m0 + 1) / (1.0 - ratio)

    def log_bound(m: int) -> float:
        logn = math.lgamma(m + ndims) - math.lgamma(m + 1) - math.lgamma(ndims)
        return (1.0 - p) * logn + p * m * math.log(bhat)

    def ratio_at(m: int) -> float:
        return ((m + ndims) / (m + 1)) ** ((ndims - 1) * (1.0 - p)) * bhat**p

    m = m0
    total = 0.0
    # walk forward until the term ratio drops below 1, then close geometrically
    while True:
        m += 1
        rho = ratio_at(m)
        term = math.exp(log_bound(m))
        if rho < 1.0:
            return total + term / (1.0 - rho)
        total += term
        if m > m0 + 100_000 or total == math.inf:
            return math.inf


def sum_powers(p: float, b: WeightSequence, tol: float) -> Interval:
    """Enclosure of sum over all s of w(s)**p with width <= tol * midpoint.

    Level sums over an explicit block of dimensions are computed exactly by
    a per-dimension binomial recurrence.  All dimensions beyond the block
    are aggregated into one extra coordinate whose value brackets their
    joint contribution:

      * upper: ell_p mass of the remainder (p < 1) or its ell_1 mass
        (p >= 1), since grouped level sums dominate the true ones;
      * lower: the ell_1 mass of the remainder (p < 1, subadditivity of
        x -> x**p), or just the block itself (p >= 1).

    Raises TailBoundInconclusive when the geometric level tail degenerates
    (ell_1 mass at 1) or the caps are hit before reaching ``tol``.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    verdict = classify(p, b)
    if not verdict.is_summable:
        raise ValueError(f"sum_powers requires a summable configuration, got "
                         f"{verdict.verdict} ({verdict.rule})")

    ell1 = b.ell1_norm()
    if ell1.hi >= 1.0:
        # p > 1 admits ||b||_1 = 1, but no geometric level bound exists there.
        raise TailBoundInconclusive(
            "summable, not enumerable with level bound: ||b||_1 enclosure "
            f"reaches {ell1.hi}")

    j_block = b.head_len if b.is_finite else max(b.head_len, 8)
    m0 = 32
    while True:
        head = [b.value(j) for j in range(1, j_block + 1)]
        if b.is_finite:
            xs_lo = xs_hi = head
        else:
            tail1 = b.tail_ell1_beyond(j_block)
            if p < 1.0:
                tailp = b.tail_ellp_beyond(j_block, p)
                x_hi = tailp.hi ** (1.0 / p)
            else:
                x_hi = tail1.hi
            xs_lo = head + [tail1.lo if p < 1.0 else b.value(j_block + 1)]
            xs_hi = head + [x_hi]

        bhat = math.fsum(xs_hi)
        if bhat >= 1.0 - 1e-12:
            if b.is_finite or j_block >= _DIM_CAP:
                raise TailBoundInconclusive(
                    f"aggregated ell_1 mass {bhat} leaves no geometric margin")
            j_block = min(2 * j_block + 8, _DIM_CAP)
            continue

        s_lo = kernels.level_sums_pth_power(xs_lo, p, m0)
        s_hi = kernels.level_sums_pth_power(xs_hi, p, m0)
        tail = _level_tail_bound(p, bhat, len(xs_hi), m0)

        lower = math.fsum(s_lo) * (1.0 - _FP_SLACK)
        upper = (math.fsum(s_hi) + tail) * (1.0 + _FP_SLACK)
        mid = 0.5 * (lower + upper)
        if upper - lower <= tol * mid:
            return Interval(lower, upper)

        # decide which truncation dominates and grow it
        gap_dims = math.fsum(s_hi) - math.fsum(s_lo)
        budget = tol * mid
        grew = False
        if tail > 0.25 * budget or not math.isfinite(tail):
            if m0 >= _LEVEL_CAP:
                raise TailBoundInconclusive(
                    f"level tail {tail:.3e} still exceeds tolerance at the "
                    f"level cap {_LEVEL_CAP}")
            m0 = min(int(m0 * 1.6) + 8, _LEVEL_CAP)
            grew = True
        if gap_dims > 0.25 * budget and not b.is_finite:
            if j_block >= _DIM_CAP:
                raise TailBoundInconclusive(
                    f"dimension-truncation gap {gap_dims:.3e} still exceeds "
                    f"tolerance at the dimension cap {_DIM_CAP}")
            j_block = min(2 * j_block + 8, _DIM_CAP)
            grew = True
        if not grew:
            # numerical floor: the fp slack itself exceeds the tolerance
            raise TailBoundInconclusive(
                f"requested width {tol:.3e} is below the floating-point floor")


def divergence_witness(b: WeightSequence, scale: int) -> MultiIndex:
    """Index s* whose weight grows without bound as ``scale`` increases.

    Requires ||b||_1 > 1 (certified).  With J the smallest prefix whose sum
    B exceeds 1, the witness takes s*_j = floor(scale * b_j / B) + 1 for
    j <= J and 0 beyond.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    ell1 = b.ell1_norm()
    if not (ell1.lo > 1.0):
        raise ValueError(
            f"divergence witness needs ||b||_1 > 1, enclosure is "
            f"[{ell1.lo}, {ell1.hi}]")
    partial = 0.0
    values = []
    j = 0
    while partial <= 1.0:
        j += 1
        if j > 1_000_000:
            raise ValueError("no prefix of b exceeds 1 within 1e6 terms")
        values.append(b.value(j))
        partial = math.fsum(values)
    big_b = partial
    exps = {jj + 1: int(math.floor(scale * values[jj] / big_b)) + 1
            for jj in range(j)}
    return MultiIndex.from_mapping(exps)
