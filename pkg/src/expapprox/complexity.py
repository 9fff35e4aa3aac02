"""Budgets, the weight cutoff index, and exact information complexity.

All computation happens in budget space

    x(eps) = log eps**-2 / log omega**-1,

never in eps itself: the regimes of interest push eps far below double
underflow, while x stays a modest real.  eps enters only as log10(eps) at
the boundary.  The information complexity n(x, s) is the multiplicity-
weighted number of lattice points below the budget,

    n(x, s) = sum over {k in N_0^s : sum_j a_j k_j**b_j < x} of prod_j m_{k_j},

computed either by peeling the last coordinate (recursion on s, with the
closed-form s = 1 base r_K) or by direct enumeration of the bounding box
(the independent oracle).  Counts are arbitrary-precision integers; they
reach m_0**s and far beyond.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ._arith import as_decimal_fraction, count_feasible, pow_level
from .errors import ParameterError, PreconditionError, ResourceLimitError
from .params import SpaceConfig, WeightFamily

DEFAULT_MAX_BOX = 5_000_000
DEFAULT_MAX_WORK = 20_000_000

RECURSION = "recursion"
BRUTE_FORCE = "bruteforce"


@dataclass(frozen=True)
class Budget:
    """The quantity x(eps); zero exactly at eps = 1."""

    x: float

    def __post_init__(self):
        if self.x < 0:
            raise PreconditionError("budgets are nonnegative (eps <= 1)")

    def __float__(self) -> float:
        return self.x


def budget_from_eps(omega: float, eps_log10: float) -> Budget:
    """Budget for an error threshold given as log10(eps)."""
    if not (0.0 < omega < 1.0):
        raise ParameterError("omega must lie strictly inside (0, 1)")
    if eps_log10 > 0:
        raise PreconditionError("eps > 1 has zero complexity; pass log10(eps) <= 0")
    return Budget((-2.0 * eps_log10 * math.log(10.0)) / -math.log(omega))


def eps_from_budget(omega: float, budget) -> float:
    """log10(eps) recovering the threshold from a budget; inverse of the above."""
    if not (0.0 < omega < 1.0):
        raise ParameterError("omega must lie strictly inside (0, 1)")
    return -float(budget) * -math.log(omega) / (2.0 * math.log(10.0))


def _budget_float(x) -> float:
    v = float(x)
    if v < 0:
        raise PreconditionError("budgets are nonnegative")
    return v


def _budget_exact(x) -> Fraction:
    if isinstance(x, Budget):
        return as_decimal_fraction(x.x)
    if isinstance(x, (str, int, Fraction, float)):
        return as_decimal_fraction(x)
    raise TypeError(f"unsupported budget type {type(x)!r}")


def j_eps(weights, x) -> int | float:
    """sup{ j : a_j < x }, the largest coordinate the budget can see.

    Returns 0 when x <= a_1 (empty-product convention) and math.inf when
    the a-sequence is bounded with limit below x.  For explicit lists the
    answer must be determined by the stored prefix or a declared limit.
    """
    if isinstance(weights, SpaceConfig):
        weights = weights.weights
    xv = _budget_float(x)
    if xv <= weights.a(1):
        return 0
    if not weights.is_family:
        a = weights.a_list
        if xv <= a[-1]:
            # nondecreasing, so the feasible set {j : a_j < x} is a prefix
            lo, hi = 0, len(a) - 1
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if a[mid] < xv:
                    lo = mid
                else:
                    hi = mid - 1
            return lo + 1
        lim = weights.limits.lim_a if weights.limits is not None else None
        if lim is not None and lim < xv:
            return math.inf
        raise PreconditionError(
            "cutoff index exceeds the stored weight list and no usable limit is declared"
        )
    if weights.v1 == 0.0 and weights.v2 == 0.0:
        return math.inf  # constant a_j = c_a < x
    hi = 1
    while weights.a(hi) < xv:
        hi *= 2
    lo = hi // 2  # a(lo) < x <= a(hi)
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if weights.a(mid) < xv:
            lo = mid
        else:
            hi = mid
    return lo


def _weight_arrays(config: SpaceConfig, x):
    """Per-coordinate weights plus the budget, on the exact or float path."""
    pairs = config.exact_pairs()
    if pairs is not None:
        return [p[0] for p in pairs], [p[1] for p in pairs], _budget_exact(x)
    a = [config.a(j) for j in range(1, config.s + 1)]
    b = [config.b(j) for j in range(1, config.s + 1)]
    return a, b, _budget_float(x)


def info_complexity(
    config: SpaceConfig,
    x,
    method: str = RECURSION,
    *,
    max_box: int = DEFAULT_MAX_BOX,
    max_work: int = DEFAULT_MAX_WORK,
    threads: int | None = None,
) -> int:
    """Exact information complexity at budget x, as an arbitrary-size integer."""
    method = method.replace("_", "").lower()
    if method not in (RECURSION, BRUTE_FORCE):
        raise ParameterError(f"unknown method {method!r}")
    a, b, xb = _weight_arrays(config, x)
    if xb <= 0:
        return 0
    mult = config.mult
    s = config.s

    if method == BRUTE_FORCE:
        counts = [count_feasible(a[j], b[j], xb) for j in range(s)]
        box = math.prod(counts)
        if box > max_box:
            raise ResourceLimitError(f"bounding box of {box} points exceeds cap {max_box}")
        total = 0
        for k in product(*(range(c) for c in counts)):
            acc = None
            for j in range(s):
                term = a[j] * pow_level(k[j], b[j])
                acc = term if acc is None else acc + term
            if acc < xb:
                prod_m = 1
                for kj in k:
                    prod_m *= mult.m(kj)
                total += prod_m
        return total

    def rec(xcur, d):
        if xcur <= 0:
            return 0
        if d == 1:
            return mult.r(count_feasible(a[0], b[0], xcur))
        top = count_feasible(a[d - 1], b[d - 1], xcur)
        total = 0
        for k in range(top):
            total += mult.m(k) * rec(xcur - a[d - 1] * pow_level(k, b[d - 1]), d - 1)
        return total

    if s >= 2:
        work = math.prod(count_feasible(a[j], b[j], xb) for j in range(1, s))
        if work > max_work:
            raise ResourceLimitError(f"predicted recursion work {work} exceeds cap {max_work}")
    if threads and threads > 1 and s >= 2:
        top = count_feasible(a[s - 1], b[s - 1], xb)

        def branch(k):
            return mult.m(k) * rec(xb - a[s - 1] * pow_level(k, b[s - 1]), s - 1)

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(branch, range(top)))
    return rec(xb, s)
