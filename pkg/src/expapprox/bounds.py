"""Certified lower/upper bounds on the count and all exponent formulas.

The lower and upper bounds share one building block: the per-coordinate
feasible-level count c_j(x) = |{k >= 0 : a_j * k**b_j < x}|.  Products over
coordinates are accumulated as exact rationals (the mixed factors like
m_max/m_0 may be fractional) and only rounded to an integer at the end, up
for upper bounds and up for lower bounds as well, since an integer count n
with n >= t also satisfies n >= ceil(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._arith import count_feasible, pow_level, tail_after
from .complexity import _budget_exact, _budget_float
from .errors import ParameterError, PreconditionError, ToleranceError
from .params import SpaceConfig

_VARIANTS = ("i", "ii", "iv")


def _coord_weights(config: SpaceConfig, x):
    pairs = config.exact_pairs()
    if pairs is not None:
        return [p[0] for p in pairs], [p[1] for p in pairs], _budget_exact(x)
    a = [config.a(j) for j in range(1, config.s + 1)]
    b = [config.b(j) for j in range(1, config.s + 1)]
    return a, b, _budget_float(x)


def lower_bound(config: SpaceConfig, x, variant: str) -> int:
    """Lower bound on the information complexity at budget x.

    Variants: "i" is the zero-level count m_0**s (any x > 0); "ii" is the
    unit-box count (m_0 + m_1)**s, valid for x > a_1 + ... + a_s; "iv" is
    the per-coordinate product with budget split evenly across coordinates,
    valid for x > a_1.
    """
    variant = variant.lower()
    if variant not in _VARIANTS:
        raise ParameterError(f"unknown lower-bound variant {variant!r}")
    a, b, xb = _coord_weights(config, x)
    mult = config.mult
    s = config.s
    if variant == "i":
        if xb <= 0:
            raise PreconditionError("variant i requires x > 0 (eps < 1)")
        return mult.m0**s
    if variant == "ii":
        total_a = sum(a)
        if not xb > total_a:
            raise PreconditionError(f"variant ii requires x > a_1 + ... + a_s = {float(total_a)}")
        return (mult.m0 + mult.m(1)) ** s
    if not xb > a[0]:
        raise PreconditionError(f"variant iv requires x > a_1 = {float(a[0])}")
    prod = Fraction(mult.m0**s)
    ratio = Fraction(mult.m_min, mult.m0)
    for j in range(s):
        cnt = count_feasible(a[j] * s, b[j], xb)
        prod *= 1 + ratio * (cnt - 1)
    return math.ceil(prod)


def _lower_bound_scaled(config: SpaceConfig, x, alphas) -> float:
    """General split-budget lower bound for arbitrary alpha_j in [0, 1].

    Internal; the public variant "iv" is the alpha_j = (j-1)/j special case.
    """
    alphas = list(alphas)
    if len(alphas) != config.s:
        raise ParameterError("need one alpha per coordinate")
    a, b, xb = _coord_weights(config, x)
    mult = config.mult
    s = config.s
    prod = Fraction(mult.m0**s)
    ratio = Fraction(mult.m_min, mult.m0)
    for j in range(s):
        scale = (1.0 - alphas[j]) * math.prod(alphas[j + 1 :])
        cnt = count_feasible(a[j], b[j], float(xb) * scale)
        prod *= 1 + ratio * (cnt - 1)
    return float(prod)


def upper_bound(config: SpaceConfig, x) -> int:
    """Upper bound m_0**s * prod_j (1 + (m_max/m_0)(c_j(x) - 1)).

    For x <= a_1 the count is exactly m_0**s and that value is returned.
    Coordinates with a_j >= x contribute a factor of one on their own, so
    the product needs no explicit cutoff index.
    """
    a, b, xb = _coord_weights(config, x)
    mult = config.mult
    s = config.s
    if not xb > a[0]:
        return mult.m0**s
    prod = Fraction(mult.m0**s)
    ratio = Fraction(mult.m_max, mult.m0)
    for j in range(s):
        cnt = count_feasible(a[j], b[j], xb)
        prod *= 1 + ratio * (cnt - 1)
    return math.ceil(prod)


def permutation_upper_bound(config: SpaceConfig, x) -> int:
    """Support-counting upper bound for m_0 = 1 instances.

    The instance is first replaced by its hardest case (a_j -> a_1 and
    b_j -> inf_j b_j, which only enlarges every eigenvalue).  A feasible
    multi-index can have at most T nonzero coordinates where T*a_1 < x; its
    i-th largest entry lives below budget x/i.  Mapping each index to its
    ordered support gives

        n <= s!/(s-T)! * prod_{i=1..T} n_1(x/i),    T = min(s, |{t>=1 : t*a_1 < x}|),

    with n_1 the one-dimensional count of the reduced instance.
    """
    mult = config.mult
    if mult.m0 != 1:
        raise ParameterError("the support bound requires m_0 = 1")
    a, b, xb = _coord_weights(config, x)
    s = config.s
    a1 = a[0]
    b0 = min(b)
    if xb <= 0:
        return 1
    support = min(s, count_feasible(a1, 1, xb) - 1)
    total = math.perm(s, support)
    for i in range(1, support + 1):
        total *= mult.r(count_feasible(a1, b0, xb / i))
    return total


def sum_tau(config: SpaceConfig, tau: float, tail_tol: float = 1e-10) -> float:
    """sum_k lambda_{s,k}**tau with certified absolute error <= tail_tol.

    The sum factorizes as prod_j (m_0 + sum_{k>=1} m_k omega**(tau a_j k**b_j));
    each inner series is truncated under a certified tail majorant, and the
    per-factor targets are tightened until the product-level error bound
    meets tail_tol.
    """
    value, err = sum_tau_certified(config, tau, tail_tol)
    if err > tail_tol:
        raise ToleranceError(f"certified error {err} exceeds requested {tail_tol}")
    return value


def sum_tau_certified(config: SpaceConfig, tau: float, tail_tol: float) -> tuple[float, float]:
    if tau <= 0:
        raise PreconditionError("tau must be positive")
    if tail_tol <= 0:
        raise PreconditionError("tail_tol must be positive")
    omega = config.omega
    mult = config.mult
    s = config.s
    ab = [(config.a(j), config.b(j)) for j in range(1, s + 1)]

    def factor(j: int, delta: float) -> tuple[float, float]:
        a, b = ab[j]
        levels = 1
        while True:
            bound = mult.m_max * tail_after(omega, tau * a, b, levels)
            if bound <= delta:
                break
            levels *= 2
            if levels > 1 << 22:
                raise ToleranceError("inner series will not reach the requested tolerance")
        partial = float(mult.m0)
        for k in range(1, levels):
            partial += mult.m(k) * omega ** (tau * a * pow_level(k, b))
        return partial, bound

    deltas = [tail_tol / s] * s
    parts = [factor(j, deltas[j]) for j in range(s)]
    for _ in range(5):
        upper = [p + t for p, t in parts]
        err = sum(t * math.prod(upper[:j] + upper[j + 1 :]) for j, (_, t) in enumerate(parts))
        if err <= tail_tol:
            return math.prod(p for p, _ in parts), err
        for j in range(s):
            others = math.prod(upper[:j] + upper[j + 1 :])
            deltas[j] = tail_tol / (s * max(others, 1.0))
        parts = [factor(j, deltas[j]) for j in range(s)]
    raise ToleranceError("product tolerance did not converge")


@dataclass(frozen=True)
class ExponentReport:
    """Convergence and tractability exponents for one instance.

    None marks a value that is absent, either because the notion fails or
    because an explicit weight list lacks the declared limit to decide it.
    Infinite B or B_star are represented by math.inf.
    """

    B_s: float
    B: float | None
    B_star: float | None
    p_s_star: float
    p_star_uexp: float | None
    t_star_qpt_upper: float
    t_star_qpt_exact: bool
    p_star_spt: float | None
    ec_qpt_interval: tuple[float, float] | None
    ec_spt_interval: tuple[float, float] | None


def exponents(config: SpaceConfig, s: int | None = None) -> ExponentReport:
    """All exponent values and intervals at dimension s (default config.s)."""
    from .classify import limits_of  # deferred: classify itself builds on exponents

    s = config.s if s is None else int(s)
    if s < 1:
        raise ParameterError("dimension s must be at least 1")
    w = config.weights
    mult = config.mult
    try:
        B_s = sum(1.0 / w.b(j) for j in range(1, s + 1))
    except IndexError as exc:
        raise ParameterError(str(exc)) from None
    lim = limits_of(w)
    log_w = -math.log(config.omega)
    B = lim.B
    B_star = lim.B_star
    p_star_uexp = 1.0 / B if (B is not None and math.isfinite(B)) else None
    if w.is_family:
        constant = w.v1 == 0.0 and w.v2 == 0.0 and w.v3 == 0.0
    else:
        constant = len(set(w.a_list)) == 1 and len(set(w.b_list)) == 1
    m0 = mult.m0
    m1 = mult.m(1)
    m_max = mult.m_max

    p_star_spt = None
    if m0 == 1 and lim.alpha is not None and lim.alpha > 0:
        p_star_spt = 2.0 / (lim.alpha * log_w)

    ec_qpt = None
    if (
        m0 == 1
        and B_star is not None
        and math.isfinite(B_star)
        and lim.alpha_ecqpt is not None
        and lim.alpha_ecqpt > 0
    ):
        ec_qpt = (
            max(B_star, math.log(1 + m1) / lim.alpha_ecqpt),
            B_star + math.log(1 + m_max) / lim.alpha_ecqpt,
        )

    ec_spt = None
    if (
        m0 == 1
        and B is not None
        and math.isfinite(B)
        and lim.alpha_star is not None
        and lim.alpha_star > 0
    ):
        ec_spt = (
            max(B, math.log(1 + m1) / lim.alpha_star),
            B + math.log(1 + m_max) / lim.alpha_star,
        )

    return ExponentReport(
        B_s=B_s,
        B=B,
        B_star=B_star,
        p_s_star=1.0 / B_s,
        p_star_uexp=p_star_uexp,
        t_star_qpt_upper=2.0 / (w.a(1) * log_w),
        t_star_qpt_exact=constant,
        p_star_spt=p_star_spt,
        ec_qpt_interval=ec_qpt,
        ec_spt_interval=ec_spt,
    )
