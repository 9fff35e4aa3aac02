"""Tractability verdicts from the iff-conditions on the weight asymptotics.

With m_0 = mult.m0 and the limit quantities

    alpha        = lim a_j / log j
    alpha_star   = liminf (log a_j) / j
    alpha_ecqpt  = liminf (1 + log j)(log a_j) / j
    B            = sum_j 1/b_j
    B_star       = sup_s (sum_{j<=s} 1/b_j) / (1 + log s)

the notions decide as follows:

    (t1,t2)-WT       t1 > 1 or m_0 = 1          EC-(t1,t2)-WT  t1 > 1, or t2 > 1 and m_0 = 1
    WT, UWT, QPT     m_0 = 1                    EC-WT          m_0 = 1 and lim a_j = inf
    PT, SPT          m_0 = 1 and alpha > 0      EC-UWT         m_0 = 1 and lim log a_j/log j = inf
    EXP              always                     EC-QPT         m_0 = 1, B_star < inf, alpha_ecqpt > 0
    UEXP             B < inf                    EC-PT, EC-SPT  m_0 = 1, B < inf, alpha_star > 0

Family-mode weights have all limits in closed form.  Explicit lists carry
only what the user declared; undeclared limits yield UNKNOWN for exactly
the notions that need them, never a guess extrapolated from finitely many
terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import ExponentReport, exponents
from .errors import ParameterError
from .params import MultiplicitySpec, SpaceConfig, WeightFamily

NOTIONS = (
    "EXP",
    "UEXP",
    "WT",
    "UWT",
    "QPT",
    "PT",
    "SPT",
    "EC_WT",
    "EC_UWT",
    "EC_QPT",
    "EC_PT",
    "EC_SPT",
)

_CHAINS = (
    ("SPT", "PT"),
    ("PT", "QPT"),
    ("QPT", "UWT"),
    ("UWT", "WT"),
    ("EC_SPT", "EC_PT"),
    ("EC_PT", "EC_QPT"),
    ("EC_QPT", "EC_UWT"),
    ("EC_UWT", "EC_WT"),
    ("EC_WT", "WT"),
    ("EC_UWT", "UWT"),
    ("EC_QPT", "QPT"),
    ("EC_PT", "PT"),
    ("EC_SPT", "SPT"),
)


@dataclass(frozen=True)
class LimitSummary:
    """The limit quantities driving classification; None means undeclared."""

    alpha: float | None
    alpha_star: float | None
    alpha_ecqpt: float | None
    lim_a: float | None
    lim_log_ratio: float | None
    B: float | None
    B_star: float | None


def _series_inv_power(c_b: float, v3: float) -> float:
    """sum_{j>=1} 1/(c_b j**v3) for v3 > 1, certified to well below 1e-10.

    Partial sum plus the Euler-Maclaurin tail through the j**-(v3+1) term;
    the remainder is below v(v+1)(v+2) N**-(v3+3) / 720 by complete
    monotonicity, which fixes how many terms are needed.
    """
    v = float(v3)
    n = max(50, math.ceil((v * (v + 1) * (v + 2) / (720.0 * 1e-12)) ** (1.0 / (v + 3))))
    partial = 0.0
    for j in range(n, 0, -1):  # ascending magnitude
        partial += float(j) ** -v
    tail = n ** (1.0 - v) / (v - 1.0) - n**-v / 2.0 + v * n ** (-v - 1.0) / 12.0
    return (partial + tail) / c_b


def family_limits(family: WeightFamily) -> LimitSummary:
    """Closed-form limits for family-mode weights."""
    if not family.is_family:
        raise ParameterError("family_limits needs family-mode weights")
    grows = family.v1 > 0 or family.v2 > 0
    if family.v3 > 1:
        B = _series_inv_power(family.c_b, family.v3)
    else:
        B = math.inf
    # For v3 >= 1, sum_{j<=s} j**-v3 <= H_s <= 1 + log s with equality at
    # s = 1, so the sup over s of B_s/(1 + log s) is attained there.
    B_star = 1.0 / family.c_b if family.v3 >= 1 else math.inf
    return LimitSummary(
        alpha=math.inf if grows else 0.0,
        alpha_star=family.v2,
        alpha_ecqpt=math.inf if family.v2 > 0 else 0.0,
        lim_a=math.inf if grows else family.c_a,
        lim_log_ratio=math.inf if family.v2 > 0 else family.v1,
        B=B,
        B_star=B_star,
    )


def limits_of(weights: WeightFamily) -> LimitSummary:
    """Limits for any weights: closed form for families, declared otherwise."""
    if weights.is_family:
        return family_limits(weights)
    d = weights.limits
    if d is None:
        return LimitSummary(None, None, None, None, None, None, None)
    return LimitSummary(
        alpha=d.alpha,
        alpha_star=d.alpha_star,
        alpha_ecqpt=d.alpha_ecqpt,
        lim_a=d.lim_a,
        lim_log_ratio=d.lim_log_ratio,
        B=d.B,
        B_star=d.B_star,
    )


@dataclass(frozen=True)
class TractabilityReport:
    verdicts: dict[str, str]
    parametric: dict[str, str]
    exponents: ExponentReport
    inputs_echo: LimitSummary


def _tv_and(*vals):
    if any(v is False for v in vals):
        return False
    if any(v is None for v in vals):
        return None
    return True


def _word(v) -> str:
    return {True: "YES", False: "NO", None: "UNKNOWN"}[v]


def classify(weights: WeightFamily, mult: MultiplicitySpec, omega: float) -> TractabilityReport:
    """Verdict for every notion, plus exponents and the limits that drove them."""
    if not (0.0 < omega < 1.0):
        raise ParameterError("omega must lie strictly inside (0, 1)")
    lim = limits_of(weights)
    m01 = mult.m0 == 1
    fin_B = None if lim.B is None else math.isfinite(lim.B)
    fin_B_star = None if lim.B_star is None else math.isfinite(lim.B_star)
    pos_alpha = None if lim.alpha is None else lim.alpha > 0
    pos_alpha_star = None if lim.alpha_star is None else lim.alpha_star > 0
    pos_alpha_ec = None if lim.alpha_ecqpt is None else lim.alpha_ecqpt > 0
    inf_lim_a = None if lim.lim_a is None else math.isinf(lim.lim_a)
    inf_ratio = None if lim.lim_log_ratio is None else math.isinf(lim.lim_log_ratio)

    raw = {
        "EXP": True,
        "UEXP": fin_B,
        "WT": m01,
        "UWT": m01,
        "QPT": m01,
        "PT": _tv_and(m01, pos_alpha),
        "SPT": _tv_and(m01, pos_alpha),
        "EC_WT": _tv_and(m01, inf_lim_a),
        "EC_UWT": _tv_and(m01, inf_ratio),
        "EC_QPT": _tv_and(m01, fin_B_star, pos_alpha_ec),
        "EC_PT": _tv_and(m01, fin_B, pos_alpha_star),
        "EC_SPT": _tv_and(m01, fin_B, pos_alpha_star),
    }
    verdicts = {name: _word(raw[name]) for name in NOTIONS}
    parametric = {
        "wt_t1t2": "all t1>0, t2>0" if m01 else "t1>1",
        "ec_wt_t1t2": "t1>1 or t2>1" if m01 else "t1>1",
    }
    report = exponents(SpaceConfig(omega=omega, weights=weights, mult=mult, s=1))
    return TractabilityReport(
        verdicts=verdicts, parametric=parametric, exponents=report, inputs_echo=lim
    )


def implication_violations(report: TractabilityReport) -> list[str]:
    """Hierarchy violations (stronger notion YES while a weaker one is NO)."""
    v = report.verdicts
    return [
        f"{strong} => {weak}"
        for strong, weak in _CHAINS
        if v[strong] == "YES" and v[weak] == "NO"
    ]
