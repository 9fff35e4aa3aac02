"""Level arithmetic shared by the counting, spectrum, bound, and kernel code.

Two arithmetic regimes coexist.  When every exponent b_j is an integer and
the a_j (and the budget) round-trip through their decimal representation,
all exponent sums are plain rationals and comparisons are exact.  Otherwise
everything is IEEE double and strict comparisons are taken at face value;
the only correction applied is a +-1 search around floating-point ceilings
so that feasibility counts always agree with the actual predicate.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ResourceLimitError, ToleranceError

# Feasibility counts beyond this are refused outright.
_COUNT_LIMIT = 1 << 62


def as_decimal_fraction(value) -> Fraction:
    """Exact rational for ``value`` read as its shortest decimal form.

    Floats are converted through ``str`` so that a value entered as 0.1
    means 1/10, not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot represent {value!r} exactly")
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"unsupported numeric type {type(value)!r}")


def pow_level(k: int, b):
    """k**b with the convention 0**b = 0.

    Integer exponents use exact integer powers; fractional exponents use
    exp(b*ln k), which is strictly increasing in k either way.
    """
    if k == 0:
        return 0
    if isinstance(b, int):
        return k**b
    fb = float(b)
    if fb.is_integer():
        return k ** int(fb)
    return math.exp(fb * math.log(k))


def count_feasible(a, b, x) -> int:
    """Number of levels k >= 0 with a * k**b strictly below the budget x.

    Exact when ``a`` and ``x`` are Fractions and ``b`` is an int; otherwise
    the initial float guess is corrected against the actual predicate.
    """
    if x <= 0:
        return 0
    ratio = float(x) / float(a)
    if ratio <= 1.0:
        guess = 1
    else:
        try:
            root = ratio ** (1.0 / float(b))
        except OverflowError:
            raise ResourceLimitError("feasible level count overflows") from None
        if not math.isfinite(root) or root > _COUNT_LIMIT:
            raise ResourceLimitError(
                f"feasible level count ~{root:.3g} exceeds limit {_COUNT_LIMIT}"
            )
        guess = max(1, math.ceil(root))

    def feasible(k: int) -> bool:
        return a * pow_level(k, b) < x

    k = guess
    while k > 0 and not feasible(k - 1):
        k -= 1
    while feasible(k):
        k += 1
    return k


def tail_after(omega: float, a, b, start: int) -> float:
    """Certified upper bound on sum_{k >= start} omega**(a * k**b), start >= 1.

    For b >= 1 the bound k**b >= start**b + (k - start) gives a geometric
    majorant.  For b < 1 no fixed-ratio majorant exists on [start, inf), so
    blocks [L, 2L) are bounded by their length times their first term; block
    bounds shrink at least geometrically once c*L**b*(2**b - 1) >= ln 4,
    which closes the sum.
    """
    if start < 1:
        raise ValueError("tail bounds start at level 1")
    c = float(a) * math.log(1.0 / omega)
    fb = float(b)
    if fb >= 1.0:
        return math.exp(-c * float(start) ** fb) / -math.expm1(-c)
    total = 0.0
    level = start
    for _ in range(400):
        block = level * math.exp(-c * float(level) ** fb)
        if 2.0 * math.exp(-c * float(level) ** fb * (2.0**fb - 1.0)) <= 0.5:
            return total + 2.0 * block
        total += block
        level *= 2
    raise ToleranceError("tail bound did not close; exponent or weight too small")
