"""Concrete space instantiations: bases, reproducing kernels, truncation.

Five orthonormal families are supported, each tied to a multiplicity
pattern of the abstract model:

  l2seq    e_k(n) = delta_{k,n} on N_0                          (m_k = 1)
  hermite  orthonormal Hermite polynomials on R                 (m_k = 1)
  korobov  e_0 = 1, e_{2k-1} = exp(2 pi i k x),
           e_{2k} = exp(-2 pi i k x) on [0,1]                   (m_0 = 1, m_k = 2)
  cosine   e_0 = 1, e_k = sqrt(2) cos(pi k x) on [0,1]          (m_k = 1)
  walsh    base-beta Walsh functions on [0,1]                   (m_k = 1)

Hermite evaluation uses only the normalized three-term recurrence
h_{k+1}(x) = (x h_k(x) - sqrt(k) h_{k-1}(x)) / sqrt(k+1), which stays
bounded by the Cramer envelope (2 pi)**(1/4) exp(x**2/4) and is free of
factorials.  Walsh functions follow the standard digitwise construction:
with k = sum kappa_i beta**i and x = sum xi_i beta**-i the value is
exp(2 pi i (kappa_0 xi_1 + kappa_1 xi_2 + ...) / beta); digits of x are
extracted exactly from its binary value, and x = 1 is evaluated with the
all-zero digit convention, wal_k(1) = 1.

The weighted spaces all have reproducing kernels that factor across
coordinates; each univariate factor is a series over levels truncated
under a certified majorant (the Cramer envelope supplies the Hermite
bound).  The ambient unweighted spaces, except the sequence space, have
no kernel and such requests are rejected.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, product

from ._arith import pow_level, tail_after
from .errors import ParameterError, PreconditionError, ResourceLimitError, ToleranceError
from .params import SpaceConfig
from .spectrum import EigenStream

_TAGS = ("l2seq", "hermite", "korobov", "cosine", "walsh")
_CRAMER = (2.0 * math.pi) ** 0.25


@dataclass(frozen=True)
class SpaceKind:
    """A basis family tag, plus the digit base for Walsh functions."""

    tag: str
    walsh_base: int = 2

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ParameterError(f"unknown space kind {self.tag!r}")
        if self.tag == "walsh" and self.walsh_base < 2:
            raise ParameterError("the Walsh base must be an integer >= 2")

    @property
    def complex_valued(self) -> bool:
        return self.tag in ("korobov", "walsh")


L2SEQ = SpaceKind("l2seq")
HERMITE = SpaceKind("hermite")
KOROBOV = SpaceKind("korobov")
COSINE = SpaceKind("cosine")


def walsh(base: int = 2) -> SpaceKind:
    return SpaceKind("walsh", base)


def kind_from_name(name: str, walsh_base: int = 2) -> SpaceKind:
    name = name.lower()
    if name == "walsh":
        return walsh(walsh_base)
    return SpaceKind(name)


def validate_space(kind: SpaceKind, config: SpaceConfig) -> None:
    """Check that the configured multiplicities match the basis family."""
    mult = config.mult
    if kind.tag == "korobov":
        ok = mult.m0 == 1 and all(mult.m(k) == 2 for k in range(1, len(mult.prefix) + 2))
        if not ok:
            raise ParameterError("the Korobov space needs m_0 = 1 and m_k = 2 for k >= 1")
    else:
        ok = all(v == 1 for v in mult.prefix) and mult.tail == 1
        if not ok:
            raise ParameterError(f"the {kind.tag} space needs m_k = 1 for all k")


def _check_unit_interval(x: float) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0):
        raise ParameterError(f"point {x} outside the domain [0, 1]")
    return x


def _korobov_frequency(n: int) -> int:
    if n == 0:
        return 0
    return (n + 1) // 2 if n % 2 else -(n // 2)


def _walsh_eval(base: int, n: int, x: float) -> complex:
    if x == 1.0:
        return 1.0 + 0.0j  # digits of 1 taken as all zeros
    frac = Fraction(x)  # exact binary value of the input
    t = 0
    while n:
        frac *= base
        digit = int(frac)
        frac -= digit
        t += (n % base) * digit
        n //= base
    t %= base
    if base == 2:
        return complex(1.0 if t == 0 else -1.0, 0.0)
    return cmath.exp(2j * math.pi * t / base)


def _hermite_block(count: int, x: float) -> list[float]:
    """h_0(x) .. h_{count-1}(x) by the normalized recurrence."""
    if count <= 0:
        return []
    vals = [1.0]
    if count > 1:
        vals.append(x)
    for k in range(1, count - 1):
        vals.append((x * vals[k] - math.sqrt(k) * vals[k - 1]) / math.sqrt(k + 1))
    return vals


def basis_eval(kind: SpaceKind, n: int, x):
    """The n-th basis element of the family at a point of its domain."""
    if n < 0:
        raise ParameterError("basis indices are nonnegative")
    tag = kind.tag
    if tag == "l2seq":
        xi = int(x)
        if xi != x or xi < 0:
            raise ParameterError("sequence-space points are nonnegative integers")
        return 1.0 if xi == n else 0.0
    if tag == "hermite":
        return _hermite_block(n + 1, float(x))[n]
    if tag == "korobov":
        h = _korobov_frequency(n)
        return cmath.exp(2j * math.pi * h * _check_unit_interval(x))
    if tag == "cosine":
        x = _check_unit_interval(x)
        return 1.0 if n == 0 else math.sqrt(2.0) * math.cos(math.pi * n * x)
    return _walsh_eval(kind.walsh_base, n, _check_unit_interval(x))


def _basis_block(kind: SpaceKind, count: int, x):
    """e_0(x) .. e_{count-1}(x); batched so Hermite stays O(count)."""
    if kind.tag == "hermite":
        return _hermite_block(count, float(x))
    return [basis_eval(kind, n, x) for n in range(count)]


def weighted_basis_eval(kind: SpaceKind, config: SpaceConfig, n, x):
    """Weighted basis element: prod_j omega**(a_j k(n_j)**b_j / 2) e_{n_j}(x_j)."""
    validate_space(kind, config)
    n = tuple(n)
    x = tuple(x)
    if len(n) != config.s or len(x) != config.s:
        raise ParameterError(f"need {config.s} index and point coordinates")
    value = 1.0 + 0.0j if kind.complex_valued else 1.0
    for j in range(1, config.s + 1):
        level = config.mult.level_of(n[j - 1])
        scale = config.omega ** (config.a(j) * pow_level(level, config.b(j)) / 2.0)
        value = value * scale * basis_eval(kind, n[j - 1], x[j - 1])
    return value


def _envelope(kind: SpaceKind, x) -> float:
    """Pointwise bound on |e_k(x)| uniform over k."""
    tag = kind.tag
    if tag == "hermite":
        return _CRAMER * math.exp(float(x) ** 2 / 4.0)
    if tag == "cosine":
        return math.sqrt(2.0)
    return 1.0


def _as_point_tuple(x, s: int):
    if isinstance(x, (tuple, list)):
        pt = tuple(x)
    else:
        pt = (x,)
    if len(pt) != s:
        raise ParameterError(f"point has {len(pt)} coordinates, config has s = {s}")
    return pt


_MAX_KERNEL_LEVELS = 1 << 17


def _uni_kernel(kind, config, j, x, y, delta):
    """One univariate kernel factor truncated to certified tail <= delta."""
    omega = config.omega
    a, b = config.a(j), config.b(j)
    mult = config.mult
    env = _envelope(kind, x) * _envelope(kind, y) * mult.m_max
    levels = 1
    while True:
        bound = env * tail_after(omega, a, b, levels)
        if bound <= delta:
            break
        levels *= 2
        if levels > _MAX_KERNEL_LEVELS:
            raise ToleranceError(f"kernel tolerance {delta} unreachable within the level cap")
    count = mult.r(levels)
    ex = _basis_block(kind, count, x)
    ey = _basis_block(kind, count, y)
    total = 0.0 + 0.0j if kind.complex_valued else 0.0
    for k in range(levels):
        w = omega ** (a * pow_level(k, b))
        for i in range(mult.r(k), mult.r(k + 1)):
            term = ex[i] * ey[i].conjugate() if kind.complex_valued else ex[i] * ey[i]
            total += w * term
    return total, bound


def kernel_eval(kind: SpaceKind, config: SpaceConfig, x, y, tail_tol: float = 1e-10,
                weighted: bool = True):
    """Reproducing kernel K(x, y) with a certified truncation error.

    Returns (value, tail_bound) with |value - K(x, y)| <= tail_bound <=
    tail_tol.  The kernel factors over coordinates; per-factor truncation
    targets are tightened until the product-level error meets tail_tol.
    """
    validate_space(kind, config)
    if tail_tol <= 0:
        raise ParameterError("tail_tol must be positive")
    s = config.s
    xs = _as_point_tuple(x, s)
    ys = _as_point_tuple(y, s)
    if not weighted and kind.tag != "l2seq":
        raise ParameterError(
            f"the unweighted {kind.tag} space has no reproducing kernel"
        )
    if kind.tag == "l2seq":
        value = 1.0
        for j in range(1, s + 1):
            xi, yi = int(xs[j - 1]), int(ys[j - 1])
            if xi != xs[j - 1] or yi != ys[j - 1] or xi < 0 or yi < 0:
                raise ParameterError("sequence-space points are nonnegative integers")
            if xi != yi:
                return (0.0, 0.0)
            if weighted:
                level = config.mult.level_of(xi)
                value *= config.omega ** (config.a(j) * pow_level(level, config.b(j)))
        return (value, 0.0)

    deltas = [tail_tol / s] * s
    parts = [_uni_kernel(kind, config, j + 1, xs[j], ys[j], deltas[j]) for j in range(s)]
    for _ in range(5):
        mags = [abs(p) + t for p, t in parts]
        err = sum(t * math.prod(mags[:j] + mags[j + 1 :]) for j, (_, t) in enumerate(parts))
        if err <= tail_tol:
            value = math.prod(p for p, _ in parts)
            return (value, err)
        for j in range(s):
            others = math.prod(mags[:j] + mags[j + 1 :])
            deltas[j] = tail_tol / (s * max(others, 1.0))
        parts = [_uni_kernel(kind, config, j + 1, xs[j], ys[j], deltas[j]) for j in range(s)]
    raise ToleranceError("kernel product tolerance did not converge")


@dataclass(frozen=True)
class CoefficientVector:
    """Finitely supported coefficients over the multi-index basis."""

    entries: dict[tuple[int, ...], complex]
    norm_kind: str = "weighted"

    def __post_init__(self):
        if self.norm_kind not in ("weighted", "unweighted"):
            raise ParameterError("norm_kind must be 'weighted' or 'unweighted'")
        clean = {}
        for idx, val in self.entries.items():
            idx = tuple(int(i) for i in idx)
            if any(i < 0 for i in idx):
                raise ParameterError("basis indices are nonnegative")
            if val != 0:
                clean[idx] = complex(val)
        object.__setattr__(self, "entries", clean)


@dataclass(frozen=True)
class ErrorCertificate:
    """Worst-case error of a rank-n truncation: sqrt of the first dropped eigenvalue."""

    worst_case_error: float
    n_used: int
    eigen_cutoff: float


def _expand_members(mult, members):
    """All basis multi-indices whose coordinatewise levels match a class member."""
    out = []
    for lvl in members:
        ranges = [range(mult.r(k), mult.r(k + 1)) for k in lvl]
        out.extend(product(*ranges))
    return out


def optimal_index_set(config: SpaceConfig, n: int, *, max_entries: int = 200_000):
    """The n leading eigen-positions and the cutoff they leave behind.

    Returns (kept, next_index, cutoff): the kept basis multi-indices, the
    first dropped index, and its eigenvalue lambda_{s,n+1}.  Whole classes
    are kept outright; a class crossing position n is kept partially in
    ascending lexicographic order, a deterministic tie-break that does not
    affect the certificate.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    mult = config.mult
    stream = EigenStream(config)
    kept: list[tuple[int, ...]] = []
    for entry in islice(stream, max_entries):
        if entry.cumulative <= n:
            kept.extend(_expand_members(mult, entry.members))
            if entry.cumulative == n:
                nxt = next(stream)
                first = min(tuple(mult.r(k) for k in lvl) for lvl in nxt.members)
                return kept, first, nxt.eigenvalue
            continue
        block = sorted(_expand_members(mult, entry.members))
        take = n - (entry.cumulative - entry.count)
        kept.extend(block[:take])
        return kept, block[take], entry.eigenvalue
    raise ResourceLimitError(f"n = {n} exceeds the enumeration budget")


def truncate_optimal(config: SpaceConfig, f: CoefficientVector, n: int):
    """Best rank-n approximation: keep f on the n largest-eigenvalue positions.

    Returns the truncated coefficient vector and a certificate carrying the
    worst-case error sqrt(lambda_{s,n+1}) over the unit ball.
    """
    if f.norm_kind != "weighted":
        raise PreconditionError("truncation expects coefficients in the weighted basis")
    kept, _, cutoff = optimal_index_set(config, n)
    kept_set = set(kept)
    entries = {idx: val for idx, val in f.entries.items() if idx in kept_set}
    cert = ErrorCertificate(
        worst_case_error=math.sqrt(cutoff), n_used=n, eigen_cutoff=cutoff
    )
    return CoefficientVector(entries, "weighted"), cert


def coefficients_to_dict(vec: CoefficientVector) -> dict:
    entries = [
        {"index": list(idx), "re": val.real, "im": val.imag}
        for idx, val in sorted(vec.entries.items())
    ]
    return {"entries": entries, "basis": vec.norm_kind}


def coefficients_from_dict(data: dict) -> CoefficientVector:
    basis = data.get("basis", "weighted")
    entries = {}
    for item in data["entries"]:
        idx = tuple(item["index"])
        entries[idx] = complex(item.get("re", 0.0), item.get("im", 0.0))
    return CoefficientVector(entries, basis)
