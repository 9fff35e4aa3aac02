"""Problem parameters: multiplicities, weight sequences, and full instances.

An instance is fixed by a base omega in (0,1), a bounded multiplicity
sequence m_0, m_1, ... of positive integers (finite prefix plus constant
tail), a nondecreasing positive weight sequence a_1 <= a_2 <= ..., and a
second weight sequence b_j bounded away from zero.  Weights come either
from the closed-form family

    a_j = c_a * j**v1 * exp(v2 * j),        b_j = c_b * j**v3,

or as explicit finite lists with optionally declared asymptotic limits
(limits of a black-box finite list are not computable, so classification
refuses to guess them).
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass, fields
from fractions import Fraction

from ._arith import as_decimal_fraction
from .errors import ParameterError


@dataclass(frozen=True)
class MultiplicitySpec:
    """Multiplicity sequence m_k as a finite prefix plus a constant tail.

    This covers every bounded eventually-constant sequence; the extrema
    m_max and m_min are taken over k >= 1 only, excluding m_0.
    """

    prefix: tuple[int, ...] = ()
    tail: int = 1

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(v) for v in self.prefix))
        if any(v < 1 for v in self.prefix):
            raise ParameterError("multiplicities must be positive integers")
        if int(self.tail) < 1:
            raise ParameterError("multiplicity tail must be a positive integer")
        object.__setattr__(self, "tail", int(self.tail))
        sums = [0]
        for v in self.prefix:
            sums.append(sums[-1] + v)
        object.__setattr__(self, "_psum", tuple(sums))

    @property
    def m0(self) -> int:
        return self.prefix[0] if self.prefix else self.tail

    @property
    def m_max(self) -> int:
        tail_cands = self.prefix[1:] + (self.tail,)
        return max(tail_cands)

    @property
    def m_min(self) -> int:
        tail_cands = self.prefix[1:] + (self.tail,)
        return min(tail_cands)

    def m(self, k: int) -> int:
        if k < 0:
            raise ParameterError("level index must be nonnegative")
        return self.prefix[k] if k < len(self.prefix) else self.tail

    def r(self, k: int) -> int:
        """Prefix count r_k = m_0 + ... + m_{k-1}, with r_0 = 0."""
        if k < 0:
            raise ParameterError("prefix counts start at k = 0")
        p = len(self.prefix)
        if k <= p:
            return self._psum[k]
        return self._psum[p] + (k - p) * self.tail

    def level_of(self, n: int) -> int:
        """The unique k with r_k <= n < r_{k+1}."""
        if n < 0:
            raise ParameterError("basis index must be nonnegative")
        p = len(self.prefix)
        if n >= self._psum[p]:
            return p + (n - self._psum[p]) // self.tail
        return bisect_right(self._psum, n) - 1


UNIT_MULT = MultiplicitySpec()
KOROBOV_MULT = MultiplicitySpec(prefix=(1,), tail=2)


_LIMIT_FIELDS = ("alpha", "alpha_star", "alpha_ecqpt", "lim_a", "lim_log_ratio", "B", "B_star")


@dataclass(frozen=True)
class DeclaredLimits:
    """User-declared asymptotics for explicit weight lists.

    Fields left as None stay unknown and propagate to UNKNOWN verdicts.
    """

    alpha: float | None = None
    alpha_star: float | None = None
    alpha_ecqpt: float | None = None
    lim_a: float | None = None
    lim_log_ratio: float | None = None
    B: float | None = None
    B_star: float | None = None


@dataclass(frozen=True)
class WeightFamily:
    """Weight sequences, in closed-form family mode or explicit list mode."""

    c_a: float = 1.0
    v1: float = 0.0
    v2: float = 0.0
    c_b: float = 1.0
    v3: float = 0.0
    a_list: tuple[float, ...] | None = None
    b_list: tuple[float, ...] | None = None
    limits: DeclaredLimits | None = None

    def __post_init__(self):
        if (self.a_list is None) != (self.b_list is None):
            raise ParameterError("explicit mode needs both a and b lists")
        if self.a_list is not None:
            a = tuple(float(v) for v in self.a_list)
            b = tuple(float(v) for v in self.b_list)
            if not a or len(a) != len(b):
                raise ParameterError("explicit weight lists must be nonempty and equally long")
            if a[0] <= 0:
                raise ParameterError("a_1 must be positive")
            if any(x > y for x, y in zip(a, a[1:])):
                raise ParameterError("the a-sequence must be nondecreasing")
            if min(b) <= 0:
                raise ParameterError("all b_j must be positive")
            object.__setattr__(self, "a_list", a)
            object.__setattr__(self, "b_list", b)
        else:
            if self.c_a <= 0 or self.c_b <= 0:
                raise ParameterError("c_a and c_b must be positive")
            if self.v1 < 0 or self.v2 < 0 or self.v3 < 0:
                raise ParameterError("family exponents v1, v2, v3 must be nonnegative")
            if self.limits is not None:
                raise ParameterError("family mode computes its limits; none may be declared")

    @classmethod
    def power_exp(cls, c_a=1.0, v1=0.0, v2=0.0, c_b=1.0, v3=0.0) -> "WeightFamily":
        return cls(c_a=c_a, v1=v1, v2=v2, c_b=c_b, v3=v3)

    @classmethod
    def explicit(cls, a, b, limits: DeclaredLimits | None = None) -> "WeightFamily":
        return cls(a_list=tuple(a), b_list=tuple(b), limits=limits)

    @property
    def is_family(self) -> bool:
        return self.a_list is None

    def length(self) -> int | None:
        return None if self.is_family else len(self.a_list)

    def a(self, j: int) -> float:
        if j < 1:
            raise ParameterError("weight indices start at 1")
        if self.is_family:
            return self.c_a * j**self.v1 * math.exp(self.v2 * j)
        if j > len(self.a_list):
            raise IndexError(f"explicit weights stored up to j = {len(self.a_list)}")
        return self.a_list[j - 1]

    def b(self, j: int) -> float:
        if j < 1:
            raise ParameterError("weight indices start at 1")
        if self.is_family:
            return self.c_b * j**self.v3
        if j > len(self.b_list):
            raise IndexError(f"explicit weights stored up to j = {len(self.b_list)}")
        return self.b_list[j - 1]

    def exact_pair(self, j: int) -> tuple[Fraction, int] | None:
        """(a_j, b_j) as (rational, integer) when that is exact, else None."""
        bj = self.b(j)
        if not float(bj).is_integer():
            return None
        if self.is_family:
            if self.v2 != 0.0 or not float(self.v1).is_integer():
                return None
            aj = as_decimal_fraction(self.c_a) * j ** int(self.v1)
        else:
            aj = as_decimal_fraction(self.a_list[j - 1])
        return aj, int(bj)


def weight_at(weights: WeightFamily, j: int) -> tuple[float, float]:
    """The pair (a_j, b_j)."""
    return weights.a(j), weights.b(j)


def prefix_counts(mult: MultiplicitySpec, upto: int) -> list[int]:
    """The counts r_0, r_1, ..., r_upto."""
    if upto < 0:
        raise ParameterError("prefix count range must be nonnegative")
    return [mult.r(k) for k in range(upto + 1)]


def level_of(mult: MultiplicitySpec, n: int) -> int:
    """The level k(n) whose index block contains n."""
    return mult.level_of(n)


@dataclass(frozen=True)
class SpaceConfig:
    """A full problem instance: base omega, weights, multiplicities, dimension."""

    omega: float
    weights: WeightFamily
    mult: MultiplicitySpec = UNIT_MULT
    s: int = 1

    def __post_init__(self):
        if not (0.0 < self.omega < 1.0):
            raise ParameterError("omega must lie strictly inside (0, 1)")
        if self.s < 1:
            raise ParameterError("dimension s must be at least 1")
        n = self.weights.length()
        if n is not None and n < self.s:
            raise ParameterError(f"explicit weights cover {n} coordinates, need {self.s}")

    def a(self, j: int) -> float:
        return self.weights.a(j)

    def b(self, j: int) -> float:
        return self.weights.b(j)

    def exact_pairs(self) -> tuple[tuple[Fraction, int], ...] | None:
        """Exact (a_j, b_j) for j = 1..s, or None if any coordinate is inexact."""
        pairs = []
        for j in range(1, self.s + 1):
            p = self.weights.exact_pair(j)
            if p is None:
                return None
            pairs.append(p)
        return tuple(pairs)


def _limit_to_json(v):
    if v is None:
        return None
    return "inf" if math.isinf(v) else v


def _limit_from_json(v):
    if v is None:
        return None
    if isinstance(v, str):
        if v.lower() in ("inf", "infinity"):
            return math.inf
        raise ParameterError(f"unrecognized limit value {v!r}")
    return float(v)


def config_to_dict(config: SpaceConfig) -> dict:
    w = config.weights
    if w.is_family:
        weights = {"family": {"c_a": w.c_a, "v1": w.v1, "v2": w.v2, "c_b": w.c_b, "v3": w.v3}}
    else:
        explicit = {"a": list(w.a_list), "b": list(w.b_list)}
        if w.limits is not None:
            explicit["limits"] = {
                f.name: _limit_to_json(getattr(w.limits, f.name))
                for f in fields(w.limits)
                if getattr(w.limits, f.name) is not None
            }
        weights = {"explicit": explicit}
    return {
        "omega": config.omega,
        "s": config.s,
        "mult": {"prefix": list(config.mult.prefix), "tail": config.mult.tail},
        "weights": weights,
    }


def config_from_dict(data: dict) -> SpaceConfig:
    try:
        omega = float(data["omega"])
        s = int(data["s"])
        mult_data = data.get("mult", {"prefix": [], "tail": 1})
        mult = MultiplicitySpec(tuple(mult_data.get("prefix", ())), mult_data.get("tail", 1))
        wdata = data["weights"]
    except KeyError as exc:
        raise ParameterError(f"config is missing key {exc}") from None
    if "family" in wdata:
        f = wdata["family"]
        weights = WeightFamily.power_exp(
            c_a=f.get("c_a", 1.0),
            v1=f.get("v1", 0.0),
            v2=f.get("v2", 0.0),
            c_b=f.get("c_b", 1.0),
            v3=f.get("v3", 0.0),
        )
    elif "explicit" in wdata:
        e = wdata["explicit"]
        limits = None
        if "limits" in e:
            unknown = set(e["limits"]) - set(_LIMIT_FIELDS)
            if unknown:
                raise ParameterError(f"unknown limit keys {sorted(unknown)}")
            limits = DeclaredLimits(
                **{k: _limit_from_json(v) for k, v in e["limits"].items()}
            )
        weights = WeightFamily.explicit(e["a"], e["b"], limits)
    else:
        raise ParameterError("weights must contain a 'family' or 'explicit' entry")
    return SpaceConfig(omega=omega, weights=weights, mult=mult, s=s)


def load_config(path: str) -> SpaceConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


def dumps_config(config: SpaceConfig) -> str:
    """Canonical JSON text; parsing and re-emitting is byte-stable."""
    return json.dumps(config_to_dict(config), indent=2)
