"""Eigenvalue levels of the approximation operator and n-th minimal errors.

The operator associated with an instance is diagonal on the weighted tensor
basis with eigenvalue omega**E(k) at the level multi-index k in N_0^s, where
E(k) = sum_j a_j * k_j**b_j.  Each level k carries prod_j m_{k_j} basis
indices, and distinct multi-indices with equal exponent sum share one
eigenvalue, so the natural unit of enumeration is an exponent-sum class with
an aggregated multiplicity.

Classes are produced in strictly increasing exponent order by a best-first
search over the lattice: a min-heap frontier is seeded with the origin and
every popped point pushes its +1 neighbours (deduplicated through a visited
set).  Per-coordinate terms are strictly increasing in k_j, so the heap
minimum always dominates all unvisited points, and a class is complete as
soon as the heap top exceeds its key.  In exact arithmetic (integer b_j,
decimal a_j) keys are rationals and class grouping is exact; otherwise keys
are doubles, grouped by exact floating equality with no tolerance, so
classes that collide only up to rounding stay separate rather than being
silently merged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from heapq import heappop, heappush

from ._arith import pow_level
from .errors import ParameterError, ResourceLimitError
from .params import SpaceConfig


def exponent_sum(config: SpaceConfig, idx) -> float:
    """E(k) = sum_j a_j * k_j**b_j for a level multi-index k."""
    idx = tuple(idx)
    if len(idx) != config.s:
        raise ParameterError(f"index has {len(idx)} coordinates, config has s = {config.s}")
    if any(k < 0 for k in idx):
        raise ParameterError("level indices must be nonnegative")
    total = 0.0
    for j, k in enumerate(idx, start=1):
        total += config.a(j) * pow_level(k, config.b(j))
    return total


def eigenvalue(config: SpaceConfig, idx) -> float:
    """omega**E(k); equals 1 exactly at the origin."""
    return config.omega ** exponent_sum(config, idx)


@dataclass(frozen=True)
class EigenEntry:
    """One exponent-sum class: eigenvalue, aggregated multiplicity, members.

    ``rank_start`` is the 1-based position of the class's first repeated
    eigenvalue in the expanded nonincreasing sequence, and ``cumulative``
    counts all expanded positions up to and including this class.  ``key``
    keeps the exponent sum in the stream's native arithmetic (Fraction on
    the exact path, float otherwise).
    """

    exponent_sum: float
    eigenvalue: float
    count: int
    rank_start: int
    cumulative: int
    members: tuple[tuple[int, ...], ...]
    key: object = field(repr=False, default=None)


class EigenStream:
    """Iterator over exponent-sum classes in strictly increasing order.

    The stream is infinite; the consumer bounds how far it reads.  A stream
    is a stateful iterator owned by one consumer at a time.
    """

    def __init__(self, config: SpaceConfig):
        self._config = config
        self._mult = config.mult
        self._omega = config.omega
        pairs = config.exact_pairs()
        if pairs is not None:
            self._a = [p[0] for p in pairs]
            self._b = [p[1] for p in pairs]
            zero = Fraction(0)
        else:
            self._a = [config.a(j) for j in range(1, config.s + 1)]
            self._b = [config.b(j) for j in range(1, config.s + 1)]
            zero = 0.0
        origin = (0,) * config.s
        self._heap = [(zero, origin)]
        self._seen = {origin}
        self._cumulative = 0

    @property
    def cumulative(self) -> int:
        return self._cumulative

    def _key(self, idx):
        total = None
        for aj, bj, kj in zip(self._a, self._b, idx):
            term = aj * pow_level(kj, bj)
            total = term if total is None else total + term
        return total

    def __iter__(self):
        return self

    def __next__(self) -> EigenEntry:
        heap = self._heap
        key0 = heap[0][0]
        members = []
        # Successors have strictly larger keys, so pushing them while the
        # class drains cannot extend the class itself.
        while heap and heap[0][0] == key0:
            _, idx = heappop(heap)
            members.append(idx)
            for j in range(len(idx)):
                succ = idx[:j] + (idx[j] + 1,) + idx[j + 1 :]
                if succ not in self._seen:
                    self._seen.add(succ)
                    heappush(heap, (self._key(succ), succ))
        count = 0
        for idx in members:
            prod = 1
            for kj in idx:
                prod *= self._mult.m(kj)
            count += prod
        rank_start = self._cumulative + 1
        self._cumulative += count
        return EigenEntry(
            exponent_sum=float(key0),
            eigenvalue=self._omega ** float(key0),
            count=count,
            rank_start=rank_start,
            cumulative=self._cumulative,
            members=tuple(members),
            key=key0,
        )


def nth_minimal_error(config: SpaceConfig, n: int, *, max_entries: int = 500_000) -> float:
    """The n-th minimal worst-case error sqrt(lambda_{s,n+1}).

    lambda_{s,.} is the expanded, multiplicity-repeated nonincreasing
    eigenvalue sequence; position n+1 falls in the first class whose
    cumulative count reaches n+1.
    """
    if n < 0:
        raise ParameterError("n must be nonnegative")
    stream = EigenStream(config)
    for _ in range(max_entries):
        entry = next(stream)
        if entry.cumulative >= n + 1:
            return math.sqrt(entry.eigenvalue)
    raise ResourceLimitError(f"n = {n} exceeds the enumeration budget of {max_entries} classes")
