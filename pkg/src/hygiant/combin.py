"""Exact combinatorial arithmetic.

Binomial coefficients with a hard 128-bit capacity limit, colexicographic
ranking/unranking of r-subsets, j-subset enumeration of an edge, and the
critical edge probability at which the exploration branching mean equals 1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

U128_MAX = (1 << 128) - 1


class CapacityError(OverflowError):
    """A combinatorial quantity exceeded the 128-bit desk-scale limit."""


def binomial(n: int, r: int) -> int:
    """Exact C(n, r), restricted to results representable in 128 bits.

    Out-of-range r (negative or above n) yields 0, the empty-count
    convention, so sums over subset shapes need no boundary cases.
    """
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got n={n}")
    if r < 0 or r > n:
        return 0
    v = math.comb(n, r)
    if v > U128_MAX:
        raise CapacityError(
            f"C({n},{r}) = {v} exceeds the 128-bit capacity limit"
        )
    return v


def rank_subset(subset: Sequence[int], n: int | None = None) -> int:
    """Colexicographic rank of a strictly increasing vertex subset.

    rank(S) = sum_i C(S[i], i+1) over the sorted subset; the first subset
    {0, 1, ..., r-1} has rank 0.
    """
    prev = -1
    rank = 0
    for i, v in enumerate(subset):
        if v <= prev:
            raise ValueError(f"subset must be strictly increasing, got {list(subset)}")
        if n is not None and not (0 <= v < n):
            raise ValueError(f"vertex {v} out of range [0, {n})")
        rank += math.comb(v, i + 1)
        prev = v
    return rank


def unrank_subset(rank: int, r: int) -> list[int]:
    """Inverse of :func:`rank_subset`: the r-subset with the given colex rank."""
    if rank < 0:
        raise ValueError("rank must be non-negative")
    out = [0] * r
    rem = rank
    for i in range(r, 0, -1):
        # largest c with C(c, i) <= rem
        c = i - 1
        # exponential search up, then binary search
        hi = max(c + 1, 2)
        while math.comb(hi, i) <= rem:
            hi *= 2
        lo = c
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if math.comb(mid, i) <= rem:
                lo = mid
            else:
                hi = mid
        c = lo
        out[i - 1] = c
        rem -= math.comb(c, i)
    if rem != 0:
        raise ValueError(f"rank {rank} is not a valid colex rank for r={r}")
    return out


def sub_jsets(edge: Sequence[int], j: int) -> list[int]:
    """Colex ranks of all C(k, j) j-subsets of a k-set of vertices."""
    verts = sorted(edge)
    if len(set(verts)) != len(verts):
        raise ValueError("edge contains duplicate vertices")
    return [rank_subset(c) for c in combinations(verts, j)]


def critical_p0(n: int, k: int, j: int) -> float:
    """Critical edge probability 1 / ((C(k,j)-1) * C(n,k-j)).

    Computed in floating point from exact integer binomials; relative error
    below 2**-50.
    """
    return 1.0 / ((math.comb(k, j) - 1) * binomial(n, k - j))


def critical_p0_fraction(n: int, k: int, j: int) -> Fraction:
    """Exact rational critical probability, for identity checks."""
    return Fraction(1, (math.comb(k, j) - 1) * binomial(n, k - j))


@dataclass(frozen=True)
class Params:
    """Model parameters for H^k(n, p) with j-connectivity.

    ``eps`` is the signed relative distance from criticality: when a Params
    is built via :meth:`from_eps`, p = (1 + eps) * p0.
    """

    n: int
    k: int
    j: int
    p: float
    eps: float | None = None

    def __post_init__(self):
        if not (1 <= self.j < self.k <= self.n):
            raise ValueError(
                f"require 1 <= j < k <= n, got n={self.n}, k={self.k}, j={self.j}"
            )
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"p must be in [0, 1], got {self.p}")

    @classmethod
    def from_eps(cls, n: int, k: int, j: int, eps: float) -> "Params":
        """Build with p = (1 + eps) * p0; eps < 0 gives the subcritical regime."""
        p = (1.0 + eps) * critical_p0(n, k, j)
        return cls(n=n, k=k, j=j, p=min(p, 1.0), eps=eps)

    @property
    def litter(self) -> int:
        """C = C(k,j) - 1, the number of new j-sets an edge typically reveals."""
        return math.comb(self.k, self.j) - 1

    @property
    def p0(self) -> float:
        return critical_p0(self.n, self.k, self.j)

    @property
    def n_jsets(self) -> int:
        return binomial(self.n, self.j)

    @property
    def n_ksets(self) -> int:
        return binomial(self.n, self.k)


@dataclass(frozen=True)
class ToleranceSchedule:
    """Constants controlling thresholds and tolerance bands.

    delta      base exponent, in (0, 1/6)
    rho1       large-component constant: "large" means size >= rho1 * n**j
    gamma      lower-coupling slack in (1 - gamma) * C(n, k-j)
    lambda0    concentration tolerance for edge counts / branching claims
    delta0     base smoothness tolerance; delta_ell = 8**ell * delta0
    """

    delta: float = 0.1
    rho1: float = 0.01
    gamma: float = 0.001
    lambda0: float = 0.01
    delta0: float = 0.05

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0 / 6.0):
            raise ValueError(f"delta must lie in (0, 1/6), got {self.delta}")
        for name in ("rho1", "gamma", "lambda0", "delta0"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def delta_ell(self, ell: int) -> float:
        return (8.0**ell) * self.delta0

    def check_hierarchy(self, n: int, eps: float) -> list[str]:
        """Report (as warnings) orderings the asymptotic hierarchy expects.

        At desk scale the chains cannot all hold strictly; this only warns,
        it never rejects a configuration.
        """
        issues = []
        if self.gamma >= eps:
            issues.append(f"gamma={self.gamma} is not below eps={eps}")
        if self.lambda0 >= self.delta0 / math.log(n):
            issues.append(
                f"lambda0={self.lambda0} is not below delta0/log(n)="
                f"{self.delta0 / math.log(n):.4g}"
            )
        if self.rho1 >= self.gamma:
            issues.append(f"rho1={self.rho1} is not below gamma={self.gamma}")
        for msg in issues:
            warnings.warn("tolerance hierarchy: " + msg, stacklevel=2)
        return issues


def default_tolerances(eps: float, delta: float = 0.1) -> ToleranceSchedule:
    """Defaults tied to eps: rho1 = eps**2, gamma = 0.01 * eps."""
    return ToleranceSchedule(
        delta=delta,
        rho1=eps * eps,
        gamma=0.01 * eps,
        lambda0=0.01,
        delta0=0.05,
    )
