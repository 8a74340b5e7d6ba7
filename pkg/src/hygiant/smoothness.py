"""Smooth-boundary machinery: degree profiles of exploration frontiers.

A boundary (one BFS generation) is smooth at level ell when every ell-set
of vertices lies in close to the average number of its j-sets. The
modules here compute the smoothing schedule (when a boundary is wide
enough for level ell to mix, and how many further generations the mixing
takes), measure degree profiles and their spread, and split the arrivals
in the next generation into jumps (from j-sets not containing the ell-set)
and neighbourhood branchings (from j-sets containing it).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import kernels
from .combin import Params, ToleranceSchedule, binomial
from .exploration import ExplorationState, ell_degrees


def theta(k: int, j: int, ell: int) -> float:
    """Branching-decay factor (C(k-l, j-l) - 1) / (C(k, j) - 1).

    Starting from a j-set containing a fixed ell-set L, this is the
    expected share of children that still contain L, per unit of total
    offspring mean. It is < 1 for 1 <= ell <= j, so the degree of L decays
    geometrically relative to the boundary width.
    """
    if not 0 <= ell <= j:
        raise ValueError("need 0 <= ell <= j")
    return (binomial(k - ell, j - ell) - 1) / (binomial(k, j) - 1)


@dataclass(frozen=True)
class SmoothingSchedule:
    """When level-ell smoothing starts and how long it takes."""

    ell: int
    i_start: int  # first generation of width >= n^(ell + delta)
    s_smooth: int  # generations needed for the initial degrees to decay
    i_smooth: int  # i_start + s_smooth: boundaries from here on are smooth


def smoothing_schedule(
    widths: list[int] | np.ndarray,
    params: Params,
    ell: int,
    tol: ToleranceSchedule,
) -> SmoothingSchedule:
    """Compute (i_ell, s_ell, i_ell+) for one level from boundary widths.

    i_ell is the first generation with at least n^(ell + delta) j-sets;
    s_ell = ceil((j - ell) ln n / -ln((1 + 2 lambda0 + 2 eps) theta_ell))
    bounds how many generations the worst-case initial degree needs to
    decay below the smooth target.
    """
    if not 1 <= ell <= params.j - 1:
        raise ValueError("need 1 <= ell <= j - 1")
    floor = params.n ** (ell + tol.delta)
    i_start = -1
    for i, w in enumerate(widths):
        if w >= floor:
            i_start = i
            break
    if i_start < 0:
        raise ValueError("no generation reaches the width floor n^(ell + delta)")
    decay = (1.0 + 2.0 * tol.lambda0 + 2.0 * params.eps) * theta(params.k, params.j, ell)
    if decay >= 1.0:
        raise ValueError("decay factor >= 1; smoothing never completes at this level")
    s_smooth = math.ceil((params.j - ell) * math.log(params.n) / -math.log(decay))
    return SmoothingSchedule(ell, i_start, s_smooth, i_start + s_smooth)


@dataclass
class DegreeProfile:
    """Level-ell degree statistics of one boundary."""

    ell: int
    width: int  # j-sets in the boundary
    n_ell_sets: int  # C(n, ell)
    target: float  # width * C(n, j - ell) / C(n, j)
    max_degree: int
    min_degree: int  # 0 when some ell-set is untouched (full mode only)
    spread: float  # max |degree - target| / target
    degrees: np.ndarray | None  # per-ell-set counts in full mode

    def sum_identity_holds(self, j: int) -> bool:
        """Does sum_L d_L equal C(j, ell) * width? (Full mode only.)

        Every j-set of the boundary contains exactly C(j, ell) ell-sets,
        so the total degree double-counts the boundary that many times.
        """
        if self.degrees is None:
            raise ValueError("sum identity needs the full profile")
        return int(self.degrees.sum()) == binomial(j, self.ell) * self.width


def degree_profile(
    ranks: np.ndarray,
    n: int,
    j: int,
    ell: int,
    full: bool = True,
    keep_degrees: bool = False,
) -> DegreeProfile:
    """Measure the level-ell degree profile of a family of j-sets.

    In full mode the spread runs over all C(n, ell) ell-sets, so untouched
    ell-sets (degree 0, deviation = target) count; set full=False to
    restrict to ell-sets of positive degree when C(n, ell) is huge.
    """
    ranks = np.asarray(ranks, dtype=np.int64)
    width = len(ranks)
    n_ell = binomial(n, ell)
    target = width * binomial(n, j - ell) / binomial(n, j)
    ell_ranks, counts = ell_degrees(ranks, n, j, ell)
    hit = len(counts)
    max_deg = int(counts.max()) if hit else 0
    if full:
        min_deg = int(counts.min()) if hit == n_ell else 0
    else:
        min_deg = int(counts.min()) if hit else 0
    degrees = None
    if keep_degrees:
        degrees = np.zeros(n_ell, dtype=np.int64)
        degrees[ell_ranks] = counts
    if target > 0:
        spread = max(abs(max_deg - target), abs(min_deg - target)) / target
    else:
        spread = 0.0
    return DegreeProfile(ell, width, n_ell, target, max_deg, min_deg, spread, degrees)


@dataclass(frozen=True)
class ArrivalCounts:
    """Decomposition of next-generation degree arrivals at level ell."""

    ell: int
    jumps: int  # new j-sets whose parent did not contain the ell-set
    branchings: int  # new j-sets whose parent contained it
    predicted_jumps: float
    predicted_branchings: float


def classify_arrivals(state: ExplorationState, i: int, ell: int) -> ArrivalCounts:
    """Split generation i+1 degree contributions into jumps and branchings.

    A new j-set contributes one unit to the degree of each of its C(j, ell)
    ell-sets; the unit is a neighbourhood branching when the parent j-set
    already contained that ell-set, and a jump otherwise. Predictions: the
    boundary makes about (1 + eps)/C * |gen i| edges, each jumping into
    C(k, ell) - C(j, ell) ell-sets with C(k-l, j-l) new j-sets apiece, and
    branching at the C(j, ell) ell-sets of its source with C(k-l, j-l) - 1
    new j-sets apiece.
    """
    if state.parents is None:
        raise ValueError("exploration must be run with track_parents=True")
    p = state.params
    members = state.generations[i + 1]
    parents = state.parents[i + 1]
    member_rows = kernels.unrank_batch(members, p.j, p.n)
    parent_rows = kernels.unrank_batch(parents, p.j, p.n)
    jumps = 0
    branchings = 0
    for row in range(len(members)):
        parent_set = set(parent_rows[row])
        for sel in combinations(member_rows[row], ell):
            if all(v in parent_set for v in sel):
                branchings += 1
            else:
                jumps += 1
    width = len(state.generations[i])
    litter = p.litter
    edges = (1.0 + p.eps) / litter * width
    pred_jumps = (
        edges
        * (binomial(p.k, ell) - binomial(p.j, ell))
        * binomial(p.k - ell, p.j - ell)
    )
    pred_branch = (
        edges * binomial(p.j, ell) * (binomial(p.k - ell, p.j - ell) - 1)
    )
    return ArrivalCounts(ell, jumps, branchings, pred_jumps, pred_branch)


def arrival_count_value(j: int, k: int, ell: int) -> Fraction:
    """Combinatorial sum counting the ell-sets an edge can jump into.

    f(j, k, l) = (k-j)! j!/l! * sum_{l'=0}^{l-1} C(l, l') /
                 ((j - l')! (k - j - l + l')!),
    summed over the overlap l' of the target ell-set with the source
    j-set; terms with a negative factorial argument are zero.
    """
    if not 1 <= ell <= j:
        raise ValueError("need 1 <= ell <= j")
    total = Fraction(0)
    for lp in range(ell):
        a = j - lp
        b = k - j - ell + lp
        if a < 0 or b < 0:
            continue
        total += Fraction(math.comb(ell, lp), math.factorial(a) * math.factorial(b))
    return Fraction(math.factorial(k - j) * math.factorial(j), math.factorial(ell)) * total


def arrival_count_identity(j: int, k: int, ell: int) -> bool:
    """Check f(j, k, l) == C(k, l) - C(j, l) exactly."""
    return arrival_count_value(j, k, ell) == math.comb(k, ell) - math.comb(j, ell)
