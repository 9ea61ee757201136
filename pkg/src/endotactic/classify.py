"""Structural predicates: weak reversibility, deficiency, (strong) endotacticity,
siphons, critical siphons and complex balance."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import networkx as nx
import numpy as np

from . import lp
from .exact import dot
from .geometry import UnsupportedDimensionError, representative_directions
from .network import (
    MassActionSystem,
    ReactionNetwork,
    linkage_classes,
    stoichiometric_subspace,
)

MAX_SIPHON_SPECIES = 16


class InvariantViolation(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def _digraph(net: ReactionNetwork) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(net.vertices)))
    g.add_edges_from(net.edges)
    return g


def strong_components(net: ReactionNetwork) -> list[int]:
    """Component id per vertex."""
    comp = [0] * len(net.vertices)
    for cid, members in enumerate(nx.strongly_connected_components(_digraph(net))):
        for v in members:
            comp[v] = cid
    return comp


def is_weakly_reversible(net: ReactionNetwork) -> bool:
    comp = strong_components(net)
    return all(comp[s] == comp[d] for s, d in net.edges)


def deficiency(net: ReactionNetwork) -> int:
    ell = len(linkage_classes(net))
    s = stoichiometric_subspace(net).dimension
    delta = len(net.vertices) - ell - s
    if delta < 0:
        raise InvariantViolation(f"negative deficiency {delta}")
    return delta


# ---------------------------------------------------------------------------
# endotactic conditions


@dataclass(frozen=True)
class DirectionVerdict:
    passed: bool
    failing_edge: int | None = None


def endotactic_for_direction(net: ReactionNetwork, u: Sequence) -> DirectionVerdict:
    """Every u-decreasing reaction needs a u-increasing reaction from a strictly u-lower source."""
    if not any(u):
        raise ValueError("direction must be nonzero")
    pairs = net.edge_pairs()
    level = [dot(u, a) for a, _ in pairs]
    slope = [dot(u, b) - dot(u, a) for a, b in pairs]
    rising = [lv for lv, sl in zip(level, slope) if sl > 0]
    lowest_rise = min(rising) if rising else None
    for i, (lv, sl) in enumerate(zip(level, slope)):
        if sl < 0 and (lowest_rise is None or lowest_rise >= lv):
            return DirectionVerdict(False, i)
    return DirectionVerdict(True)


def strongly_endotactic_for_direction(net: ReactionNetwork, u: Sequence) -> DirectionVerdict:
    """As endotactic, with the countering reaction's source u-minimal among all sources."""
    if not any(u):
        raise ValueError("direction must be nonzero")
    pairs = net.edge_pairs()
    if not pairs:
        return DirectionVerdict(True)
    level = [dot(u, a) for a, _ in pairs]
    slope = [dot(u, b) - dot(u, a) for a, b in pairs]
    floor = min(level)
    rise_at_floor = any(lv == floor and sl > 0 for lv, sl in zip(level, slope))
    for i, (lv, sl) in enumerate(zip(level, slope)):
        if sl < 0 and not (rise_at_floor and lv > floor):
            return DirectionVerdict(False, i)
    return DirectionVerdict(True)


def sweep_test(net: ReactionNetwork, u: Sequence, strong: bool = False) -> bool:
    """Parallel sweep of source levels in increasing ``u . y``.

    Strong form: only the first touching level is examined, and for
    ``u`` outside the orthogonal complement of the stoichiometric subspace
    it must carry a strictly u-increasing reaction and no decreasing one.
    Plain form: keep sweeping past levels whose reactions are all
    u-orthogonal.
    """
    pairs = net.edge_pairs()
    if not pairs:
        return True
    by_level: dict = {}
    for a, b in pairs:
        by_level.setdefault(dot(u, a), []).append(dot(u, b) - dot(u, a))
    levels = sorted(by_level)
    if strong:
        if all(sl == 0 for lv in levels for sl in by_level[lv]):
            return True
        first = by_level[levels[0]]
        return all(sl >= 0 for sl in first) and any(sl > 0 for sl in first)
    for lv in levels:
        slopes = by_level[lv]
        if any(sl < 0 for sl in slopes):
            return False
        if any(sl > 0 for sl in slopes):
            return True
    return True


@dataclass(frozen=True)
class EndotacticVerdict:
    holds: bool
    counterexample: tuple[int, ...] | None = None
    failing_edge: int | None = None
    directions_checked: int = 0

    def __bool__(self):
        return self.holds


def _check_dims(net):
    if net.n > 3:
        raise UnsupportedDimensionError(f"sweep predicates support n <= 3, got {net.n}")


def _decide(net: ReactionNetwork, predicate) -> EndotacticVerdict:
    _check_dims(net)
    dirs = representative_directions(net)
    fails = []
    for u in dirs:
        v = predicate(net, u)
        if not v.passed:
            fails.append((u, v.failing_edge))
    if fails:
        u, e = min(fails)
        return EndotacticVerdict(False, u, e, len(dirs))
    return EndotacticVerdict(True, None, None, len(dirs))


def is_endotactic(net: ReactionNetwork) -> EndotacticVerdict:
    return _decide(net, endotactic_for_direction)


def is_strongly_endotactic(net: ReactionNetwork) -> EndotacticVerdict:
    # directions orthogonal to every reaction vector pass vacuously, so no explicit skip is needed
    return _decide(net, strongly_endotactic_for_direction)


def random_direction_falsifier(
    net: ReactionNetwork, samples: int = 100_000, seed: int = 0, strong: bool = False, bound: int = 1000
) -> tuple[int, ...] | None:
    """Search random integer directions for a failure; None when none is found.

    Can only refute a "holds" verdict, never prove one.
    """
    pairs = net.edge_pairs()
    if not pairs:
        return None
    rng = np.random.default_rng(seed)
    U = rng.integers(-bound, bound + 1, size=(samples, net.n), dtype=np.int64)
    U = U[np.any(U != 0, axis=1)]
    src = np.array([a for a, _ in pairs], dtype=np.int64)
    delta = np.array([[y - x for x, y in zip(a, b)] for a, b in pairs], dtype=np.int64)
    level = U @ src.T
    slope = U @ delta.T
    big = np.iinfo(np.int64).max
    if strong:
        floor = level.min(axis=1, keepdims=True)
        rise_at_floor = np.any((level == floor) & (slope > 0), axis=1, keepdims=True)
        bad = (slope < 0) & ~(rise_at_floor & (level > floor))
    else:
        lowest_rise = np.where(slope > 0, level, big).min(axis=1, keepdims=True)
        bad = (slope < 0) & (lowest_rise >= level)
    hit = np.flatnonzero(bad.any(axis=1))
    if hit.size:
        return tuple(int(c) for c in U[hit[0]])
    return None


# ---------------------------------------------------------------------------
# siphons


def is_siphon(net: ReactionNetwork, Z) -> bool:
    Z = set(Z)
    for a, b in net.edge_pairs():
        if not any(a[i] for i in Z) and any(b[i] for i in Z):
            return False
    return True


def all_siphons(net: ReactionNetwork) -> list[frozenset[int]]:
    """Every nonempty siphon, by subset enumeration."""
    n = net.n
    if n > MAX_SIPHON_SPECIES:
        raise ValueError(f"siphon enumeration supports at most {MAX_SIPHON_SPECIES} species, got {n}")
    out = []
    for size in range(1, n + 1):
        for Z in combinations(range(n), size):
            if is_siphon(net, Z):
                out.append(frozenset(Z))
    return out


def siphons(net: ReactionNetwork) -> list[frozenset[int]]:
    """Minimal nonempty siphons, ordered by size then index."""
    found = all_siphons(net)
    minimal = [Z for Z in found if not any(W < Z for W in found)]
    return sorted(minimal, key=lambda Z: (len(Z), sorted(Z)))


def is_critical(net: ReactionNetwork, Z) -> bool:
    """Is there ``p >= 0`` vanishing on Z whose translate ``p + S`` meets the positive orthant?

    Equivalent to the existence of ``v`` in S with ``v_i > 0`` for every i in Z,
    decided by an exact LP over the coordinates of a basis of S.
    """
    Z = sorted(set(Z))
    if not Z:
        return True
    basis = stoichiometric_subspace(net).basis
    if not basis:
        return False
    rows = [[b[i] for b in basis] for i in Z]
    return lp.strict_feasible([], rows, nvars=len(basis)) is not None


def is_complex_balanced_at(sys: MassActionSystem, x) -> bool:
    x = [Fraction(v) for v in x]
    if any(v <= 0 for v in x):
        raise ValueError("complex balance is tested at strictly positive points")
    net = sys.network
    if len(x) != net.n:
        raise ValueError("point dimension mismatch")
    balance = [Fraction(0)] * len(net.vertices)
    for (s, d), k in zip(net.edges, sys.rates):
        flux = k
        for xi, e in zip(x, net.vertices[s]):
            flux *= xi**e
        balance[s] -= flux
        balance[d] += flux
    return all(b == 0 for b in balance)


# ---------------------------------------------------------------------------
# report


@dataclass
class ClassificationReport:
    linkage_classes: int
    stoichiometric_dimension: int
    vertices: int
    deficiency: int
    weakly_reversible: bool
    endotactic: bool
    endotactic_counterexample: tuple[int, ...] | None
    strongly_endotactic: bool
    strongly_endotactic_counterexample: tuple[int, ...] | None
    siphons: list[list[str]] = field(default_factory=list)
    critical_siphons: list[list[str]] = field(default_factory=list)

    def __post_init__(self):
        if self.deficiency != self.vertices - self.linkage_classes - self.stoichiometric_dimension:
            raise InvariantViolation("deficiency formula violated")
        if self.deficiency < 0:
            raise InvariantViolation("negative deficiency")
        if self.strongly_endotactic and not self.endotactic:
            raise InvariantViolation("strongly endotactic but not endotactic")
        if self.weakly_reversible and not self.endotactic:
            raise InvariantViolation("weakly reversible but not endotactic")

    def to_dict(self) -> dict:
        return {
            "linkage_classes": self.linkage_classes,
            "stoichiometric_dimension": self.stoichiometric_dimension,
            "vertices": self.vertices,
            "deficiency": self.deficiency,
            "weakly_reversible": self.weakly_reversible,
            "endotactic": self.endotactic,
            "endotactic_counterexample": list(self.endotactic_counterexample)
            if self.endotactic_counterexample
            else None,
            "strongly_endotactic": self.strongly_endotactic,
            "strongly_endotactic_counterexample": list(self.strongly_endotactic_counterexample)
            if self.strongly_endotactic_counterexample
            else None,
            "siphons": self.siphons,
            "critical_siphons": self.critical_siphons,
        }


def classification_report(sys: MassActionSystem | ReactionNetwork) -> ClassificationReport:
    net = sys.network if isinstance(sys, MassActionSystem) else sys
    endo = is_endotactic(net)
    strong = is_strongly_endotactic(net)
    sips = siphons(net)
    names = net.species
    return ClassificationReport(
        linkage_classes=len(linkage_classes(net)),
        stoichiometric_dimension=stoichiometric_subspace(net).dimension,
        vertices=len(net.vertices),
        deficiency=deficiency(net),
        weakly_reversible=is_weakly_reversible(net),
        endotactic=endo.holds,
        endotactic_counterexample=endo.counterexample,
        strongly_endotactic=strong.holds,
        strongly_endotactic_counterexample=strong.counterexample,
        siphons=[[names[i] for i in sorted(Z)] for Z in sips],
        critical_siphons=[[names[i] for i in sorted(Z)] for Z in sips if is_critical(net, Z)],
    )
