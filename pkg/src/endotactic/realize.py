"""Dynamical equivalence, canonical realizations, and weakly-reversible
realizability over a fixed candidate set of complexes."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import networkx as nx

from . import lp
from .algebra import Exponent, PolyVector
from .geometry import UnsupportedDimensionError, convex_hull
from .network import MassActionSystem, NetworkError, reaction_vector

log = logging.getLogger(__name__)

MAX_CANDIDATES = 64


class MalformedFieldError(ValueError):
    """A monomial would have to consume a species it does not contain."""


class CandidateSetError(ValueError):
    pass


def is_dynamically_equivalent(a: MassActionSystem, b: MassActionSystem) -> bool:
    if tuple(a.species) != tuple(b.species):
        raise NetworkError(f"species mismatch: {a.species} vs {b.species}")
    return a.field() == b.field()


def check_realizable_signs(f: PolyVector):
    for i, p in enumerate(f):
        for e, c in p.items():
            if c < 0 and e[i] == 0:
                raise MalformedFieldError(
                    f"component {i} has negative coefficient on a monomial {e} free of that species"
                )


def canonical_realization(f: PolyVector, species: Sequence[str] | None = None) -> MassActionSystem:
    """Axis-aligned realization: one edge ``e -> e +/- unit_i`` of rate ``|c|`` per term."""
    from .algebra import default_names

    n = len(f)
    species = list(species) if species is not None else default_names(n)
    check_realizable_signs(f)
    reactions = []
    for i, p in enumerate(f):
        for e, c in p.items():
            tgt = list(e)
            tgt[i] += 1 if c > 0 else -1
            reactions.append((e, tuple(tgt), abs(c)))
    return MassActionSystem.from_reactions(species, reactions)


# ---------------------------------------------------------------------------
# candidate complexes


def newton_polytope_candidates(f: PolyVector, margin: int = 0, limit: int = MAX_CANDIDATES) -> list[Exponent]:
    """Nonnegative lattice points of ``conv(support) + [-margin, margin]^n``."""
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    n = len(f)
    if n > 3:
        raise UnsupportedDimensionError(f"candidate enumeration supports n <= 3, got {n}")
    support = f.support()
    if not support:
        return []
    corners = list(itertools.product((-margin, margin), repeat=n))
    pts = {tuple(a + d for a, d in zip(e, c)) for e in support for c in corners}
    hull = convex_hull(pts)
    lo = [max(0, min(p[i] for p in pts)) for i in range(n)]
    hi = [max(p[i] for p in pts) for i in range(n)]
    out = []
    for q in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if hull.contains(q):
            out.append(tuple(q))
    if len(out) > limit:
        raise CandidateSetError(f"candidate set has {len(out)} complexes, limit is {limit}")
    return sorted(out)


# ---------------------------------------------------------------------------
# realization LPs
#
# Each candidate source y contributes the independent constraint
#     sum_{y'} k_{y->y'} (y' - y) = coefficient vector of x^y in f,
# so the feasible set is a product over sources and every question below
# decomposes into one small LP per source.


def _source_block(y, targets, rhs):
    cols = [reaction_vector(y, t) for t in targets]
    A = [[c[i] for c in cols] for i in range(len(y))]
    return A, list(rhs)


def realization_feasible(f: PolyVector, C: Sequence[Exponent]):
    """Exact feasibility of realizing ``f`` on complexes C.

    Returns a MassActionSystem witness, or None if no nonnegative rate
    assignment reproduces ``f``.
    """
    C = _validate_candidates(f, C)
    reactions = []
    for y in C:
        rhs = f.coefficient_vector(y)
        if not any(rhs):
            continue
        targets = [t for t in C if t != y]
        if not targets:
            return None
        A, b = _source_block(y, targets, rhs)
        x = lp.feasible_point(A, b)
        if x is None:
            return None
        reactions.extend((y, t, k) for t, k in zip(targets, x) if k > 0)
    return MassActionSystem.from_reactions(_names(f), reactions)


def _names(f):
    from .algebra import default_names

    return default_names(len(f))


def _validate_candidates(f: PolyVector, C) -> list[Exponent]:
    C = sorted({tuple(c) for c in C})
    missing = [e for e in f.support() if e not in set(C)]
    if missing:
        raise CandidateSetError(f"candidate set is missing support exponents {missing}")
    if any(len(c) != len(f) or any(v < 0 for v in c) for c in C):
        raise CandidateSetError("candidates must be nonnegative lattice points of the field's dimension")
    return C


def _dense_support(y, targets, rhs):
    """Targets usable with positive rate in some realization of source y.

    Returns ``(admissible_targets, rates)`` where ``rates`` is one exact
    solution that is positive on every admissible target, or None when the
    source block is infeasible.  One LP per target maximizing its rate
    (capped at 1 to keep the LP bounded); targets already positive in an
    earlier solution are skipped.
    """
    if not targets:
        return ([], {}) if not any(rhs) else None
    A, b = _source_block(y, targets, rhs)
    m = len(targets)
    base = lp.feasible_point(A, b)
    if base is None:
        return None
    solutions = [base]
    positive = {j for j, v in enumerate(base) if v > 0}
    for j in range(m):
        if j in positive:
            continue
        cap_row = [0] * (m + 1)
        cap_row[j] = 1
        cap_row[m] = 1
        A2 = [row + [0] for row in A] + [cap_row]
        c = [0] * (m + 1)
        c[j] = 1
        res = lp.solve(c, A2, b + [1])
        if res.status == lp.OPTIMAL and res.value > 0:
            sol = res.x[:m]
            solutions.append(sol)
            positive.update(i for i, v in enumerate(sol) if v > 0)
    avg = [sum(s[j] for s in solutions) / len(solutions) for j in range(m)]
    adm = sorted(positive)
    return [targets[j] for j in adm], {targets[j]: avg[j] for j in adm}


@dataclass
class WRResult:
    realizable: bool
    candidates: list[Exponent]
    trace: list[dict] = field(default_factory=list)
    witness: MassActionSystem | None = None
    reason: str = ""

    def __bool__(self):
        return self.realizable


def wr_realizable_on(f: PolyVector, C: Sequence[Exponent], species: Sequence[str] | None = None) -> WRResult:
    """Decide whether some weakly reversible mass-action system on complexes
    within C has vector field ``f``.

    Iterates: compute the dense (maximal-support) edge set, drop edges that
    join different strongly connected components, and recompute with those
    edges forbidden, until nothing changes.  At the fixpoint every surviving
    edge lies on a cycle, and the averaged dense solution is a weakly
    reversible witness; infeasibility at any stage is a proof that no
    weakly reversible realization on C exists.
    """
    C = _validate_candidates(f, C)
    if len(C) > MAX_CANDIDATES:
        raise CandidateSetError(f"candidate set has {len(C)} complexes, limit is {MAX_CANDIDATES}")
    species = list(species) if species is not None else _names(f)
    allowed = {y: [t for t in C if t != y] for y in C}
    trace = []
    it = 0
    while True:
        it += 1
        edges: dict[tuple[Exponent, Exponent], Fraction] = {}
        for y in C:
            rhs = f.coefficient_vector(y)
            res = _dense_support(y, allowed[y], rhs)
            if res is None:
                trace.append({"iteration": it, "infeasible_source": list(y)})
                return WRResult(False, C, trace, None, f"no realization at source {y} after pruning")
            adm, rates = res
            allowed[y] = adm
            for t in adm:
                edges[(y, t)] = rates[t]
        g = nx.DiGraph()
        g.add_edges_from(edges)
        comp = {}
        for cid, members in enumerate(nx.strongly_connected_components(g)):
            for v in members:
                comp[v] = cid
        cut = [(a, b) for (a, b) in edges if comp[a] != comp[b]]
        trace.append({"iteration": it, "admissible_edges": len(edges), "pruned_edges": len(cut)})
        log.debug("wr iteration %d: %d admissible, %d pruned", it, len(edges), len(cut))
        if not cut:
            break
        for a, b in cut:
            allowed[a] = [t for t in allowed[a] if t != b]

    witness = MassActionSystem.from_reactions(species, [(a, b, k) for (a, b), k in edges.items()])
    if witness.field() != f:
        raise AssertionError("weakly reversible witness does not reproduce the field")
    return WRResult(True, C, trace, witness, "dense realization is weakly reversible")
