"""Independent reference implementations and random generators used by the tests.

Nothing here calls into the package's decision procedures; each oracle is a
direct transcription of a definition, a brute force, or a third-party routine.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import numpy as np
import sympy

from endotactic.algebra import Polynomial, PolyVector
from endotactic.network import MassActionSystem, ReactionNetwork


def to_sympy(p: Polynomial, syms):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**e for s, e in zip(syms, exp)])
                for exp, c in p.items()), sympy.Integer(0))


def from_sympy(expr, syms) -> Polynomial:
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for exp, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(int(e) for e in exp)] = Fraction(int(c.p), int(c.q))
    return Polynomial(terms, len(syms))


def symbols(n):
    return sympy.symbols(" ".join(f"s{i}" for i in range(n)), seq=True)


def field_by_definition(sys: MassActionSystem) -> list[dict]:
    """sum_k k x^y (y'-y), accumulated per component as plain dicts."""
    out = [dict() for _ in sys.species]
    for y, yp, k in sys.reactions():
        for i in range(len(y)):
            d = yp[i] - y[i]
            if d:
                out[i][y] = out[i].get(y, 0) + k * d
    return [{e: c for e, c in comp.items() if c != 0} for comp in out]


def field_as_dicts(f: PolyVector) -> list[dict]:
    return [dict(p.items()) for p in f]


def rank_sympy(vectors, n) -> int:
    if not vectors:
        return 0
    return sympy.Matrix(vectors).rank()


def linkage_count(net: ReactionNetwork) -> int:
    g = nx.Graph()
    g.add_nodes_from(range(len(net.vertices)))
    g.add_edges_from(net.edges)
    return nx.number_connected_components(g)


def weakly_reversible_by_cycles(net: ReactionNetwork) -> bool:
    """Every edge s->d lies on a directed cycle iff d reaches s."""
    g = nx.DiGraph()
    g.add_nodes_from(range(len(net.vertices)))
    g.add_edges_from(net.edges)
    return all(nx.has_path(g, d, s) for s, d in net.edges)


def siphons_by_definition(net: ReactionNetwork) -> list[frozenset]:
    """All nonempty siphons: sources free of Z never produce species of Z."""
    out = []
    n = net.n
    for mask in range(1, 2**n):
        Z = [i for i in range(n) if mask >> i & 1]
        ok = True
        for s, d in net.edges:
            src, dst = net.vertices[s], net.vertices[d]
            if all(src[i] == 0 for i in Z) and any(dst[i] > 0 for i in Z):
                ok = False
                break
        if ok:
            out.append(frozenset(Z))
    return out


def critical_by_grid(net: ReactionNetwork, Z, span: int = 4, pmax: int = 6) -> bool:
    """Search p >= 0 (zero on Z) on an integer grid and v over small integer
    combinations of the reaction vectors for p + v > 0."""
    n = net.n
    rvs = list({tuple(b - a for a, b in zip(net.vertices[s], net.vertices[d])) for s, d in net.edges})
    if not rvs:
        return len(Z) == 0
    free = [i for i in range(n) if i not in Z]
    combos = itertools.product(range(-span, span + 1), repeat=min(len(rvs), 3))
    chosen = rvs[:3]
    vs = [tuple(sum(c * r[i] for c, r in zip(cs, chosen)) for i in range(n)) for cs in combos]
    # extra rays from the remaining reaction vectors on their own
    for r in rvs[3:]:
        vs += [tuple(c * x for x in r) for c in range(-span, span + 1)]
    for v in vs:
        if all(v[i] > 0 for i in Z):
            p = [0] * n
            for i in free:
                p[i] = pmax
            if all(p[i] + v[i] > 0 for i in range(n)):
                return True
    return False


def endotactic_by_definition(pairs, u) -> bool:
    """Direct reading: each u-decreasing reaction has a u-increasing one from a strictly u-lower source."""
    def d(a, b):
        return sum(x * y for x, y in zip(a, b))

    for y, yp in pairs:
        if d(u, yp) - d(u, y) < 0:
            if not any(d(u, yb) < d(u, y) and d(u, ybp) - d(u, yb) > 0 for yb, ybp in pairs):
                return False
    return True


def strongly_endotactic_by_definition(pairs, u) -> bool:
    def d(a, b):
        return sum(x * y for x, y in zip(a, b))

    srcs = [y for y, _ in pairs]
    for y, yp in pairs:
        if d(u, yp) - d(u, y) < 0:
            if not any(
                d(u, yb) < d(u, y) and d(u, ybp) - d(u, yb) > 0 and all(d(u, yb) <= d(u, yt) for yt in srcs)
                for yb, ybp in pairs
            ):
                return False
    return True


def brute_hull_facets_3d(points):
    """Facet planes (normal, offset) from every triple with all points on one side."""
    pts = [tuple(Fraction(c) for c in p) for p in set(map(tuple, points))]
    planes = set()
    for a, b, c in itertools.combinations(pts, 3):
        ab = [y - x for x, y in zip(a, b)]
        ac = [y - x for x, y in zip(a, c)]
        nrm = (ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2], ab[0] * ac[1] - ab[1] * ac[0])
        if not any(nrm):
            continue
        off = sum(x * y for x, y in zip(nrm, a))
        vals = [sum(x * y for x, y in zip(nrm, p)) - off for p in pts]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            sgn = 1 if all(v >= 0 for v in vals) else -1
            g = [sgn * x for x in nrm] + [sgn * off]
            den = np.lcm.reduce([int(Fraction(x).denominator) for x in g])
            ints = [int(x * den) for x in g]
            from math import gcd
            from functools import reduce
            k = reduce(gcd, [abs(x) for x in ints if x]) or 1
            planes.add(tuple(x // k for x in ints))
    return planes


def brute_hull_vertices(points):
    """Extreme points: those not in the convex hull of the others (float LP via scipy)."""
    from scipy.optimize import linprog

    pts = sorted(set(map(tuple, points)))
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not others:
            out.append(p)
            continue
        A = np.array(others, dtype=float).T
        A_eq = np.vstack([A, np.ones(len(others))])
        b_eq = np.array(list(p) + [1.0])
        res = linprog(np.zeros(len(others)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if res.status != 0:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# random instances


def random_network(rng: np.random.Generator, max_n: int = 3, max_edges: int = 8, max_exp: int = 4) -> ReactionNetwork:
    n = int(rng.integers(1, max_n + 1))
    m = int(rng.integers(1, max_edges + 1))
    names = ["x", "y", "z"][:n]
    edges = set()
    tries = 0
    while len(edges) < m and tries < 200:
        tries += 1
        a = tuple(int(v) for v in rng.integers(0, max_exp + 1, n))
        b = tuple(int(v) for v in rng.integers(0, max_exp + 1, n))
        if a != b:
            edges.add((a, b))
    edges = sorted(edges)
    verts = sorted({v for e in edges for v in e})
    idx = {v: i for i, v in enumerate(verts)}
    return ReactionNetwork(names, verts, [(idx[a], idx[b]) for a, b in edges])


def random_system(rng: np.random.Generator, **kw) -> MassActionSystem:
    net = random_network(rng, **kw)
    rates = [Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 5))) for _ in net.edges]
    return MassActionSystem(net, rates)


def wr_closure(net: ReactionNetwork) -> ReactionNetwork:
    """Add the reverse of every edge: always weakly reversible."""
    edges = set(net.edges) | {(d, s) for s, d in net.edges}
    return ReactionNetwork(net.species, net.vertices, sorted(edges))
