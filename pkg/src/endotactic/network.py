"""Euclidean-embedded reaction networks and their mass-action vector fields."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Exponent, Polynomial, PolyVector, as_fraction, format_polynomial
from .exact import in_span, row_space_basis


class NetworkError(ValueError):
    """A network or system violates its structural invariants."""


class NetworkParseError(NetworkError):
    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


def reaction_vector(src: Exponent, dst: Exponent) -> tuple[int, ...]:
    return tuple(b - a for a, b in zip(src, dst))


class ReactionNetwork:
    """An E-graph: lattice-point vertices in the nonnegative orthant and directed edges.

    Duplicate vertices are merged at construction and edges are re-indexed
    accordingly.  Self loops and repeated edges are rejected.
    """

    __slots__ = ("species", "vertices", "edges")

    def __init__(self, species: Sequence[str], vertices: Sequence[Sequence[int]], edges: Sequence[tuple[int, int]]):
        species = tuple(species)
        if not species:
            raise NetworkError("species list is empty")
        if len(set(species)) != len(species):
            raise NetworkError(f"duplicate species names in {species}")
        n = len(species)
        uniq: list[Exponent] = []
        index: dict[Exponent, int] = {}
        remap = []
        for v in vertices:
            v = tuple(int(c) for c in v)
            if len(v) != n:
                raise NetworkError(f"vertex {v} has dimension {len(v)}, expected {n}")
            if any(c < 0 for c in v):
                raise NetworkError(f"vertex {v} leaves the nonnegative orthant")
            if v not in index:
                index[v] = len(uniq)
                uniq.append(v)
            remap.append(index[v])
        seen = set()
        out_edges = []
        for s, d in edges:
            if not (0 <= s < len(remap) and 0 <= d < len(remap)):
                raise NetworkError(f"edge ({s}, {d}) references a missing vertex")
            s, d = remap[s], remap[d]
            if s == d:
                raise NetworkError(f"self loop at vertex {uniq[s]}")
            if (s, d) in seen:
                raise NetworkError(f"duplicate edge {uniq[s]} -> {uniq[d]}")
            seen.add((s, d))
            out_edges.append((s, d))
        self.species = species
        self.vertices = tuple(uniq)
        self.edges = tuple(out_edges)

    @property
    def n(self) -> int:
        return len(self.species)

    def edge_pairs(self) -> list[tuple[Exponent, Exponent]]:
        return [(self.vertices[s], self.vertices[d]) for s, d in self.edges]

    def reaction_vectors(self) -> list[tuple[int, ...]]:
        return [reaction_vector(a, b) for a, b in self.edge_pairs()]

    def sources(self) -> list[Exponent]:
        """Distinct source complexes, in vertex order."""
        idx = sorted({s for s, _ in self.edges})
        return [self.vertices[i] for i in idx]

    def reversed(self) -> "ReactionNetwork":
        return ReactionNetwork(self.species, self.vertices, [(d, s) for s, d in self.edges])

    def __eq__(self, other):
        if not isinstance(other, ReactionNetwork):
            return NotImplemented
        return (self.species, set(self.edge_pairs()), set(self.vertices)) == (
            other.species,
            set(other.edge_pairs()),
            set(other.vertices),
        )

    def __repr__(self):
        return f"ReactionNetwork(species={self.species}, |V|={len(self.vertices)}, |E|={len(self.edges)})"


class MassActionSystem:
    """A reaction network with one positive rational rate constant per edge."""

    __slots__ = ("network", "rates")

    def __init__(self, network: ReactionNetwork, rates: Sequence):
        rates = tuple(as_fraction(k) for k in rates)
        if len(rates) != len(network.edges):
            raise NetworkError(f"{len(rates)} rates for {len(network.edges)} edges")
        for k, (a, b) in zip(rates, network.edge_pairs()):
            if k <= 0:
                raise NetworkError(f"rate of {a} -> {b} must be positive, got {k}")
        self.network = network
        self.rates = rates

    @classmethod
    def from_reactions(cls, species: Sequence[str], reactions: Iterable, extra_vertices=()) -> "MassActionSystem":
        """Build from ``(source, target, rate)`` triples.

        Rates of repeated ``(source, target)`` pairs are summed.  The vertex
        list is the sorted set of complexes that appear.
        """
        acc: dict[tuple[Exponent, Exponent], Fraction] = {}
        verts = {tuple(v) for v in extra_vertices}
        for src, dst, k in reactions:
            src, dst = tuple(src), tuple(dst)
            key = (src, dst)
            acc[key] = acc.get(key, Fraction(0)) + as_fraction(k)
            verts.update((src, dst))
        vertices = sorted(verts)
        index = {v: i for i, v in enumerate(vertices)}
        items = sorted(acc.items(), key=lambda kv: (index[kv[0][0]], index[kv[0][1]]))
        edges = [(index[s], index[d]) for (s, d), _ in items]
        rates = [k for _, k in items]
        return cls(ReactionNetwork(species, vertices, edges), rates)

    @property
    def species(self):
        return self.network.species

    def reactions(self) -> list[tuple[Exponent, Exponent, Fraction]]:
        return [(a, b, k) for (a, b), k in zip(self.network.edge_pairs(), self.rates)]

    def field(self) -> PolyVector:
        return mass_action_field(self)

    def __repr__(self):
        return f"MassActionSystem({self.network!r})"


def mass_action_field(sys: MassActionSystem) -> PolyVector:
    """Species formation rates: the sum over edges of ``k x^y (y' - y)``."""
    n = sys.network.n
    comps: list[dict] = [dict() for _ in range(n)]
    for src, dst, k in sys.reactions():
        for i, d in enumerate(reaction_vector(src, dst)):
            if d:
                comps[i][src] = comps[i].get(src, Fraction(0)) + k * d
    return PolyVector([Polynomial(c, n) for c in comps])


@dataclass(frozen=True)
class StoichiometricData:
    basis: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)


def stoichiometric_subspace(net: ReactionNetwork) -> StoichiometricData:
    vecs = net.reaction_vectors()
    return StoichiometricData(tuple(row_space_basis(vecs)) if vecs else ())


def linkage_classes(net: ReactionNetwork) -> list[list[int]]:
    """Connected components of the undirected reaction graph, as sorted vertex-index lists."""
    parent = list(range(len(net.vertices)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, d in net.edges:
        rs, rd = find(s), find(d)
        if rs != rd:
            parent[max(rs, rd)] = min(rs, rd)
    groups: dict[int, list[int]] = {}
    for i in range(len(net.vertices)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def compatibility_class_member(net: ReactionNetwork, z0: Sequence, z: Sequence) -> bool:
    """True iff ``z - z0`` lies in the stoichiometric subspace (both points positive)."""
    z0 = [Fraction(v) for v in z0]
    z = [Fraction(v) for v in z]
    if len(z0) != net.n or len(z) != net.n:
        raise NetworkError("point dimension does not match the species count")
    if any(v <= 0 for v in z0) or any(v <= 0 for v in z):
        raise NetworkError("compatibility classes are defined for strictly positive points")
    diff = [b - a for a, b in zip(z0, z)]
    return in_span(stoichiometric_subspace(net).basis, diff)


# ---------------------------------------------------------------------------
# serialization


def _rate_str(k: Fraction) -> str:
    return str(k.numerator) if k.denominator == 1 else f"{k.numerator}/{k.denominator}"


def system_to_dict(sys: MassActionSystem, with_field: bool = False) -> dict:
    net = sys.network
    out = {
        "species": list(net.species),
        "vertices": [list(v) for v in net.vertices],
        "edges": [{"src": s, "dst": d, "rate": _rate_str(k)} for (s, d), k in zip(net.edges, sys.rates)],
    }
    if with_field:
        out["field"] = [format_polynomial(p, net.species) for p in sys.field()]
    return out


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def system_from_dict(data) -> MassActionSystem:
    """Parse the network JSON schema; a missing ``rate`` defaults to 1."""
    if not isinstance(data, dict):
        raise NetworkParseError("top level must be an object", "$")
    for key in ("species", "vertices", "edges"):
        if key not in data:
            raise NetworkParseError(f"missing key {key!r}", "$")
    species = data["species"]
    if not isinstance(species, list) or not all(isinstance(s, str) for s in species):
        raise NetworkParseError("species must be a list of strings", "$.species")
    vertices = data["vertices"]
    if not isinstance(vertices, list):
        raise NetworkParseError("vertices must be a list", "$.vertices")
    for i, v in enumerate(vertices):
        if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
            raise NetworkParseError("vertex must be a list of integers", f"$.vertices[{i}]")
    edges, rates = [], []
    if not isinstance(data["edges"], list):
        raise NetworkParseError("edges must be a list", "$.edges")
    for i, e in enumerate(data["edges"]):
        loc = f"$.edges[{i}]"
        if not isinstance(e, dict) or "src" not in e or "dst" not in e:
            raise NetworkParseError("edge needs 'src' and 'dst'", loc)
        edges.append((e["src"], e["dst"]))
        try:
            rates.append(as_fraction(str(e.get("rate", "1"))))
        except (ValueError, TypeError) as exc:
            raise NetworkParseError(str(exc), loc + ".rate") from exc
    try:
        return MassActionSystem(ReactionNetwork(species, vertices, edges), rates)
    except NetworkParseError:
        raise
    except NetworkError as exc:
        raise NetworkParseError(str(exc), "$") from exc


def load_system(path) -> MassActionSystem:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise NetworkParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
    return system_from_dict(data)


def complex_label(y: Exponent, species: Sequence[str]) -> str:
    parts = []
    for name, c in zip(species, y):
        if c == 1:
            parts.append(name)
        elif c > 1:
            parts.append(f"{c}{name}")
    return "+".join(parts) if parts else "0"


def to_dot(sys: MassActionSystem) -> str:
    net = sys.network
    lines = ["digraph reaction_network {"]
    for i, v in enumerate(net.vertices):
        lines.append(f'  v{i} [label="{complex_label(v, net.species)}"];')
    for (s, d), k in zip(net.edges, sys.rates):
        lines.append(f'  v{s} -> v{d} [label="{_rate_str(k)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
