"""Command-line interface.

Exit codes: 0 success, 1 negative answer (``equiv`` found the systems
different), 2 input/parse error, 3 unsupported dimension, 4 invalid scalar
polynomial, 5 other domain error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .algebra import PolynomialParseError, PolyVector, format_polynomial, parse_polynomial, poly_eval
from .bundled import EXAMPLES, get_example
from .classify import classification_report, random_direction_falsifier
from .dynamics import integrate, newton_fixed_point, phase_portrait_grid, sample_steady_curve
from .geometry import UnsupportedDimensionError, convex_hull, is_strictly_interior
from .network import NetworkError, NetworkParseError, dumps_canonical, load_system, system_to_dict, to_dot
from .realize import CandidateSetError, MalformedFieldError, is_dynamically_equivalent, newton_polytope_candidates, wr_realizable_on
from .transform import InvalidScalarPolynomial, OrthantError, ScalarPolynomial, construct_full_unit

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_DIM, EXIT_SCALAR, EXIT_DOMAIN = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _err(msg: str):
    print(f"error: {msg}", file=sys.stderr)


def _write(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def load_field(path: str) -> tuple[list[str], PolyVector]:
    """Read ``{"species": [...], "field": ["poly", ...]}``."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise NetworkParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
    if not isinstance(data, dict) or "species" not in data or "field" not in data:
        raise NetworkParseError("field file needs 'species' and 'field'", path)
    species = data["species"]
    comps = data["field"]
    if len(comps) != len(species):
        raise NetworkParseError("one field component per species is required", f"{path}:$.field")
    polys = []
    for i, text in enumerate(comps):
        try:
            polys.append(parse_polynomial(text, species))
        except PolynomialParseError as exc:
            raise NetworkParseError(str(exc), f"{path}:$.field[{i}]") from exc
    return species, PolyVector(polys)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _box(text: str) -> list[tuple[float, float]]:
    out = []
    for part in text.split(","):
        try:
            a, b = part.split(":")
            out.append((float(a), float(b)))
        except ValueError:
            raise UsageError(f"box must look like 'a:b,c:d', got {text!r}") from None
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args):
    sys_ = load_system(args.network)
    rep = classification_report(sys_)
    d = rep.to_dict()
    if args.falsify:
        u = random_direction_falsifier(sys_.network, args.falsify, seed=args.seed)
        d["falsifier"] = {"samples": args.falsify, "seed": args.seed, "refutation": list(u) if u else None}
    if args.json:
        sys.stdout.write(dumps_canonical(d))
    else:
        width = max(len(k) for k in d)
        for k, v in d.items():
            print(f"{k.ljust(width)}  {v}")
    return EXIT_OK


def cmd_construct(args):
    base = load_system(args.base)
    try:
        h = parse_polynomial(args.scalar, base.species)
    except PolynomialParseError as exc:
        raise NetworkParseError(str(exc), "--scalar") from exc
    pos = [e for e, c in h.items() if c > 0]
    neg = [e for e, c in h.items() if c < 0]
    if pos and len(neg) == 1:
        hull = convex_hull(pos)
        inside = is_strictly_interior(hull, neg[0])
        print(f"newton polytope: negative exponent {neg[0]} strictly interior: {inside}", file=sys.stderr)
    print(f"h(1,...,1) = {poly_eval(h, [1] * h.nvars)}", file=sys.stderr)
    full = construct_full_unit(base, ScalarPolynomial(h))
    _write(dumps_canonical(system_to_dict(full, with_field=True)), args.output)
    return EXIT_OK


def cmd_equiv(args):
    a, b = load_system(args.a), load_system(args.b)
    same = is_dynamically_equivalent(a, b)
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_NO


def cmd_wr_check(args):
    species, f = load_field(args.field)
    C = newton_polytope_candidates(f, args.margin)
    res = wr_realizable_on(f, C, species)
    out = {
        "realizable": res.realizable,
        "margin": args.margin,
        "candidate_count": len(C),
        "candidates": [list(c) for c in C],
        "trace": res.trace,
        "reason": res.reason,
        "witness": system_to_dict(res.witness) if res.witness else None,
    }
    sys.stdout.write(dumps_canonical(out))
    verdict = "WR-realizable" if res.realizable else "not WR-realizable"
    print(f"{verdict} on candidate set (size {len(C)})", file=sys.stderr)
    return EXIT_OK


def cmd_simulate(args):
    sys_ = load_system(args.system)
    x0 = _floats(args.x0)
    if len(x0) != sys_.network.n:
        raise UsageError("--x0 dimension does not match the species count")
    tr = integrate(sys_.field(), x0, args.t_end, args.tol)
    if tr.halted:
        print(f"integration halted early: {tr.halted}", file=sys.stderr)
    _write(tr.to_csv(sys_.species), args.output)
    return EXIT_OK


def cmd_steady_states(args):
    ex = get_example(args.example)
    names = list(ex.species)
    sample = sample_steady_curve(ex.scalar, ex.box, args.count, field=ex.full_field)
    fps = []
    for seed in ex.fixed_points:
        x, _ = newton_fixed_point(ex.base_field, seed)
        fps.append(x)
    lines = ["kind," + ",".join(names) + ",residual"]
    for p, r in zip(sample.points, sample.residuals):
        lines.append("curve," + ",".join(repr(float(v)) for v in p) + f",{float(r)!r}")
    full = ex.full_field
    for x in fps:
        r = float(np.max(np.abs([float(v) for v in full(list(map(float, x)))])))
        lines.append("fixed," + ",".join(repr(float(v)) for v in x) + f",{r!r}")
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_portrait(args):
    if args.system:
        f = load_system(args.system).field()
        box = _box(args.box) if args.box else None
        if box is None:
            raise UsageError("--box is required with --system")
    else:
        ex = get_example(args.example)
        f = ex.full_field if args.part == "full" else ex.base_field
        box = _box(args.box) if args.box else ex.box
    if len(box) != len(f):
        raise UsageError("box dimension does not match the field")
    grid = phase_portrait_grid(f, box, args.resolution)
    _write(grid.to_csv(), args.output)
    return EXIT_OK


def cmd_examples(args):
    if args.action == "list":
        for name, ex in EXAMPLES.items():
            h = format_polynomial(ex.scalar, ex.species)
            print(f"{name}\t{','.join(ex.species)}\th = {h}\t{ex.description}")
        return EXIT_OK
    if not args.name:
        raise UsageError("examples export needs a name")
    ex = get_example(args.name)
    sys_ = ex.full_system() if args.part == "full" else ex.base_system()
    _write(dumps_canonical(system_to_dict(sys_, with_field=True)), args.output)
    return EXIT_OK


def cmd_dot(args):
    _write(to_dot(load_system(args.network)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="endotactic", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="structural classification of a network")
    c.add_argument("network")
    c.add_argument("--json", action="store_true")
    c.add_argument("--falsify", type=int, default=0, metavar="N", help="also run N random sweep directions")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("construct", help="build a full unit from a base unit and a scalar polynomial")
    c.add_argument("--base", required=True)
    c.add_argument("--scalar", required=True)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("equiv", help="dynamical equivalence of two systems")
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(func=cmd_equiv)

    c = sub.add_parser("wr-check", help="weakly reversible realizability on Newton-polytope candidates")
    c.add_argument("--field", required=True)
    c.add_argument("--margin", type=int, default=0)
    c.set_defaults(func=cmd_wr_check)

    c = sub.add_parser("simulate", help="integrate a system, CSV trajectory")
    c.add_argument("--system", required=True)
    c.add_argument("--x0", required=True, help="comma-separated positive initial state")
    c.add_argument("--t-end", type=float, default=10.0)
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_simulate)

    c = sub.add_parser("steady-states", help="steady curve and fixed points of a bundled example")
    c.add_argument("--example", required=True)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_steady_states)

    c = sub.add_parser("portrait", help="phase-portrait grid CSV")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--system")
    g.add_argument("--example")
    c.add_argument("--part", choices=["full", "base"], default="full")
    c.add_argument("--box", help="a:b,c:d[,e:f]")
    c.add_argument("--resolution", type=int, default=50)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_portrait)

    c = sub.add_parser("examples", help="list or export bundled examples")
    c.add_argument("action", choices=["list", "export"])
    c.add_argument("name", nargs="?")
    c.add_argument("--part", choices=["full", "base"], default="full")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_examples)

    c = sub.add_parser("dot", help="Graphviz export of a network")
    c.add_argument("network")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (NetworkParseError, PolynomialParseError, UsageError, FileNotFoundError, KeyError) as exc:
        _err(str(exc).strip('"'))
        return EXIT_PARSE
    except UnsupportedDimensionError as exc:
        _err(str(exc))
        return EXIT_DIM
    except InvalidScalarPolynomial as exc:
        _err("invalid scalar polynomial: " + "; ".join(exc.violations))
        return EXIT_SCALAR
    except (NetworkError, OrthantError, MalformedFieldError, CandidateSetError, ValueError) as exc:
        _err(str(exc))
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
