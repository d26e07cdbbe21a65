"""``chowbench`` command line: JSON in, JSON out, stable exit codes.

Exit codes: 0 success; 1 unreadable or malformed input, unknown example;
2 trivial action or unmet hypotheses (non-equalized without ``--force``, or
with ``--require-equalized``); 3 a requested square or cross-validation
check failed.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import warnings
from enum import Enum
from fractions import Fraction
from typing import Any

from . import __version__
from .action import ActionInput, NotEqualized, TrivialAction, analyze, equalization_check
from .examples import EXAMPLE_NAMES, example_document
from .fan import Fan
from .polytope import LatticePolytope, hull, normal_fan, slice_at
from .quotient import (QuotientPolytope, build_diagram, centers_report, chow_fiber_polytope,
                       chow_minkowski_polytope, git_quotient, pruning, pruning_at)

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_CHECK = 0, 1, 2, 3

SCHEMA_VERSION = "1"


class InputError(ValueError):
    pass


def _parse_rational(text: Any, where: str) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InputError(f"{where}: expected an integer or 'p/q' string, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse {text!r} as a rational") from None


def _parse_int(text: Any, where: str) -> int:
    q = _parse_rational(text, where)
    if q.denominator != 1:
        raise InputError(f"{where}: expected an integer, got {text!r}")
    return int(q)


def parse_document(doc: Any, nu_override=None) -> tuple[str, list, tuple[int, ...]]:
    """Validate a PolytopeDocument; returns (name, vertices, nu)."""
    if not isinstance(doc, dict):
        raise InputError("document: expected a JSON object")
    for key in ("ambient_dim", "vertices"):
        if key not in doc:
            raise InputError(f"document: missing field {key!r}")
    dim = _parse_int(doc["ambient_dim"], "ambient_dim")
    rows = doc["vertices"]
    if not isinstance(rows, list) or not rows:
        raise InputError("vertices: expected a nonempty list")
    verts = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"vertices[{i}]: expected {dim} entries")
        verts.append(tuple(_parse_rational(x, f"vertices[{i}][{c}]") for c, x in enumerate(row)))
    if nu_override is not None:
        nu = nu_override
    else:
        if "nu" not in doc:
            raise InputError("document: missing field 'nu' (or pass --nu)")
        if not isinstance(doc["nu"], list):
            raise InputError("nu: expected a list")
        nu = tuple(_parse_int(x, f"nu[{c}]") for c, x in enumerate(doc["nu"]))
    if len(nu) != dim:
        raise InputError(f"nu: expected {dim} entries, got {len(nu)}")
    return str(doc.get("name", "")), verts, tuple(nu)


def _parse_nu_flag(text: str | None):
    if text is None:
        return None
    return tuple(_parse_int(x, f"--nu[{i}]") for i, x in enumerate(text.split(",")))


def to_json(obj: Any) -> Any:
    """Plain JSON tree: rationals as strings, tuples as lists, keys sorted on dump."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, LatticePolytope):
        return polytope_json(obj)
    if isinstance(obj, Fan):
        return fan_json(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_json(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_json(x) for x in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    return str(obj)


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def polytope_json(P: LatticePolytope) -> dict:
    return {
        "lattice": P.lattice_tag,
        "dim": P.intrinsic_dim,
        "ambient_dim": P.ambient_dim,
        "vertices": [[str(x) for x in v] for v in P.vertices],
        "f_vector": list(P.f_vector()),
        "facets": [{"normal": list(h), "offset": str(b)} for h, b in P.facets],
    }


def fan_json(F: Fan) -> dict:
    return {"lattice_dim": F.lattice_dim, "rays": [list(r) for r in F.rays],
            "cones": [list(c) for c in F.cones]}


def dumps(obj: Any) -> str:
    return json.dumps(to_json(obj), sort_keys=True, indent=2) + "\n"


def _read(path: str) -> Any:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _write(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_input(args) -> tuple[str, ActionInput]:
    name, verts, nu = parse_document(_read(args.file), _parse_nu_flag(args.nu))
    try:
        P = hull(verts)
    except ValueError as exc:
        raise InputError(f"vertices: {exc}") from None
    if not P.is_full_dimensional:
        raise InputError(f"vertices: polytope has dim {P.intrinsic_dim} "
                         f"in ambient dimension {P.ambient_dim}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inp = ActionInput(P, nu)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return name, inp


def _analysis_json(inp: ActionInput) -> dict:
    out = to_json(analyze(inp))
    out["offending_edges"] = [{"edge": list(e.vertices), "direction": list(e.direction),
                               "isotropy_order": order}
                              for e, order in equalization_check(inp)[1]]
    out["model"] = "combinatorial model"
    return out


def cmd_analyze(args) -> int:
    name, inp = _load_input(args)
    report = {"schema_version": SCHEMA_VERSION, "name": name, "action_analysis": _analysis_json(inp)}
    _write(args, dumps(report))
    if args.require_equalized and not report["action_analysis"]["equalized"]:
        print("error: NotEqualized: action has edges with nontrivial isotropy", file=sys.stderr)
        return EXIT_HYPOTHESIS
    return EXIT_OK


def _node_json(node, emit: bool) -> dict:
    P = node.polytope
    out = {"role": node.role, "dim": P.intrinsic_dim, "num_vertices": len(P.vertices),
           "f_vector": list(P.f_vector()), "smooth": node.smooth,
           "singular_cones": [[list(r) for r in c] for c in node.singular_cones]}
    if emit:
        out["polytope"] = polytope_json(P)
        out["fan"] = fan_json(node.fan) if node.fan is not None else None
    return out


def cmd_diagram(args) -> int:
    name, inp = _load_input(args)
    ok, bad = equalization_check(inp)
    if not ok and not args.force:
        detail = "; ".join(f"edge {e.vertices} direction {e.direction} order {o}" for e, o in bad)
        print(f"error: NotEqualized: refusing to build the diagram ({detail}); "
              "pass --force for raw data", file=sys.stderr)
        return EXIT_HYPOTHESIS
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        D = build_diagram(inp, force=args.force, check_squares=args.check_squares,
                          cross_validate=args.cross_validate)
    centers = centers_report(D)
    edges = []
    for e in D.edges:
        cls = e.classification
        edges.append({
            "label": e.label, "source": list(e.source), "target": list(e.target),
            "classification": cls.kind.value if cls else None,
            "reason": cls.reason if cls else e.diagnostic,
            "centers": [{"cone": [list(r) for r in c.cone], "ray": list(c.ray),
                         "cone_dim": c.cone_dim, "stratum_dim": c.stratum_dim, "group": c.group}
                        for c in centers[(e.source, e.target)]],
        })
    report = {
        "schema_version": SCHEMA_VERSION,
        "name": name,
        "equalized": ok,
        "action_analysis": _analysis_json(inp),
        "r": D.r,
        "nodes": {_key(k): _node_json(n, args.emit_polytopes) for k, n in sorted(D.nodes.items())},
        "edges": edges,
        "squares": {_key(k): v for k, v in sorted(D.squares.items())},
        "cross_validation": {_key(k): v for k, v in sorted(D.cross_validation.items())},
        "top_identification": D.top_identification,
        "bottom_row": {_key(k): v for k, v in sorted(D.bottom_row.items())},
    }
    _write(args, dumps(report))
    failed = not all(D.squares.values()) or not all(D.cross_validation.values())
    return EXIT_CHECK if failed else EXIT_OK


def cmd_example(args) -> int:
    if args.name not in EXAMPLE_NAMES:
        print(f"error: unknown example {args.name!r}; choose from {', '.join(EXAMPLE_NAMES)}",
              file=sys.stderr)
        return EXIT_INPUT
    try:
        doc = example_document(args.name, args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    nu = _parse_nu_flag(args.nu)
    if nu is not None:
        doc["nu"] = [str(x) for x in nu]
    _write(args, dumps(doc))
    return EXIT_OK


def _quotient_json(q, **extra) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "polytope": polytope_json(q.polytope),
           "fan": fan_json(q.fan) if q.fan is not None else None}
    out.update(extra)
    return out


def cmd_slice(args) -> int:
    _, inp = _load_input(args)
    if args.at is not None:
        t = _parse_rational(args.at, "--at")
        P = slice_at(inp.polytope, inp.nu, inp.level(t))
        q = QuotientPolytope(P, normal_fan(P) if P.is_full_dimensional else None)
        _write(args, dumps(_quotient_json(q, level=t)))
        return EXIT_OK
    j = args.i if args.j is None else args.j
    q = git_quotient(inp, args.i, j)
    _write(args, dumps(_quotient_json(q, node=[args.i, j])))
    return EXIT_OK


def cmd_prune(args) -> int:
    _, inp = _load_input(args)
    if args.tau is not None:
        lo, hi = (_parse_rational(x, "--tau") for x in args.tau.split(","))
        P = pruning_at(inp, lo, hi)
    else:
        P = pruning(inp, args.i, args.j)
    _write(args, dumps({"schema_version": SCHEMA_VERSION, "polytope": polytope_json(P)}))
    return EXIT_OK


def cmd_chow(args) -> int:
    _, inp = _load_input(args)
    r = len(inp.critical_values) - 1
    i = 0 if args.i is None else args.i
    j = r if args.j is None else args.j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fib = chow_fiber_polytope(inp, i, j)
    out = {"fiber": _quotient_json(fib), "node": [i, j]}
    code = EXIT_OK
    if args.cross_validate or args.route == "minkowski":
        mink = chow_minkowski_polytope(inp, i, j)
        out["minkowski"] = _quotient_json(mink)
        out["routes_agree"] = fib.fan == mink.fan
        if args.cross_validate and not out["routes_agree"]:
            code = EXIT_CHECK
    out["schema_version"] = SCHEMA_VERSION
    _write(args, dumps(out))
    return code


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1), not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chowbench", description="GIT and Chow quotients of "
                                "toric varieties under a one-parameter subgroup.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, needs_file=True):
        if needs_file:
            sp.add_argument("file", help="PolytopeDocument JSON path, or - for stdin")
        sp.add_argument("--nu", help="override the document's nu, e.g. 1,1,0")
        sp.add_argument("--out", help="write JSON here instead of stdout")

    sp = sub.add_parser("analyze", help="weights, fixed faces, BB closures, hypotheses")
    common(sp)
    sp.add_argument("--require-equalized", action="store_true")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("diagram", help="full quotient diagram")
    common(sp)
    sp.add_argument("--force", action="store_true", help="build even if not equalized")
    sp.add_argument("--emit-polytopes", action="store_true")
    sp.add_argument("--check-squares", action="store_true")
    sp.add_argument("--cross-validate", action="store_true")
    sp.set_defaults(func=cmd_diagram)

    sp = sub.add_parser("example", help="emit a built-in PolytopeDocument")
    sp.add_argument("name", help=", ".join(EXAMPLE_NAMES))
    sp.add_argument("--n", type=int, default=3, help="cube dimension")
    common(sp, needs_file=False)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("slice", help="GIT quotient at a wall, a chamber or a level")
    common(sp)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--j", type=int)
    sp.add_argument("--at", help="normalized level, overrides --i/--j")
    sp.set_defaults(func=cmd_slice)

    sp = sub.add_parser("prune", help="pruning polytope of chamber (i, j)")
    common(sp)
    sp.add_argument("--i", type=int, default=0)
    sp.add_argument("--j", type=int, default=1)
    sp.add_argument("--tau", help="explicit normalized levels 'lo,hi'")
    sp.set_defaults(func=cmd_prune)

    sp = sub.add_parser("chow", help="Chow-quotient polytope of chamber (i, j)")
    common(sp)
    sp.add_argument("--i", type=int)
    sp.add_argument("--j", type=int)
    sp.add_argument("--route", choices=("fiber", "minkowski"), default="fiber")
    sp.add_argument("--cross-validate", action="store_true")
    sp.set_defaults(func=cmd_chow)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TrivialAction as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except NotEqualized as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (IndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
