"""Command-line front end.

Every report ends with ``RESULT <command> <status>``. Exit codes: 0 ok,
1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .config_complex import BMComplex, StandardWedgeOracle, TrivialOracle, build_complex
from .heisenberg_core import SurfaceParams, check_relations, parse_word, phi_eval
from .homology_engine import Linearized, bm_homology, parse_specialization
from .mcg_action import render_matrix, twist_matrix, verify_identities
from .ribbon_graph import (
    GraphFormatError,
    RelativeSubgraph,
    RibbonGraph,
    h1_basis,
    parse_graph_text,
    standard_model,
    surface_invariants,
    trace_faces,
    validate_relative,
)

COMMANDS = ("invariants", "cells", "boundary", "homology", "phi", "twist-matrices", "verify")


class UsageError(Exception):
    pass


def _model(text: str) -> tuple[int, int]:
    try:
        g, m = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected g,m, got {text!r}") from None
    if g < 0 or m < 1:
        raise argparse.ArgumentTypeError("need g >= 0 and m >= 1")
    return g, m


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="heisenberg-homology",
        description="Configuration-space homology of ribbon graphs with Heisenberg coefficients.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("graph", nargs="?", type=Path, help="ribbon graph file (interchange format)")
    p.add_argument("--model", type=_model, help="use the built-in standard model g,m instead of a file")
    p.add_argument("--n", type=int, default=2, help="number of points (default 2)")
    p.add_argument("--relative", action="store_true", help="relative complex with respect to A")
    p.add_argument("--coeff", default="trivial", help="trivial | scalar:u=±1,a1=...,b1=... | linearized")
    p.add_argument("--oracle", choices=("auto", "trivial", "wedge"), default="auto",
                   help="deck coefficients: wedge needs a standard model (default: wedge for --model)")
    p.add_argument("--word", help='braid word for phi, e.g. "s1 a1 s1 b1 s1"')
    p.add_argument("--twists", action="store_true", help="verify: only the twist-matrix identities")
    p.add_argument("--relations", action="store_true", help="verify: only the braid-relation check")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _load(args) -> tuple[RibbonGraph, RelativeSubgraph | None, tuple[int, int] | None]:
    if args.model and args.graph:
        raise UsageError("give either a graph file or --model, not both")
    if args.model:
        g, m = args.model
        G, A = standard_model(g, m)
        return G, A, (g, m)
    if not args.graph:
        raise UsageError("a graph file or --model g,m is required")
    try:
        text = args.graph.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
    G, A = parse_graph_text(text)
    if A is not None:
        rep = validate_relative(G, A)
        if not rep.valid:
            where = f" at {rep.location}" if rep.location else ""
            raise GraphFormatError(f"invalid relative subgraph{where}: {rep.message}")
    return G, A, None


def _complex(args, G: RibbonGraph, A: RelativeSubgraph | None, model) -> BMComplex:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.relative and A is None:
        raise UsageError("--relative needs a graph with a relative subgraph")
    use_wedge = args.oracle == "wedge" or (args.oracle == "auto" and model is not None)
    if use_wedge:
        if model is None:
            raise UsageError("the wedge oracle needs --model")
        oracle = StandardWedgeOracle(model[0], model[1], args.n)
    else:
        oracle = TrivialOracle()
    return build_complex(G, args.n, A if args.relative else None, oracle)


def cmd_invariants(args, out: dict) -> int:
    G, A, _ = _load(args)
    inv = surface_invariants(G)
    basis = h1_basis(G)
    out["genus"] = inv.g
    out["boundary_components"] = inv.m
    out["euler_characteristic"] = inv.chi
    out["faces"] = len(trace_faces(G))
    out["h1_rank"] = len(basis.cycle_edges)
    out["h1_cycle_edges"] = list(basis.cycle_edges)
    out["intersection_matrix"] = [list(r) for r in basis.matrix]
    if A is not None:
        rep = validate_relative(G, A)
        out["relative"] = "valid" if rep.valid else f"invalid: {rep.message}"
    return 0


def cmd_cells(args, out: dict) -> int:
    G, A, model = _load(args)
    cx = _complex(args, G, A, model)
    out["cells"] = {str(k): [str(c) for c in cx.cells[k]] for k in sorted(cx.cells)}
    out["counts"] = {str(k): cx.count(k) for k in sorted(cx.cells)}
    out["euler_characteristic"] = cx.euler_characteristic()
    return 0


def cmd_boundary(args, out: dict) -> int:
    G, A, model = _load(args)
    cx = _complex(args, G, A, model)
    out["oracle"] = cx.oracle.name
    mats = {}
    for k in range(1, cx.n + 1):
        mats[str(k)] = {
            "rows": [str(c) for c in cx.cells.get(k - 1, [])],
            "columns": [str(c) for c in cx.cells.get(k, [])],
            "entries": [[str(cx.cells[k - 1][i]), str(cx.cells[k][j]), str(v)]
                        for (i, j), v in sorted(cx.boundary(k).items())],
        }
    out["boundary"] = mats
    out["chain_complex"] = cx.is_chain_complex()
    return 0 if out["chain_complex"] else 1


def cmd_homology(args, out: dict) -> int:
    G, A, model = _load(args)
    spec = parse_specialization(args.coeff)
    cx = _complex(args, G, A, model)
    if isinstance(spec, Linearized) and cx.params is None:
        spec = Linearized(surface_invariants(G).params())
    rep = bm_homology(cx, spec)
    out.update(rep.to_dict())
    out["relative"] = cx.relative
    out["lines"] = rep.lines()
    return 0


def cmd_phi(args, out: dict) -> int:
    if not args.word:
        raise UsageError("phi needs --word")
    g, m = args.model or (1, 1)
    params = SurfaceParams(g, m)
    word = parse_word(args.word)
    needed = max([l.index + 1 for l in word if l.kind == "s"] + [args.n])
    h = phi_eval(word, params, needed)
    out["word"] = args.word
    out["pair"] = h.pair_str()
    out["normal_form"] = str(h)
    return 0


def cmd_twist_matrices(args, out: dict) -> int:
    out["basis"] = ["w(a1)", "w(b1)", "v(a1,b1)"]
    for T in ("a", "b"):
        out[f"M_{T}"] = render_matrix(twist_matrix(T))
    return 0


def cmd_verify(args, out: dict) -> int:
    g, m = args.model or (1, 1)
    checks = []
    if not args.twists:
        for n in sorted({2, 3, args.n}):
            rep = check_relations(SurfaceParams(g, m), n)
            checks.append((f"braid relations g={g} m={m} n={n}", rep.ok))
    if not args.relations:
        for c in verify_identities():
            checks.append((c.name, c.passed))
    out["checks"] = [[name, "PASS" if ok else "FAIL"] for name, ok in checks]
    return 0 if all(ok for _, ok in checks) else 1


HANDLERS = {
    "invariants": cmd_invariants,
    "cells": cmd_cells,
    "boundary": cmd_boundary,
    "homology": cmd_homology,
    "phi": cmd_phi,
    "twist-matrices": cmd_twist_matrices,
    "verify": cmd_verify,
}


def _text(command: str, out: dict) -> list[str]:
    lines: list[str] = []
    if command == "cells":
        for k, cells in out["cells"].items():
            lines.append(f"degree {k}: {out['counts'][k]} cells")
            lines += [f"  {c}" for c in cells]
        lines.append(f"euler characteristic: {out['euler_characteristic']}")
    elif command == "boundary":
        lines.append(f"oracle: {out['oracle']}")
        for k, mat in out["boundary"].items():
            lines.append(f"d_{k}: {len(mat['rows'])} x {len(mat['columns'])}")
            lines += [f"  [{r}, {c}] = {v}" for r, c, v in mat["entries"]]
        lines.append(f"d^2 = 0: {out['chain_complex']}")
    elif command == "homology":
        lines.append(f"coefficients: {out['coefficients']}  n={out['n']}  relative={out['relative']}")
        lines += out["lines"]
    elif command == "twist-matrices":
        lines.append("basis: " + ", ".join(out["basis"]))
        for T in ("a", "b"):
            lines.append(f"M_{T}:")
            lines += [f"  {row}" for row in out[f"M_{T}"]]
    elif command == "verify":
        lines += [f"{status} {name}" for name, status in out["checks"]]
    elif command == "phi":
        lines.append(f"word: {out['word']}")
        lines.append(f"pair: {out['pair']}")
        lines.append(f"normal form: {out['normal_form']}")
    else:
        lines += [f"{k}: {v}" for k, v in out.items()]
    return lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: dict = {}
    try:
        code = HANDLERS[args.command](args, out)
    except (UsageError, GraphFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"RESULT {args.command} error")
        return 2
    if args.format == "json":
        print(json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False))
    else:
        print("\n".join(_text(args.command, out)))
    print(f"RESULT {args.command} {'ok' if code == 0 else 'fail'}")
    return code


if __name__ == "__main__":
    sys.exit(main())
