"""Command-line front end.

Every subcommand prints one JSON report on standard output.  Exit status is
0 when all requested checks pass, 1 on a failed check or a domain error, and
2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .drawing import (
    Drawing,
    DrawingError,
    is_three_connected,
    parse_drawing,
    serialize,
    validate,
)
from .generators import FAMILIES, GeneratorError, canonical_family, family
from .matching import THEOREM_CLASSES, MatchingError, check_theorem_bound, max_matching, verify_witness
from .patches import (
    PatchError,
    build_gamma_s,
    check_weight_lower_bounds,
    compute_weights,
    covering_checks,
    decompose_patches,
    deficiency_bound,
    parse_alpha,
    small_patch_shape,
)
from .saturation import SaturationError, check_saturation, triangulate_with_log

DOMAIN_ERRORS = (DrawingError, GeneratorError, SaturationError, MatchingError, PatchError, OSError)
REQUIREMENTS = ("n1", "n2", "n3", "simple", "triangulated", "three_connected")


def _frac(x: Fraction) -> str:
    return str(x)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _alpha(text: str) -> Fraction:
    try:
        return parse_alpha(text)
    except PatchError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _chi(text: str) -> bool | str:
    low = text.lower()
    if low == "auto":
        return "auto"
    if low in ("1", "true", "yes"):
        return True
    if low in ("0", "false", "no"):
        return False
    raise argparse.ArgumentTypeError("expected auto, true or false")


def _family(text: str) -> str:
    try:
        return canonical_family(text)
    except GeneratorError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _load(path: str) -> Drawing:
    return parse_drawing(Path(path).read_text())


def _write(path: str, text: str) -> None:
    Path(path).write_text(text)


def meta_path(drawing_path: str) -> str:
    return drawing_path + ".meta"


def _diagnostics(d: Drawing) -> dict:
    diag = validate(d)
    return {
        "n": d.n,
        "edges": len(d.edges),
        "crossings": len(d.crossings),
        "cells": len(d.cells),
        "n1": diag.n1,
        "n2": diag.n2,
        "n3": diag.n3,
        "simple": diag.simple,
        "triangulated": diag.triangulated,
        "loops": list(diag.loops),
        "parallel_classes": [list(c) for c in diag.parallel_classes],
        "non_triangular_cells": list(diag.non_triangular_cells),
    }


# -- subcommands -------------------------------------------------------------


def cmd_generate(args: argparse.Namespace) -> tuple[dict, bool]:
    inst = family(args.family, args.s)
    meta = inst.metadata()
    _write(args.out, serialize(inst.drawing))
    _write(meta_path(args.out), json.dumps(meta, indent=2, sort_keys=True) + "\n")
    report = dict(meta)
    report.update(n=inst.drawing.n, out=args.out, meta=meta_path(args.out))
    return report, True


def cmd_validate(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    report = {"diagnostics": _diagnostics(d)}
    flags = dict(report["diagnostics"])
    if "three_connected" in args.require:
        flags["three_connected"] = d.n >= 4 and is_three_connected(d)
        report["three_connected"] = flags["three_connected"]
    failed = [r for r in args.require if not flags[r]]
    report["required"] = list(args.require)
    report["failed"] = failed
    return report, not failed


def cmd_triangulate(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    res = triangulate_with_log(d)
    if args.out:
        _write(args.out, serialize(res.drawing))
    return {
        "added_edges": list(res.added),
        "n3": res.n3,
        "cells": len(res.drawing.cells),
        "out": args.out,
    }, True


def cmd_check(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    rep = check_saturation(d)
    verdict = rep.simple_saturated if args.mode == "simple" else rep.proper_cell_saturated
    return {
        "mode": args.mode,
        "s1": rep.s1,
        "s2": rep.s2,
        "s3": rep.s3,
        "s4": rep.s4,
        "simple": rep.simple,
        "simple_saturated": rep.simple_saturated,
        "proper_cell": rep.proper_cell,
        "proper_cell_saturated": rep.proper_cell_saturated,
        "insertable": [[i.u, i.v, i.mode, i.where] for i in rep.insertable],
        "saturated": verdict,
    }, verdict


def cmd_patches(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    if args.triangulate:
        d = triangulate_with_log(d).drawing
    p = decompose_patches(build_gamma_s(d, args.set))
    cover = covering_checks(p)
    w = compute_weights(p, args.alpha, args.chi_n3)
    report: dict = {
        "S": sorted(p.gamma.S),
        "retained_edges": list(p.gamma.retained),
        "deletions": {str(e): step for e, step in sorted(p.gamma.deletions.items())},
        "comp": p.comp,
        "odd": p.odd,
        "census": p.census(),
        "cover": {"ok": cover.ok, "violations": list(cover.violations)},
        "weights": {
            "alpha": _frac(w.alpha),
            "chi_n3": w.chi_n3,
            "total_w0": w.total_w0,
            "total_w_alpha": _frac(w.total_w_alpha),
            "four_n_minus_8": 4 * d.n - 8,
            "transfer_edges": list(w.transfer_edges),
            "t_cross": list(w.t_cross),
            "t_nabla": list(w.t_nabla),
            "t_circ": list(w.t_circ),
        },
        "patches": [
            {
                "id": pt.id,
                "kind": pt.kind,
                "class": pt.cls,
                "degree": pt.degree,
                "cells": list(pt.cells),
                "Z": list(pt.Z),
                "shape": small_patch_shape(pt) if pt.is_face else None,
                "w0": w.patch_w0[pt.id],
                "w_alpha": _frac(w.patch_w_alpha[pt.id]),
            }
            for pt in p.patches
        ],
    }
    ok = cover.ok
    if p.comp >= 2:
        violations = check_weight_lower_bounds(w)
        b = deficiency_bound(p)
        report["bounds"] = {
            "towards": _frac(b.towards),
            "corollary": _frac(b.corollary),
            "corollary_3conn": _frac(b.corollary_3conn),
            "comp_minus_s": b.comp_minus_s,
            "violations": [
                {"patch": v.patch, "row": v.row, "value": _frac(v.value), "bound": _frac(v.bound)}
                for v in violations
            ],
        }
        ok = ok and not violations and b.towards >= b.comp_minus_s
    else:
        report["bounds"] = None
    return report, ok


def cmd_match(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    cert = max_matching(d)
    report: dict = {
        "n": d.n,
        "mu": cert.mu,
        "matching": [list(e) for e in cert.matching],
        "deficiency": d.n - 2 * cert.mu,
        "unmatched": list(cert.unmatched),
    }
    witness = args.witness
    if args.witness_from_meta:
        meta = json.loads(Path(meta_path(args.drawing)).read_text())
        witness = meta["witness"]
        report["expected_mu"] = meta.get("expected_mu")
    ok = True
    if witness is not None:
        chk = verify_witness(d, witness)
        report["witness"] = {"S": sorted(set(witness)), "value": chk.value, "tight": chk.tight}
        ok = chk.tight
    if report.get("expected_mu") is not None:
        ok = ok and report["expected_mu"] == cert.mu
    return report, ok


def cmd_bound(args: argparse.Namespace) -> tuple[dict, bool]:
    d = _load(args.drawing)
    rep = check_theorem_bound(d, args.cls, args.min_n)
    return {
        "class": rep.cls,
        "n": rep.n,
        "mu": rep.mu,
        "bound": _frac(rep.bound),
        "passed": rep.passed,
        "tight": rep.tight,
    }, rep.passed


def cmd_verify(args: argparse.Namespace) -> tuple[dict, bool]:
    from .acceptance import run_suite

    results = run_suite(seed=args.seed, only=args.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    return {
        "suite": args.suite,
        "seed": args.seed,
        "criteria": [
            {"number": r.number, "title": r.title, "passed": r.passed, "checked": r.checked, "failures": r.failures}
            for r in results
        ],
    }, all(r.passed for r in results)


def export_dot(d: Drawing) -> str:
    """Graph-description text of the planarization; crossings become point nodes."""
    lines = ["graph planarization {"]
    for v in range(d.n):
        lines.append(f'  v{v} [label="{v}"];')
    for c, _, _ in d.crossings:
        lines.append(f"  x{c} [shape=point];")
    for e, u, v in d.edges:
        if d.is_crossed(e):
            x = f"x{d.crossing_of[e]}"
            lines.append(f'  v{u} -- {x} [label="{e}"];')
            lines.append(f'  {x} -- v{v} [label="{e}"];')
        else:
            lines.append(f'  v{u} -- v{v} [label="{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_export_dot(args: argparse.Namespace) -> tuple[dict, bool]:
    text = export_dot(_load(args.drawing))
    if args.out:
        _write(args.out, text)
        return {"out": args.out}, True
    return {"dot": text}, True


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onepmatch", description="Matchings in 1-planar drawings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a family instance and its metadata sidecar")
    p.add_argument("--family", required=True, type=_family, help="one of " + ", ".join(FAMILIES))
    p.add_argument("--s", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("validate", help="parse a drawing and report its flags")
    p.add_argument("--drawing", required=True)
    p.add_argument("--require", default=[], type=lambda t: [x for x in t.split(",") if x])
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("triangulate", help="add parallel copies until every cell is a triangle")
    p.add_argument("--drawing", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_triangulate)

    p = sub.add_parser("check", help="saturation report")
    p.add_argument("--drawing", required=True)
    p.add_argument("--mode", choices=("simple", "proper"), default="simple")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("patches", help="patch decomposition, weights and bounds for a set S")
    p.add_argument("--drawing", required=True)
    p.add_argument("--set", required=True, type=_int_list)
    p.add_argument("--alpha", type=_alpha, default=Fraction(0))
    p.add_argument("--chi-n3", type=_chi, default="auto")
    p.add_argument("--triangulate", action="store_true", help="triangulate the input first")
    p.set_defaults(func=cmd_patches)

    p = sub.add_parser("match", help="maximum matching and witness tightness")
    p.add_argument("--drawing", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--witness", type=_int_list)
    g.add_argument("--witness-from-meta", action="store_true")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("bound", help="compare mu with a theorem class bound")
    p.add_argument("--drawing", required=True)
    p.add_argument("--class", dest="cls", required=True, choices=sorted(THEOREM_CLASSES))
    p.add_argument("--min-n", type=int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=("acceptance",), default="acceptance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", type=_int_list)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="graph-description export of the planarization")
    p.add_argument("--drawing", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[dict | None, int]:
    """Parse and execute; returns the report and the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0)
    if args.command == "validate":
        unknown = [r for r in args.require if r not in REQUIREMENTS]
        if unknown:
            print(f"onepmatch: error: unknown requirement {unknown[0]!r}", file=sys.stderr)
            return None, 2
    try:
        body, ok = args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"onepmatch: error: {exc}", file=sys.stderr)
        return {"command": args.command, "ok": False, "error": str(exc)}, 1
    report = {"command": args.command, "ok": ok}
    report.update(body)
    return report, 0 if ok else 1


def main(argv: Sequence[str] | None = None) -> int:
    report, status = run(argv)
    if report is not None:
        print(json.dumps(report, indent=2, sort_keys=False))
    return status


if __name__ == "__main__":
    sys.exit(main())
