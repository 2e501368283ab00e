"""Command-line interface: khinv {validate,homology,s,pair,corpus}.

Exit codes: 0 success, 1 invalid input, 2 invariant breach, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffs import ring_from_name
from .complex import DEFAULT_CROSSING_CAP, ResourceLimitError, build_ckh, build_involutive, restrict_variant
from .diagram import DiagramError, InvolutiveDiagram, parse_diagram, validate
from .homology import GradedModule, homology_graded
from .invariants import TowerStructureError, invariant_report, pairing_check

SCHEMA = 1
EXIT_INVALID, EXIT_BREACH, EXIT_CAP = 1, 2, 3


# ---------------------------------------------------------------- rendering

def _cell_parts(free: int, tors: Dict[int, int]) -> List[Tuple[str, int]]:
    """(kind, multiplicity) in display order: towers, then F, then F[H]/(H^k) by k."""
    parts = []
    if free:
        parts.append(("free", free))
    for k in sorted(tors):
        parts.append((k, tors[k]))
    return parts


def _grid(M: GradedModule, bounds=None):
    free = Counter((i, q) for i, q in M.free)
    tors: Dict[Tuple[int, int], Counter] = {}
    for i, q, k in M.torsion:
        tors.setdefault((i, q), Counter())[k] += 1
    keys = set(free) | set(tors)
    if not keys and bounds is None:
        return [], [], {}
    iis = [i for i, _ in keys]
    qs = [q for _, q in keys]
    if bounds is not None:
        iis += [bounds[0], bounds[1]]
        qs += [bounds[2], bounds[3]]
    cols = list(range(min(iis), max(iis) + 1))
    if any(q is None for q in qs):
        rows = [None]
    else:
        rows = list(range(max(qs), min(qs) - 1, -2))
    cells = {key: _cell_parts(free.get(key, 0), dict(tors.get(key, {}))) for key in keys}
    return rows, cols, cells


def _text_cell(parts) -> str:
    sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
    out = []
    for kind, m in parts:
        if kind == "free":
            base = "𝔽[H]"
        elif kind == 1:
            base = "𝔽"
        else:
            base = f"(𝔽[H]/(H{str(kind).translate(sup)}))"
        out.append(base + (str(m).translate(sup) if m > 1 else ""))
    return " ⊕ ".join(out) if out else "."


def _latex_cell(parts) -> str:
    out = []
    for kind, m in parts:
        if kind == "free":
            base = r"\mathbb{F}[H]"
        elif kind == 1:
            base = r"\mathbb{F}"
        else:
            base = rf"\mathbb{{F}}[H]/(H^{kind})"
        if m > 1:
            base = f"({base})^{{{m}}}" if kind not in ("free", 1) else f"{base}^{{{m}}}"
        out.append(base)
    return "$" + (r" \oplus ".join(out) if out else ".") + "$"


def module_to_json(M: GradedModule, invariants: Optional[Dict] = None) -> Dict:
    return {"schema": SCHEMA, "free": [list(x) for x in sorted(M.free, key=_key)],
            "torsion": [list(x) for x in sorted(M.torsion, key=_key)], "invariants": invariants or {}}


def module_from_json(data: Dict) -> GradedModule:
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    return GradedModule([tuple(x) for x in data["free"]], [tuple(x) for x in data["torsion"]])


def _key(t):
    return tuple(-10 ** 9 if v is None else v for v in t)


def shared_bounds(*modules: GradedModule) -> Tuple[int, int, int, int]:
    """(i_min, i_max, q_min, q_max) covering every module, for side-by-side tables."""
    keys = [(i, q) for M in modules for i, q in M.free] + [(i, q) for M in modules for i, q, _ in M.torsion]
    iis, qs = [i for i, _ in keys], [q for _, q in keys]
    return min(iis), max(iis), min(qs), max(qs)


def render_table(M: GradedModule, fmt: str = "text", invariants: Optional[Dict] = None,
                 bounds: Optional[Tuple[int, int, int, int]] = None) -> str:
    """Quantum gradings as rows (descending), homological degrees as columns.

    `bounds` widens the grid to (i_min, i_max, q_min, q_max), as when two tables
    are printed side by side.
    """
    if fmt == "json":
        return json.dumps(module_to_json(M, invariants), indent=1)
    rows, cols, cells = _grid(M, bounds)
    if fmt == "latex":
        if not rows:
            return "\\begin{tabular}{r|l}\n$ $ & $.$ \\\\\n\\end{tabular}"
        lines = [f"\\begin{{tabular}}{{r|{'l' * len(cols)}}}"]
        for q in rows:
            label = "$*$" if q is None else f"${q}$"
            lines.append(label + " & " + " & ".join(_latex_cell(cells.get((i, q), [])) for i in cols) + r" \\")
        lines.append("\\hline")
        lines.append("$ $ & " + " & ".join(f"${i}$" for i in cols) + r" \\")
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if not rows:
        return "."
    body = [[("*" if q is None else str(q))] + [_text_cell(cells.get((i, q), [])) for i in cols] for q in rows]
    head = ["q\\i"] + [str(i) for i in cols]
    widths = [max(len(r[c]) for r in body + [head]) for c in range(len(head))]
    fmt_row = lambda r: (r[0].rjust(widths[0]) + " | " +
                         "  ".join(x.ljust(w) for x, w in zip(r[1:], widths[1:]))).rstrip()
    lines = [fmt_row(r) for r in body]
    lines.append("-" * len(lines[0]))
    lines.append(fmt_row(head))
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def _data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


def load_input(path: str, name: str = "") -> InvolutiveDiagram:
    p = Path(path)
    if not p.exists() and p.parts and p.parts[0] == "data":
        p = _data_dir().joinpath(*p.parts[1:])
    return parse_diagram(p.read_text(), name=name or p.stem)


def _homology_for(D: InvolutiveDiagram, args) -> GradedModule:
    ring = ring_from_name(args.theory)
    mode = args.mode.replace("-", "_")
    if args.involutive:
        C = build_involutive(D, ring, mode, args.variant, args.cap)
    else:
        C = build_ckh(D, ring, args.cap, with_sigma=False)
        if args.variant != "unreduced":
            if D.basepoint is None:
                raise DiagramError("reduced variants need a basepoint")
            C = restrict_variant(C, args.variant)
    return homology_graded(C)


def cmd_validate(args) -> int:
    D = load_input(args.input)
    problems = validate(D)
    for p in problems:
        print(f"invalid: {p}")
    if problems:
        return EXIT_INVALID
    print(f"ok: {D.n} crossings, mode {D.mode}, {D.component_count} component(s), "
          f"writhe {D.writhe}, basepoint {D.basepoint or '-'}")
    return 0


def cmd_homology(args) -> int:
    D = load_input(args.input)
    if args.mode.replace("-", "_") == "sigma_tau" and args.variant != "unreduced":
        raise DiagramError("sigma-tau mode is only defined for the unreduced complex")
    M = _homology_for(D, args)
    print(render_table(M, args.format))
    return 0


def cmd_s(args) -> int:
    D = load_input(args.input)
    rep = invariant_report(D, args.cap)
    if rep.notes:
        for n in rep.notes:
            print(f"breach: {n}", file=sys.stderr)
        return EXIT_BREACH
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "invariants": rep.as_dict()}, indent=1))
    else:
        print(" ".join(f"{k}={getattr(rep, k)}" for k in
                       ("s_lower", "s_upper", "s_classic", "w", "r", "d_lower", "d_upper")))
    return 0


def cmd_pair(args) -> int:
    D = load_input(args.input)
    out = pairing_check(D)
    ok = out["unreduced_ok"] and out.get("reduced_ok", True)
    line = f"r={out['r']} unreduced={out['unreduced']}"
    if "reduced" in out:
        line += f" reduced={out['reduced']}"
    print(line + ("" if ok else "  MISMATCH"))
    return 0 if ok else EXIT_BREACH


def cmd_corpus(args) -> int:
    from .acceptance import run_all
    results = run_all(cap=args.cap, stream=sys.stdout)
    return 0 if all(r.passed or not r.gating for r in results) else EXIT_BREACH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khinv", description="Involutive Khovanov and Bar-Natan homology")
    sub = ap.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CROSSING_CAP, help="crossing-count limit")
    common.add_argument("--format", choices=["text", "json", "latex"], default="text")
    with_input = argparse.ArgumentParser(add_help=False, parents=[common])
    with_input.add_argument("--input", required=True, metavar="PATH")
    sub.add_parser("validate", parents=[with_input], help="check a diagram file")
    h = sub.add_parser("homology", parents=[with_input], help="print a homology table")
    h.add_argument("--theory", choices=["kh", "bn", "bn1"], default="bn")
    h.add_argument("--involutive", action="store_true")
    h.add_argument("--mode", choices=["tau", "sigma-tau"], default="tau")
    h.add_argument("--variant", choices=["unreduced", "reduced", "coreduced"], default="unreduced")
    sub.add_parser("s", parents=[with_input], help="equivariant Rasmussen invariants")
    sub.add_parser("pair", parents=[with_input], help="Lee pairing with the mirror")
    sub.add_parser("corpus", parents=[common], help="run the acceptance checks")
    return ap


COMMANDS = {"validate": cmd_validate, "homology": cmd_homology, "s": cmd_s, "pair": cmd_pair,
            "corpus": cmd_corpus}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ResourceLimitError as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return EXIT_CAP
    except TowerStructureError as err:
        print(f"invariant breach: {err}", file=sys.stderr)
        return EXIT_BREACH
    except (DiagramError, OSError) as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
