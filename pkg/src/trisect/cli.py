"""Command-line interface: trisect {validate|invariants|standardize|compare|generate}.

Reports are emitted on stdout, JSON by default (stable key order, so
reruns on identical input are byte-identical) or human-readable with
--format text / TRISECT_FORMAT=text.  Exit codes: 0 success, 1 domain
failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from .diagram import (Diagram, parse_diagram, serialize_diagram,
                      synthesize_diagram, validate)
from .errors import ParseError, TrisectError
from .intlin import IntMatrix
from .invariants import form_invariants, homology, linking_matrix
from .standardize import standardize, torelli_compare

E8_ROWS = [[2, -1, 0, 0, 0, 0, 0, 0],
           [-1, 2, -1, 0, 0, 0, 0, 0],
           [0, -1, 2, -1, 0, 0, 0, 0],
           [0, 0, -1, 2, -1, 0, 0, 0],
           [0, 0, 0, -1, 2, -1, 0, -1],
           [0, 0, 0, 0, -1, 2, -1, 0],
           [0, 0, 0, 0, 0, -1, 2, 0],
           [0, 0, 0, 0, -1, 0, 0, 2]]


def _read_input(path: str) -> tuple[str, dict]:
    if path == "-":
        data = sys.stdin.buffer.read()
        name = "<stdin>"
    else:
        with open(path, "rb") as fh:
            data = fh.read()
        name = path
    meta = {"path": name, "sha256": hashlib.sha256(data).hexdigest()}
    return data.decode("utf-8"), meta


def _load_diagram(path: str) -> tuple[Diagram, dict]:
    text, meta = _read_input(path)
    return parse_diagram(text), meta


def parse_form_spec(spec: str) -> IntMatrix:
    """Named symmetric forms or a literal JSON matrix."""
    spec = spec.strip()
    if spec == "empty":
        return IntMatrix.zeros(0, 0)
    if spec == "e8":
        return IntMatrix(E8_ROWS)
    if spec == "hyperbolic":
        return IntMatrix([[0, 1], [1, 0]])
    if spec.startswith("diag:"):
        entries = [int(x) for x in spec[len("diag:"):].split(",") if x.strip()]
        return IntMatrix.diagonal(entries)
    if spec.startswith("["):
        rows = json.loads(spec)
        return IntMatrix(rows)
    raise ParseError(f"unrecognized form spec {spec!r} "
                     "(try empty, e8, hyperbolic, diag:..., or a JSON matrix)")


def parse_b_spec(spec: str) -> IntMatrix:
    """Monodromy blocks: empty, identity:N, or a literal JSON matrix."""
    spec = spec.strip()
    if spec == "empty":
        return IntMatrix.zeros(0, 0)
    if spec.startswith("identity:"):
        return IntMatrix.identity(int(spec[len("identity:"):]))
    if spec.startswith("["):
        return IntMatrix(json.loads(spec))
    raise ParseError(f"unrecognized b spec {spec!r} "
                     "(try empty, identity:N, or a JSON matrix)")


def _matrix_lines(m: IntMatrix) -> list[str]:
    if m.rows == 0 or m.cols == 0:
        return [f"(empty {m.rows}x{m.cols})"]
    width = max(len(str(x)) for row in m.to_rows() for x in row)
    return ["[ " + "  ".join(str(x).rjust(width) for x in row) + " ]"
            for row in m.to_rows()]


def _render_text(obj, indent: int = 0, lines=None) -> list[str]:
    pad = "  " * indent
    if lines is None:
        lines = []
    if isinstance(obj, dict):
        for key, val in obj.items():
            if isinstance(val, list) and val and all(
                    isinstance(r, list) for r in val):
                lines.append(f"{pad}{key}:")
                for row_line in _matrix_lines(IntMatrix(val)):
                    lines.append(f"{pad}  {row_line}")
            elif isinstance(val, (dict, list)):
                lines.append(f"{pad}{key}:")
                _render_text(val, indent + 1, lines)
            else:
                lines.append(f"{pad}{key}: {val}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                _render_text(val, indent + 1, lines)
            else:
                lines.append(f"{pad}- {val}")
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _emit(report: dict, fmt: str):
    if fmt == "text":
        sys.stdout.write("\n".join(_render_text(report)) + "\n")
    else:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _homology_section(d: Diagram) -> dict:
    hom = homology(d)
    return {
        "by_degree": [
            {"degree": i, "free_rank": free, "torsion": list(tors),
             "group": hom.format_group(i)}
            for i, (free, tors) in enumerate(hom.groups)],
        "b2": hom.b2,
    }


def cmd_validate(args) -> tuple[dict, int]:
    d, meta = _load_diagram(args.input)
    report = validate(d)
    out = {"command": "validate", "input": meta, "report": report.to_dict()}
    return out, 0 if report.verdict else 1


def cmd_invariants(args) -> tuple[dict, int]:
    d, meta = _load_diagram(args.input)
    explicit = args.homology or args.linking or args.form
    out: dict = {"command": "invariants", "input": meta, "results": {},
                 "warnings": []}

    def section(name, flag, compute):
        wanted = flag or not explicit
        if not wanted:
            return True
        try:
            out["results"][name] = compute()
            return True
        except TrisectError as exc:
            if flag:
                out["results"][name] = {"error": str(exc)}
                return False
            out["warnings"].append(f"{name} unavailable: {exc}")
            return True

    ok = section("homology", args.homology, lambda: _homology_section(d))
    ok &= section("linking", args.linking, lambda: (lambda m: {
        "matrix": m.to_lists(), "symmetric": m.is_symmetric()})(linking_matrix(d)))

    def form_section():
        res = standardize(d)
        return {"source": "intersection form recovered by standardization",
                **res.form.to_dict()}

    ok &= section("form", args.form, form_section)
    return out, 0 if ok else 1


def cmd_standardize(args) -> tuple[dict, int]:
    d, meta = _load_diagram(args.input)
    result = standardize(d)
    diagram_text = serialize_diagram(result.standardized)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(diagram_text)
    record_path = args.record or args.output + ".record.json"
    record_doc = {
        "entries": [{"target": t, "matrix": u.to_lists()}
                    for t, u in result.record.entries],
        "composites": {t: result.record.composite(t).to_lists()
                       for t in ("alpha", "beta", "gamma")},
        "checks": result.checks,
    }
    with open(record_path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(record_doc, indent=1, sort_keys=True) + "\n")
    out = {
        "command": "standardize",
        "input": meta,
        "output": args.output,
        "record": record_path,
        "results": {
            "partial": result.partial,
            "b2": result.b2,
            "Q": result.Q.to_lists(),
            "B": result.B.to_lists() if result.B is not None else None,
            "Qtilde": result.Qtilde.to_lists() if result.Qtilde is not None else None,
            "form": result.form.to_dict(),
            "checks": result.checks,
            "identity_record": result.record.is_identity,
        },
    }
    return out, 0


def cmd_compare(args) -> tuple[dict, int]:
    dx, meta_x = _load_diagram(args.x)
    dy, meta_y = _load_diagram(args.y)
    rep = torelli_compare(dx, dy)
    out = {
        "command": "compare",
        "inputs": {"x": meta_x, "y": meta_y},
        "results": {
            "verdict": rep.verdict_text(),
            "equivalent": rep.equivalent,
            "params_equal": rep.params_equal,
            "monodromy_equal": rep.monodromy_equal,
            "form_verdict": rep.form_verdict,
            "form_detail": rep.form_detail,
            "x_form": rep.x_form.to_dict(),
            "y_form": rep.y_form.to_dict(),
            "certificate": (rep.certificate.to_lists()
                            if rep.certificate is not None else None),
        },
    }
    return out, 0


def cmd_generate(args) -> tuple[dict, int]:
    q = parse_form_spec(args.q)
    b_matrix = parse_b_spec(args.b)
    p = args.p
    boundary = args.boundary
    l = 2 * p + boundary - 1
    k = args.k if args.k is not None else l
    d = synthesize_diagram(q, b_matrix, k, p, boundary)
    text = serialize_diagram(d)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    out = {
        "command": "generate",
        "output": args.output,
        "results": {
            "params": {"g": d.params.g, "b": d.params.b, "p": d.params.p,
                       "k": list(d.params.k)},
            "sha256": hashlib.sha256(text.encode()).hexdigest(),
        },
    }
    return out, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisect",
        description="Exact invariants and normal forms of relative "
                    "trisection diagrams")
    parser.add_argument("--format", choices=("json", "text"), default=None,
                        help="report format (default: $TRISECT_FORMAT or json)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="run the homological checks")
    p_val.add_argument("--input", required=True, help="diagram file ('-' for stdin)")
    p_val.set_defaults(handler=cmd_validate)

    p_inv = sub.add_parser("invariants", help="homology, linking, form data")
    p_inv.add_argument("--input", required=True)
    p_inv.add_argument("--homology", action="store_true")
    p_inv.add_argument("--linking", action="store_true")
    p_inv.add_argument("--form", action="store_true")
    p_inv.set_defaults(handler=cmd_invariants)

    p_std = sub.add_parser("standardize", help="drive gamma into normal form")
    p_std.add_argument("--input", required=True)
    p_std.add_argument("--output", required=True,
                       help="path for the standardized diagram")
    p_std.add_argument("--record", default=None,
                       help="path for the transformation record "
                            "(default: OUTPUT.record.json)")
    p_std.set_defaults(handler=cmd_standardize)

    p_cmp = sub.add_parser("compare", help="homological Torelli comparison")
    p_cmp.add_argument("--x", required=True)
    p_cmp.add_argument("--y", required=True)
    p_cmp.set_defaults(handler=cmd_compare)

    p_gen = sub.add_parser("generate", help="synthesize a normal-form diagram")
    p_gen.add_argument("--q", default="empty",
                       help="intersection form block: empty, e8, hyperbolic, "
                            "diag:1,1,-1, or a JSON matrix")
    p_gen.add_argument("--b", default="empty",
                       help="monodromy block: empty, identity:N, or a JSON matrix")
    p_gen.add_argument("--k", type=int, default=None,
                       help="third trisection surplus (default: l)")
    p_gen.add_argument("--p", type=int, default=0, help="page genus")
    p_gen.add_argument("--boundary", type=int, default=1,
                       help="boundary components of the page")
    p_gen.add_argument("--output", required=True)
    p_gen.set_defaults(handler=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format or os.environ.get("TRISECT_FORMAT") or "json"
    try:
        report, code = args.handler(args)
    except (ParseError, OSError, json.JSONDecodeError) as exc:
        _emit({"command": args.command, "error": str(exc),
               "error_kind": type(exc).__name__}, fmt)
        return 2
    except TrisectError as exc:
        _emit({"command": args.command, "error": str(exc),
               "error_kind": type(exc).__name__}, fmt)
        return 1
    _emit(report, fmt)
    return code


if __name__ == "__main__":
    sys.exit(main())
