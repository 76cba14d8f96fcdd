"""Command-line front end.

Exit codes: 0 success, 2 bad parameters, 3 instance too large to enumerate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import tables
from .bounds import bound_report
from .code_builder import build_code, max_l_positive
from .curves import FAMILIES, empirical_y_degrees, evaluation_set, family_spec, point_count_check
from .distance import WitnessSpec, certify_distance
from .errors import LrcError, LTooLarge
from .gf import make_field, trace_kernel_basis
from .recovery import build_recovery_index, recover_multi


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def _t_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


# ---------------------------------------------------------------------------
# output helpers

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def _render(data, fmt: str) -> str:
    rows = data if isinstance(data, list) else None
    if fmt == "json":
        return json.dumps(data, indent=2, default=_jsonable) + "\n"
    if fmt == "csv":
        if rows is None:
            rows = [{"key": k, "value": json.dumps(v, default=_jsonable)} for k, v in data.items()]
        return _rows_to_csv(rows)
    if rows is not None:
        if not rows:
            return ""
        cols = list(rows[0])
        widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)) for r in rows]
        return "\n".join(lines) + "\n"
    return "".join(
        f"{k}: {json.dumps(v, default=_jsonable) if isinstance(v, (dict, list)) else v}\n"
        for k, v in data.items()
    )


def _emit(args, data, name: str) -> None:
    text = _render(data, args.format)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        ext = {"json": "json", "csv": "csv", "pretty": "txt"}[args.format]
        (out / f"{name}.{ext}").write_text(text)
    sys.stdout.write(text)


def _write(args, filename: str, text: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / filename).write_text(text)


# ---------------------------------------------------------------------------
# subcommands

def _spec(args):
    kernel = args.kernel.split(",") if getattr(args, "kernel", None) else None
    modulus = _int_list(args.modulus) if getattr(args, "modulus", None) else None
    return family_spec(args.family, args.p, args.h, args.t, kernel=kernel, modulus=modulus)


def cmd_field(args) -> int:
    field = make_field(args.p, args.degree, _int_list(args.modulus) if args.modulus else None)
    info = {
        "p": field.p,
        "degree": field.degree,
        "order": field.order,
        "modulus": list(field.modulus),
        "generator": field.format(field.generator),
    }
    if field.degree % 2 == 0:
        info["trace_kernel_basis"] = [field.format(a) for a in trace_kernel_basis(field)]
    if args.list:
        rows = []
        for x in range(field.order):
            row = {"enc": x, "element": field.format(x)}
            if field.degree % 2 == 0:
                row.update(rel_trace=field.rel_trace(x), rel_norm=field.rel_norm(x))
            rows.append(row)
        _emit(args, rows, "field")
    else:
        _emit(args, info, "field")
    return 0


def cmd_curve(args) -> int:
    spec = _spec(args)
    es = evaluation_set(spec)
    pc = point_count_check(spec)
    info = {
        "family": spec.family,
        "field": spec.field.to_json(),
        "factors": [f.to_json() for f in spec.factors],
        "map_degrees": list(spec.map_degrees),
        "d_g": spec.d_g,
        "y_degrees": list(spec.y_degrees),
        "empirical_y_degrees": list(empirical_y_degrees(es)[1:]),
        "split_count": len(es.S),
        "omega": es.omega.tolist(),
        "n": es.n,
        "affine_points_expected": pc.affine_expected,
        "affine_points_enumerated": pc.affine_enumerated,
        "points_total": pc.total,
    }
    _write(args, "points.csv", es.to_csv())
    _emit(args, info, "curve")
    return 0


def _checked_l(spec, l: int) -> int:
    top = max_l_positive(spec)
    if l < 0 or l > top:
        raise LTooLarge(f"l={l} outside 0..{top} (largest l with a positive distance bound)")
    return l


def cmd_build(args) -> int:
    spec = _spec(args)
    code = build_code(spec, _checked_l(spec, args.l))
    meta = code.to_json()
    _write(args, "generator.csv", code.generator_csv())
    index = build_recovery_index(code)
    _write(
        args,
        "recovery.json",
        json.dumps(
            {f"axis_{j + 1}": o.tolist() for j, o in enumerate(index.others)}, indent=1
        ) + "\n",
    )
    _emit(args, meta, "metadata")
    return 0


def _read_word(path: str, field) -> tuple[np.ndarray, np.ndarray]:
    tokens = [tok.strip() for tok in Path(path).read_text().replace("\n", ",").split(",")]
    tokens = [tok for tok in tokens if tok]
    present = np.array([tok != "?" for tok in tokens], dtype=bool)
    word = np.array([0 if tok == "?" else field.parse(tok) for tok in tokens], dtype=np.int64)
    return word, present


def cmd_recover(args) -> int:
    spec = _spec(args)
    code = build_code(spec, _checked_l(spec, args.l))
    index = build_recovery_index(code)
    rng = np.random.default_rng(args.seed)
    if args.word:
        word, present = _read_word(args.word, code.field)
        original = None
    else:
        original = code.encode(code.random_messages(1, rng)[0])
        present = np.ones(code.n, dtype=bool)
        present[rng.choice(code.n, size=args.erase, replace=False)] = False
        word = np.where(present, original, 0)
    report = recover_multi(index, word, present)
    out = report.to_json()
    if original is not None:
        out["matches_original"] = bool(np.array_equal(report.word, original))
    _write(args, "repaired.csv", ",".join(str(v) for v in report.word.tolist()) + "\n")
    _emit(args, out, "recovery_report")
    return 0


def cmd_certify(args) -> int:
    spec = _spec(args)
    code = build_code(spec, _checked_l(spec, args.l))
    witness = None
    if args.witness:
        witness = WitnessSpec.from_json(json.loads(Path(args.witness).read_text()))
    cert = certify_distance(
        code,
        witness=witness,
        search_iterations=args.search,
        rng=np.random.default_rng(args.seed),
        jobs=args.jobs,
    )
    out = {"n": code.n, "k": code.k, "l": code.params.l, **cert.to_json()}
    _emit(args, out, "certificate")
    return 0


def cmd_bounds(args) -> int:
    rep = bound_report(args.n, args.k, _int_list(args.r), args.d)
    _emit(args, rep.to_json(), "bounds")
    return 0


def cmd_table(args) -> int:
    rows = [r.values for r in tables.table(args.id, args.mode)]
    _emit(args, rows, f"table_{args.id}")
    return 0


def cmd_figure_data(args) -> int:
    pts = tables.figure_data(args.p, _t_range(args.t), args.l_policy, args.h)
    _emit(args, [p.to_row() for p in pts], f"figure_p{args.p}")
    return 0


# ---------------------------------------------------------------------------
# parser

def _family_args(sp: argparse.ArgumentParser, with_l: bool = True) -> None:
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--h", type=int, required=True, help="q = p^h; the field is F_{q^2}")
    sp.add_argument("--t", type=int, default=None, help="number of factors (as family)")
    sp.add_argument("--kernel", help="comma-separated trace-kernel elements (as family)")
    sp.add_argument("--modulus", help="comma-separated modulus coefficients, low degree first")
    if with_l:
        sp.add_argument("--l", type=int, default=0, help="maximum y0-degree")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "pretty"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="directory for output files")

    parser = argparse.ArgumentParser(
        prog="fiberlrc",
        description="Locally recoverable codes from fiber products of curves.",
        parents=[common],
    )
    parser.set_defaults(format="pretty", seed=0, jobs=os.cpu_count() or 1, out=None)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", parents=[common], help="describe a finite field")
    sp.add_argument("p", type=int)
    sp.add_argument("degree", type=int)
    sp.add_argument("--modulus")
    sp.add_argument("--list", action="store_true", help="list every element")
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("curve", parents=[common], help="enumerate a fiber product")
    _family_args(sp, with_l=False)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("build", parents=[common], help="build a code")
    _family_args(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("recover", parents=[common], help="repair erasures")
    _family_args(sp)
    sp.add_argument("--word", help="codeword CSV with '?' marking erasures")
    sp.add_argument("--erase", type=int, default=1, help="random erasures in demo mode")
    sp.set_defaults(func=cmd_recover)

    sp = sub.add_parser("certify", parents=[common], help="certify the minimum distance")
    _family_args(sp)
    sp.add_argument("--witness", help="witness JSON {F0: [...], F: [[...], ...]}")
    sp.add_argument("--search", type=int, default=0, help="randomized search iterations")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("bounds", parents=[common], help="distance and rate bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--r", required=True, help="comma-separated localities")
    sp.add_argument("--d", type=int, default=None, help="known distance, for the defect")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("table", parents=[common], help="parameter tables")
    sp.add_argument("id", help=f"one of {', '.join(tables.TABLES)}")
    sp.add_argument("--mode", choices=tables.MODES, default="closed_form")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("figure-data", parents=[common], help="rate curves as CSV")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--t", default="2..10", help="t or lo..hi")
    sp.add_argument("--h", type=int, default=None, help="fixed h (default h = t)")
    sp.add_argument("--l-policy", choices=("max_rate", "zero"), default="max_rate")
    sp.set_defaults(func=cmd_figure_data)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LrcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
