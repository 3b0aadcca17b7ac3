"""Command line interface.

``polyaug check --check NAME [--param k=v ...]`` runs registered checks and
emits machine-readable reports (exit code 0 iff every verdict is pass or
within-caps).  Further subcommands expose the underlying computations:
graded-rank comparisons (``gamma``, ``dset``), finite-monoid filtrations
(``monoid``), per-cell ideal comparisons (``ideal``, ``gamma-finite``,
``annihilator``), module degrees (``degree``) and the series model
(``embed``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import checks, finmonoid, gradeds
from .fields import parse_field
from .freegroup import parse_word
from .lawvere import (annihilator_cell, degree_ideal_cell, gamma_membership,
                      get_theory, ideal_equality_check, module_poly_degree,
                      constant_module, tautological_module,
                      tensor_square_module, representable_quotient_module,
                      direct_sum_modules, spans_equal_cells)
from .lawvere.theory import mod_reduction_map
from .magnus import GroupModel, magnus_embed

SCHEMA = "polyaug-report/1"


def emit_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True, default=str)
    if fmt == "text":
        return _as_text(report)
    if fmt == "csv":
        return _as_csv(report)
    raise ValueError(f"unknown format {fmt!r}")


def _flatten_rows(report: dict):
    ev = report.get("evidence", report)
    for key in ("rows", "table", "perDegree", "cells", "runs", "reports"):
        if isinstance(ev, dict) and key in ev:
            rows = ev[key]
            if rows and isinstance(rows[0], dict):
                return rows
    return None


def _as_text(report: dict) -> str:
    lines = []
    head = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
    lines.append(" ".join(f"{k}={v}" for k, v in head.items()))
    rows = _flatten_rows(report)
    if rows:
        for r in rows:
            lines.append("  " + " ".join(f"{k}={v}" for k, v in r.items()))
    return "\n".join(lines)


def _as_csv(report: dict) -> str:
    rows = _flatten_rows(report)
    buf = io.StringIO()
    if not rows:
        w = csv.writer(buf)
        for k, v in report.items():
            if not isinstance(v, (dict, list)):
                w.writerow([k, v])
        return buf.getvalue()
    keys = list(dict.fromkeys(k for r in rows for k in r))
    w = csv.DictWriter(buf, fieldnames=keys)
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in keys})
    return buf.getvalue()


def _parse_caps(text: str) -> dict:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 3:
        raise ValueError("caps must be n,m,D")
    return {"n_max": parts[0], "m_max": parts[1], "D": parts[2]}


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"bad --param {item!r}, expected k=v")
        k, v = item.split("=", 1)
        out[k] = v
    return out


def _class_arg(text: str):
    return None if text in ("inf", "none", "None") else int(text)


def cmd_check(args) -> int:
    reports = []
    exit_ok = True
    shown_params = _parse_params(args.param)
    params = dict(shown_params)
    if args.field:
        params["field"] = parse_field(args.field)
        shown_params["field"] = args.field
    if args.caps:
        caps = _parse_caps(args.caps)
        params.update(caps)
        shown_params["caps"] = args.caps
    for name in args.check:
        started = time.perf_counter()
        try:
            result = checks.run_check(name, params)
        except KeyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        ms = int(1000 * (time.perf_counter() - started))
        report = {"schema": SCHEMA, "check": name, "params": shown_params,
                  "verdict": result["verdict"], "evidence": result["evidence"],
                  "ms": ms}
        reports.append(report)
        exit_ok &= result["verdict"] in ("pass", "within-caps")
    for rep in reports:
        print(emit_report(rep, args.format))
    return 0 if exit_ok else 1


def cmd_gamma(args) -> int:
    params = {"c0": _class_arg(args.c0)}
    if args.setting in ("nilpotent", "dim"):
        params["c1"] = _class_arg(args.c1) if args.c1 else None
    if args.setting in ("dim", "nil-to-dim"):
        params["p"] = args.p
    rep = gradeds.gamma_interval(args.setting, params, _parse_caps(args.caps))
    print(emit_report(rep, args.format))
    return 0


def cmd_dset(args) -> int:
    params = {"c": _class_arg(args.c)}
    if args.setting == "dim":
        params["p"] = args.p
    rep = gradeds.dset_probe(args.setting, params, _parse_caps(args.caps))
    print(emit_report(rep, args.format))
    return 0


def _load_monoid(args) -> finmonoid.FiniteMonoid:
    if args.file:
        with open(args.file) as fh:
            return finmonoid.monoid_from_text(fh.read())
    params = _parse_params(args.param)
    return finmonoid.construct(args.kind, params)


def cmd_monoid(args) -> int:
    mon = _load_monoid(args)
    fieldobj = parse_field(args.field)
    if args.action == "info":
        rep = {"name": mon.name, "size": mon.size, "identity": mon.identity,
               "group": mon.is_group,
               "generators": mon.generating_set()}
    elif args.action == "augdims":
        rep = {"name": mon.name, "field": repr(fieldobj),
               "aug_dims": finmonoid.aug_power_dims(mon, fieldobj, args.cap),
               "stabilization_index": finmonoid.stabilization_index(mon, fieldobj)}
    elif args.action == "qints":
        rep = {"name": mon.name,
               "q_invariants": {d: finmonoid.q_invariants_integral(mon, d)
                                for d in range(1, args.cap + 1)}}
    elif args.action == "jennings":
        js = finmonoid.jennings_series(mon, args.p)
        rep = {"name": mon.name, "p": args.p, "orders": js.orders,
               "factor_dims": js.factor_dims, "degenerate": js.degenerate}
    else:
        raise ValueError(args.action)
    print(emit_report(rep, args.format))
    return 0


def cmd_ideal(args) -> int:
    theory = get_theory(args.theory)
    fieldobj = parse_field(args.field)
    m_max, n_max = (int(x) for x in args.cells.split(","))
    rep = ideal_equality_check(theory, args.d, m_max, n_max, fieldobj)
    print(emit_report(rep, args.format))
    return 0 if rep["verdict"] else 1


def cmd_degree(args) -> int:
    theory = get_theory(args.theory)
    fieldobj = parse_field(args.field)
    builders = {"constant": constant_module,
                "tautological": tautological_module,
                "tensor_square": tensor_square_module}
    module = builders[args.module](theory, fieldobj, args.n_max)
    deg = module_poly_degree(module, args.d_max)
    rep = {"theory": args.theory, "module": args.module,
           "field": repr(fieldobj), "n_max": args.n_max,
           "degree": deg if deg is not None else f"exceeds {args.d_max}"}
    print(emit_report(rep, args.format))
    return 0


def cmd_gamma_finite(args) -> int:
    if not (args.source.startswith("mod") and args.target.startswith("mod")):
        raise SystemExit("gamma-finite supports modular theories (mod<r>)")
    xi = mod_reduction_map(int(args.source[3:]), int(args.target[3:]))
    fieldobj = parse_field(args.field)
    m_max, n_max = (int(x) for x in args.cells.split(","))
    rep = gamma_membership(xi, args.d, m_max, n_max, fieldobj)
    print(emit_report(rep, args.format))
    return 0 if rep["verdict"] else 1


def cmd_annihilator(args) -> int:
    theory = get_theory(args.theory)
    fieldobj = parse_field(args.field)
    m, n = (int(x) for x in args.cell.split(","))
    family = direct_sum_modules(
        [representable_quotient_module(theory, fieldobj, k0, args.d,
                                       max(m, n))
         for k0 in range(1, args.k_max + 1)])
    ann = annihilator_cell(family, m, n)
    ideal = degree_ideal_cell(theory, args.d, m, n, fieldobj)
    rep = {"theory": args.theory, "field": repr(fieldobj), "d": args.d,
           "cell": [m, n], "dimAnn": ann.dim, "dimIdeal": ideal.dim,
           "equal": spans_equal_cells(ann, ideal)}
    print(emit_report(rep, args.format))
    return 0 if rep["equal"] else 1


def cmd_embed(args) -> int:
    # default guards: monomial counts grow like ngens^cap
    if args.ngens > 4 or args.c > 10:
        raise ValueError("embed guards: ngens <= 4 and degree cap <= 10")
    w = parse_word(args.word, args.ngens)
    model = GroupModel("dim", args.c, args.p) if args.p else \
        GroupModel("nilpotent", args.c)
    series = magnus_embed(w, model)
    rep = {"word": str(w), "model": f"{model.kind}(c={model.c}"
           + (f", p={model.p})" if model.kind == "dim" else ")"),
           "series": str(series)}
    print(emit_report(rep, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyaug",
        description="exact augmentation-filtration and polynomial-degree "
                    "workbench")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_fmt(p):
        p.add_argument("--format", choices=["json", "csv", "text"],
                       default="json")

    p = sub.add_parser("check", help="run registered verification checks")
    p.add_argument("--check", action="append", required=True,
                   help="check name (repeatable); see `list-checks`")
    p.add_argument("--param", action="append", help="k=v check parameter")
    p.add_argument("--field", help="scalar field: Q or Fp:<prime>")
    p.add_argument("--caps", help="n_max,m_max,D caps forwarded to the check")
    add_fmt(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("list-checks", help="list registered check names")
    p.set_defaults(fn=lambda a: (print("\n".join(sorted(checks.CHECKS))), 0)[1])

    p = sub.add_parser("gamma", help="graded-rank agreement interval")
    p.add_argument("--setting", choices=["nilpotent", "dim", "nil-to-dim"],
                   required=True)
    p.add_argument("--c0", required=True)
    p.add_argument("--c1", help="source class (int or inf)")
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--caps", required=True, help="n_max,m_max,D")
    add_fmt(p)
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("dset", help="per-degree strictness report")
    p.add_argument("--setting", choices=["nilpotent", "dim"], required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--caps", required=True, help="n_max,m_max,D")
    add_fmt(p)
    p.set_defaults(fn=cmd_dset)

    p = sub.add_parser("monoid", help="finite-monoid computations")
    p.add_argument("action", choices=["info", "augdims", "qints", "jennings"])
    p.add_argument("--kind", help="cyclic|elementary_abelian|free_band|"
                                  "free_comm_band|unitriangular3")
    p.add_argument("--param", action="append", help="k=v constructor params")
    p.add_argument("--file", help="multiplication table file")
    p.add_argument("--field", default="Q")
    p.add_argument("--cap", type=int, default=6)
    p.add_argument("--p", type=int, default=2)
    add_fmt(p)
    p.set_defaults(fn=cmd_monoid)

    p = sub.add_parser("ideal", help="degree ideal vs augmentation powers")
    p.add_argument("--theory", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--cells", default="3,3", help="m_max,n_max")
    add_fmt(p)
    p.set_defaults(fn=cmd_ideal)

    p = sub.add_parser("degree", help="polynomial degree of a module")
    p.add_argument("--theory", required=True)
    p.add_argument("--module", required=True,
                   choices=["constant", "tautological", "tensor_square"])
    p.add_argument("--field", required=True)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--d-max", type=int, default=3)
    add_fmt(p)
    p.set_defaults(fn=cmd_degree)

    p = sub.add_parser("gamma-finite", help="kernel inside degree ideal")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--cells", default="3,3")
    add_fmt(p)
    p.set_defaults(fn=cmd_gamma_finite)

    p = sub.add_parser("annihilator", help="annihilator of the quotient "
                                           "representable family")
    p.add_argument("--theory", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--cell", default="2,2", help="m,n")
    p.add_argument("--k-max", type=int, default=2)
    add_fmt(p)
    p.set_defaults(fn=cmd_annihilator)

    p = sub.add_parser("embed", help="series image of a word")
    p.add_argument("--word", required=True, help='e.g. "x1 X2 x1"')
    p.add_argument("--ngens", type=int, required=True)
    p.add_argument("--c", type=int, required=True, help="series degree cap")
    p.add_argument("--p", type=int, default=0,
                   help="prime for the mod-p model (0 = integral)")
    add_fmt(p)
    p.set_defaults(fn=cmd_embed)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
