"""Command line interface: ``dragonhull <command> [options]``.

Exit codes: 0 when every requested check passes, 1 on a check failure,
2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from typing import Sequence

import numpy as np

from . import checks, codings, geometry, oracle, svg, theory
from .core import Coding, DomainError, candidate_set, make_params, point_b, point_w, point_z

log = logging.getLogger("dragonhull")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _cx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _num(x: float) -> str:
    return format(x, ".17g")


def _eta(args: argparse.Namespace, value: float) -> float:
    return math.radians(value) if getattr(args, "degrees", False) else value


def _parse_range(text: str) -> list[float]:
    try:
        a, b, n = text.split(":")
        return [float(x) for x in np.linspace(float(a), float(b), int(n))]
    except ValueError as exc:
        raise UsageError(f"--eta-range expects A:B:N, got {text!r}") from exc


def _parse_cells(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"--cells expects A..B or a comma list, got {text!r}") from exc


def _parse_word(text: str | None, name: str, allow_empty: bool) -> tuple[int, ...]:
    text = (text or "").strip()
    if not text:
        if allow_empty:
            return ()
        raise UsageError(f"--{name} must be non-empty")
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(s) for s in parts)
    except ValueError as exc:
        raise UsageError(f"--{name} must be a word of symbols, got {text!r}") from exc


def _cell_json(res) -> dict | str:
    if isinstance(res, theory.PartitionCell):
        return {"k": res.k, "eta_lower": res.lower, "eta_upper": res.upper}
    if isinstance(res, theory.UpperRegion):
        return "upper_region"
    return {"boundary_k": res.k, "eta_k": res.eta_k}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _warn_large_a(p) -> None:
    if p.mod_a > 0.95:
        print(f"warning: |a| = {p.mod_a:.6f} > 0.95; the attractor is large and sampling is coarse",
              file=sys.stderr)


def cmd_params(args: argparse.Namespace) -> int:
    p = make_params(_eta(args, args.eta))
    _warn_large_a(p)
    res = theory.partition_cell(p.eta, args.tol)
    data = {
        "eta": p.eta, "a": _cx(p.a), "mod_a": p.mod_a, "c": p.c,
        "z0": _cx(point_z(p, 0)), "w1": _cx(point_w(p, 1)), "b0": _cx(point_b(p, 0)),
        "w0": _cx(point_w(p, 0)), "cell": _cell_json(res),
    }
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
        return EXIT_OK
    lines = [f"eta   = {_num(p.eta)}", f"a     = {p.a.real:.17g} {p.a.imag:+.17g}i",
             f"|a|   = {_num(p.mod_a)}", f"c     = {_num(p.c)}"]
    for name in ("z0", "w1", "b0", "w0"):
        z = complex(data[name]["re"], data[name]["im"])
        lines.append(f"{name:<5} = {z.real:.17g} {z.imag:+.17g}i")
    if isinstance(res, theory.UpperRegion):
        lines.append(f"warning: UpperRegion: eta > eta_4 = {res.eta_4:.12f}; closed-form vertex list not applicable")
    elif isinstance(res, theory.PartitionCell):
        lines.append(f"cell  = k={res.k}  [{res.lower:.12f}, {res.upper:.12f})  -> {2 * res.k + 2} hull vertices")
    else:
        lines.append(f"cell  = within tol of eta_{res.k} = {res.eta_k:.12f} (boundary)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_eta_table(args: argparse.Namespace) -> int:
    if args.k_max < 4:
        raise UsageError("--k-max must be >= 4")
    rows = [(k, theory.eta_root(k, args.tol), math.pi / k, math.pi / (k - 1)) for k in range(4, args.k_max + 1)]
    if args.format == "json":
        text = json.dumps([{"k": k, "eta_k": e, "bracket_lo": lo, "bracket_hi": hi} for k, e, lo, hi in rows],
                          indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "eta_k", "bracket_lo", "bracket_hi"])
        for k, e, lo, hi in rows:
            w.writerow([k, _num(e), _num(lo), _num(hi)])
        text = buf.getvalue()
    else:
        text = "".join(f"eta_{k:<3d} = {e:.15f}   in ({lo:.6f}, {hi:.6f})\n" for k, e, lo, hi in rows)
    _emit(text, args.out)
    return EXIT_OK


def _hull_payload(eta: float, depth: int, tol: float):
    p = make_params(eta)
    _warn_large_a(p)
    res = theory.partition_cell(p.eta)
    cloud = oracle.sample_attractor(p, depth)
    emp = oracle.empirical_hull(p, cloud=cloud)
    try:
        pred = theory.predicted_hull(p)
    except theory.NoPredictionError as exc:
        pred, reason = None, str(exc)
    names = {}
    for lp in candidate_set(p, oracle.candidate_depth(p)):
        names.setdefault(lp.point, str(lp.label))
    payload = {"eta": p.eta, "cell": _cell_json(res)}
    if pred is not None:
        rep = geometry.hull_match(pred.polygon, emp, 1e-6)
        viol = geometry.max_outward_violation(cloud.points, pred.polygon)
        ok = rep.passed and viol <= tol
        payload["vertices"] = [{"label": str(v.label), **_cx(v.point)} for v in pred.vertices]
        payload["report"] = {**rep.to_dict(), "max_sample_violation": viol, "outward_tol": tol,
                             "n_samples": len(cloud), "depth": depth, "error_bound": cloud.error_bound,
                             "open_region": False, "passed": ok}
    else:
        ok = True
        payload["vertices"] = [{"label": names.get(v, f"e{i}"), **_cx(v)} for i, v in enumerate(emp.vertices)]
        payload["report"] = {"open_region": True, "reason": reason, "n_empirical": len(emp),
                             "n_samples": len(cloud), "depth": depth, "error_bound": cloud.error_bound,
                             "passed": None}
    return payload, ok, cloud, emp, pred


def cmd_hull(args: argparse.Namespace) -> int:
    payload, ok, cloud, emp, pred = _hull_payload(_eta(args, args.eta), args.depth, args.tol)
    fmt = args.format
    if fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["label", "re", "im"])
        for v in payload["vertices"]:
            w.writerow([v["label"], _num(v["re"]), _num(v["im"])])
        text = buf.getvalue()
    elif fmt == "svg":
        labels = [v["label"] for v in payload["vertices"]] if pred is not None else None
        text = svg.render(cloud.points, emp, pred.polygon if pred is not None else None, labels,
                          title=f"eta = {payload['eta']:.12g}")
    else:
        rep = payload["report"]
        lines = [f"eta = {payload['eta']:.17g}   cell = {json.dumps(payload['cell'])}"]
        if rep["open_region"]:
            lines.append(f"open region: {rep['reason']}")
            lines.append(f"empirical hull: {rep['n_empirical']} vertices")
        else:
            lines.append(f"predicted hull: {rep['n_predicted']} vertices (clockwise)")
        for v in payload["vertices"]:
            lines.append(f"  {v['label']:>4}  {v['re']: .17g}  {v['im']: .17g}")
        if not rep["open_region"]:
            lines.append(f"empirical vertices: {rep['n_empirical']}  "
                         f"max vertex gap: {rep['max_predicted_to_empirical']:.3g}  "
                         f"max outward sample violation: {rep['max_sample_violation']:.3g}  "
                         f"-> {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    etas = None
    if args.eta is not None:
        etas = [_eta(args, args.eta)]
    elif args.eta_range:
        etas = [_eta(args, e) for e in _parse_range(args.eta_range)]
    cells = _parse_cells(args.cells) if args.cells else None
    names = checks.SUITES if args.suite == "all" else (args.suite,)
    results = [checks.run_suite(n, etas, cells, args.depth) for n in names]
    ok = all(r.passed or r.advisory for r in results)
    if args.format == "json":
        text = json.dumps({"passed": ok, "suites": [r.to_dict() for r in results]}, indent=2, default=float) + "\n"
    else:
        lines = []
        for r in results:
            tag = "INFO" if r.advisory else ("PASS" if r.passed else "FAIL")
            lines.append(f"[{tag}] {r.name}: {json.dumps(r.summary, default=float)}")
            lines += [f"    {f}" for f in r.failures[:10]]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_coding_check(args: argparse.Namespace) -> int:
    if args.dragon is not None:
        ifs = codings.SimilitudeIFS.dragon(make_params(_eta(args, args.dragon)))
    elif args.map:
        try:
            ifs = codings.SimilitudeIFS(tuple((complex(a), complex(b)) for a, b in args.map))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        raise UsageError("give --dragon ETA or at least one --map A B")
    period = _parse_word(args.period, "period", allow_empty=False)
    prefix = _parse_word(args.prefix, "prefix", allow_empty=True)
    if any(not 1 <= s <= len(ifs) for s in prefix + period):
        raise UsageError(f"symbols must be in 1..{len(ifs)}")
    coding = Coding(prefix, period)
    verdict = codings.extreme_necessary_check(ifs, coding)
    data = {
        "coding": str(coding), "verdict": "PASSES" if verdict.passes else "FAILS",
        "product": _cx(verdict.product), "alpha": verdict.alpha,
        "not_singleton": codings.check_not_singleton(ifs),
        "note": "PASSES is a necessary condition only; it does not certify an extreme point",
    }
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        _emit(f"{coding}: {verdict}\n", args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    etas = [_eta(args, e) for e in _parse_range(args.eta_range)]
    rows = []
    all_ok = True
    for eta in etas:
        payload, ok, *_ = _hull_payload(eta, args.depth, args.tol)
        rep = payload["report"]
        rows.append({
            "eta": payload["eta"],
            "cell": payload["cell"],
            "n_predicted": None if rep["open_region"] else rep["n_predicted"],
            "n_empirical": rep["n_empirical"],
            "passed": rep["passed"],
        })
        all_ok &= ok
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eta", "k", "n_predicted", "n_empirical", "passed"])
        for r in rows:
            cell = r["cell"]
            k = cell.get("k", cell.get("boundary_k")) if isinstance(cell, dict) else cell
            w.writerow([_num(r["eta"]), k, "" if r["n_predicted"] is None else r["n_predicted"],
                        r["n_empirical"], "" if r["passed"] is None else r["passed"]])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dragonhull", description="Convex hulls of eta-dragon curves.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, formats, default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--degrees", action="store_true", help="angles given in degrees")

    sp = sub.add_parser("params", help="eta-derived constants and first candidate points")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--tol", type=float, default=theory.BOUNDARY_TOL)
    common(sp, ("json", "text"))
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("eta-table", help="partition roots eta_k")
    sp.add_argument("--k-max", type=int, default=20)
    sp.add_argument("--tol", type=float, default=theory.BISECT_TOL)
    common(sp, ("json", "csv", "text"))
    sp.set_defaults(func=cmd_eta_table)

    sp = sub.add_parser("hull", help="predicted and empirical hull")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH)
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp, ("json", "csv", "svg", "text"))
    sp.set_defaults(func=cmd_hull)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=checks.SUITES + ("all",), default="all")
    sp.add_argument("--eta", type=float)
    sp.add_argument("--eta-range")
    sp.add_argument("--cells", help="cell indices, e.g. 4..8")
    sp.add_argument("--depth", type=int, default=oracle.DEFAULT_DEPTH)
    common(sp, ("json", "text"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("coding-check", help="positivity test for an eventually periodic coding")
    sp.add_argument("--dragon", type=float, metavar="ETA")
    sp.add_argument("--map", nargs=2, action="append", metavar=("A", "B"),
                    help="map z -> A z + B, complex literals such as 0.5-0.5j")
    sp.add_argument("--prefix", default="")
    sp.add_argument("--period", required=True)
    common(sp, ("json", "text"))
    sp.set_defaults(func=cmd_coding_check)

    sp = sub.add_parser("sweep", help="hull check over a range of eta")
    sp.add_argument("--eta-range", required=True)
    sp.add_argument("--depth", type=int, default=16)
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp, ("json", "csv"), default="csv")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
