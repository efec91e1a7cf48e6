"""Command line interface: ``curvekit {info,curvature,wave,check,sample,deform}``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from curvekit import curvature as cv
from curvekit import dynamics, morse, spectral, zoo
from curvekit.complex import SimplicialComplex, cover_status
from curvekit.errors import CoverViolation, CurvekitError, ParseError
from curvekit.graphs import is_2manifold, is_3manifold
from curvekit.io import curvature_csv, curvature_json, load_complex, rational

WAVE_TIMES = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
HEAT_TIMES = (0.1, 1.0, 10.0)


class UsageError(Exception):
    pass


def _load(args) -> tuple[str, SimplicialComplex]:
    if args.builtin:
        return args.builtin, zoo.get(args.builtin).complex
    return str(args.file), load_complex(args.file)


def _parse_times(text: str | None) -> list[float]:
    if text is None or not text.strip():
        raise UsageError("--t needs a non-empty comma-separated list of times")
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"bad time grid {text!r}") from exc


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    path = Path(output)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands ----------------------------------------------------------------------------------


def cmd_info(args) -> int:
    name, G = _load(args)
    report = {
        "input": name,
        "dimension": G.dim,
        "f_vector": list(G.f_vector()),
        "chi": G.euler_characteristic(),
        "betti": list(spectral.betti(G)) if len(G) else [],
        "pure": G.is_pure() if len(G) else True,
        "manifold": _classify(G),
        "cover": [
            {"k": k, "weak": s.weak, "strong": s.strong, "witnesses": [list(w) for w in s.witnesses]}
            for k in range(G.dim + 1)
            for s in [cover_status(G, k)]
        ],
    }
    if args.format == "json":
        _emit(_dumps(report), args.output)
        return 0
    lines = [
        f"input      {report['input']}",
        f"dimension  {report['dimension']}",
        f"f-vector   {tuple(report['f_vector'])}",
        f"chi        {report['chi']}",
        f"betti      {tuple(report['betti'])}",
        f"manifold   {report['manifold']}",
    ]
    for c in report["cover"]:
        lines.append(f"cover k={c['k']}  weak={c['weak']} strong={c['strong']}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _classify(G: SimplicialComplex) -> str:
    if len(G) == 0:
        return "empty"
    if G.dim == 2:
        check = is_2manifold(G)
        if check:
            return "2-manifold with boundary" if check.boundary else "2-manifold"
    if G.dim == 3 and is_3manifold(G):
        return "3-manifold"
    return "none detected"


def cmd_curvature(args) -> int:
    _, G = _load(args)
    chi = G.euler_characteristic()
    if args.t is None:
        field = cv.form_curvature(G, args.k)
        footer = {"sum": rational(field.total()), "chi": chi, "gauss_bonnet": field.total() == chi}
    else:
        field = dynamics.wave_curvature(G, args.k, args.t)
        total = float(np.sum(field.values))
        footer = {"t": args.t, "sum": total, "chi": chi, "abs_error": abs(total - chi)}
    if args.format == "json":
        payload = curvature_json(field, chi)
        payload["footer"] = footer
        _emit(_dumps(payload), args.output)
    else:
        text = curvature_csv(field)
        text += "# " + " ".join(f"{k}={v}" for k, v in footer.items()) + "\n"
        _emit(text, args.output)
    return 0


def cmd_wave(args) -> int:
    _, G = _load(args)
    records = dynamics.wave_trajectory(G, args.k, _parse_times(args.t))
    _emit("".join(json.dumps(r) + "\n" for r in records), args.output)
    chi = G.euler_characteristic()
    return 0 if all(abs(r["sum_K"] - chi) < 1e-9 for r in records) else 1


def cmd_sample(args) -> int:
    _, G = _load(args)
    res = morse.index_expectation(G, args.k, args.samples, args.seed)
    payload = res.to_json()
    payload["within_5se"] = res.fraction_within(5.0)
    _emit(_dumps(payload), args.output)
    return 0


def cmd_deform(args) -> int:
    times = _parse_times(args.t)
    _, G = _load(args)
    records = dynamics.deformation_trajectory(
        G, times, method=args.method, g_tag=args.g, c=args.c, dt=args.dt, c_imag=args.c_imag
    )
    _emit("".join(json.dumps(r) + "\n" for r in records), args.output)
    tol = 1e-8 if args.method == "qr" else 1e-6
    ok = all(r["eig_drift"] < tol and r["offdiag_pattern_ok"] is not False for r in records)
    return 0 if ok else 1


def run_checks(G: SimplicialComplex, seed: int = 0) -> list[dict]:
    """Invariant suite; each entry has name, status (pass/fail/skipped) and detail."""
    chi = G.euler_characteristic()
    out: list[dict] = []

    def record(name, fn, **extra):
        entry = {"name": name, **extra}
        try:
            ok, detail = fn()
            entry.update(status="pass" if ok else "fail", detail=detail)
        except CoverViolation as exc:
            entry.update(status="skipped", detail="CoverViolation", witnesses=[list(w) for w in exc.witnesses])
        except CurvekitError as exc:
            entry.update(status="fail", detail=f"{type(exc).__name__}: {exc}")
        out.append(entry)

    covered = []
    for k in range(G.dim + 1):

        def gb(k=k):
            f = cv.form_curvature(G, k)
            covered.append(k)
            return f.total() == chi, {"sum": rational(f.total()), "chi": chi}

        record("gauss_bonnet", gb, k=k)

    def euler_poincare():
        b = spectral.betti(G)
        return b.euler == chi, {"betti": list(b)}

    record("euler_poincare", euler_poincare)

    def mckean_singer():
        powers = spectral.hodge_power_super_traces(G, 4)
        heat = [spectral.super_trace(spectral.heat_kernel(G, t), G) for t in HEAT_TIMES]
        ok = all(p == 0 for p in powers) and all(abs(h - chi) < 1e-9 for h in heat)
        return ok, {"str_L_powers": powers, "str_heat": heat}

    record("mckean_singer", mckean_singer)

    def specialization():
        detail = {}
        ok = True
        if 0 in covered:
            same = cv.levitt_curvature(G).values == cv.form_curvature(G, 0).values
            detail["levitt"] = same
            ok &= same
        if G.dim in covered:
            same = cv.facet_curvature(G).values == cv.form_curvature(G, G.dim).values
            detail["facet"] = same
            ok &= same
        if G.dim == 3 and is_3manifold(G):
            for k, fn in (
                (1, cv.edge_curvature_3manifold),
                (2, cv.face_curvature_3manifold),
                (3, cv.chamber_curvature_3manifold),
            ):
                same = fn(G).values == cv.form_curvature(G, k).values
                detail[f"3manifold_k{k}"] = same
                ok &= same
        if G.dim == 2:
            m = is_2manifold(G)
            if m:
                for k in range(3):
                    same = cv.two_manifold_curvatures(G, k).values == cv.form_curvature(G, k).values
                    detail[f"2manifold_k{k}"] = same
                    ok &= same
        return ok, detail

    record("specialization", specialization)

    for k in covered:

        def ph(k=k):
            g = morse.random_k_function(G, k, seed + k)
            total = morse.ph_indices(G, k, g).total()
            return total == chi, {"sum": total, "seed": seed + k}

        record("poincare_hopf", ph, k=k)

    for k in covered:

        def wave(k=k):
            errs = [abs(float(np.sum(dynamics.wave_curvature(G, k, t).values)) - chi) for t in WAVE_TIMES]
            return max(errs) < 1e-9, {"max_abs_error": max(errs)}

        record("wave_gauss_bonnet", wave, k=k)

    def generating():
        rep = cv.generating_identity_check(G)
        return bool(rep), {"diff": rep.diff, "euler_ok": rep.euler_ok}

    record("generating_identity", generating)
    return out


def cmd_check(args) -> int:
    name, G = _load(args)
    checks = run_checks(G, args.seed)
    ok = all(c["status"] != "fail" for c in checks)
    _emit(_dumps({"input": name, "ok": ok, "checks": checks}), args.output)
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvekit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--builtin", choices=zoo.builtin_names(), help="named builtin complex")
        src.add_argument("--file", type=Path, help="facet file (text or JSON)")
        p.add_argument("-o", "--output", help="write output here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.set_defaults(func=func)
        return p

    p = add("info", cmd_info, "f-vector, Euler characteristic, Betti numbers, cover status")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("curvature", cmd_curvature, "k-form curvature (exact) or wave curvature at time t")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=float, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = add("wave", cmd_wave, "wave curvature trajectory as JSON lines")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--t", required=True, help="comma-separated times")

    add("check", cmd_check, "run the invariant suite")

    p = add("sample", cmd_sample, "Monte Carlo index expectation")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", "--samples", type=int, default=2000)

    p = add("deform", cmd_deform, "isospectral deformation of the Dirac operator")
    p.add_argument("--method", choices=("qr", "ode"), default="qr")
    p.add_argument("--g", choices=dynamics.G_TAGS, default="identity")
    p.add_argument("--c", type=float, default=None, help="coupling for g=log")
    p.add_argument("--c-imag", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t", required=True, help="comma-separated times")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 0:
        parser.error("-k must be non-negative")
    if getattr(args, "samples", 1) < 0:
        parser.error("--samples must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except CoverViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        for w in exc.witnesses:
            print(f"  uncovered: {list(w)}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (CurvekitError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
