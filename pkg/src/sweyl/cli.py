"""Command-line interface: purities | phasespace | duality | star | verify.

All commands are deterministic functions of (config, seed): identical
invocations produce byte-identical CSV/JSON/PPM outputs.  Exit codes:
0 success, 1 a numerical check failed, 2 configuration/usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__, gfd, phase_space as ps, render, verify
from .clebsch import HalfInt
from .models import MultipartiteModel, SpinModel


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--qrt", choices=("spin", "multipartite", "fermionic"),
                   default="spin")
    p.add_argument("--spin-S", default="2", help="spin label, e.g. 2 or 5/2")
    p.add_argument("--n", type=int, default=2, help="qubit/mode count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sweyl",
        description="Sector purities and phase-space filters for "
                    "spin, multi-qubit and fermionic resource theories.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("purities", help="sector purity tables for states")
    _add_common(pp)
    pp.add_argument("--state", action="append", default=None,
                    help="hw | ghz | haar | m=<value> (repeatable)")
    pp.add_argument("--s", action="append", type=float, default=None,
                    help="ordering parameter (repeatable)")

    pf = sub.add_parser("phasespace", help="field heatmaps and tables")
    _add_common(pf)
    pf.add_argument("--state", action="append", default=None)
    pf.add_argument("--s", action="append", type=float, default=None)
    pf.add_argument("--grid", default="64x128", help="NthetaxNphi")
    pf.add_argument("--projection", choices=("equirect", "robinson"),
                    default="equirect")

    pd = sub.add_parser("duality", help="Haar-average duality Monte Carlo")
    _add_common(pd)
    pd.add_argument("--s", action="append", type=float, default=None)
    pd.add_argument("--samples", type=int, default=2000)

    pstar = sub.add_parser("star", help="twisted-product consistency check")
    _add_common(pstar)
    pstar.add_argument("--s", action="append", type=float, default=None)
    pstar.add_argument("--points", type=int, default=20)

    pv = sub.add_parser("verify", help="run the invariant check suite")
    _add_common(pv)
    pv.add_argument("--quad-tol", type=float, default=1e-8,
                    help="tolerance for quadrature-mediated checks")
    return p


def _model(args):
    return verify.make_model(args.qrt, args.spin_S, args.n)


def _config(args, **extra) -> dict:
    cfg = {
        "command": args.command,
        "qrt": args.qrt,
        "spin_S": str(args.spin_S),
        "n": args.n,
    }
    cfg.update(extra)
    return cfg


def _state_label(sel: str) -> str:
    return sel.replace("=", "")


def _sector_name(lam) -> str:
    if isinstance(lam, tuple):
        return "".join(str(b) for b in lam)
    return str(lam)


def _write_json(path, config, checks, seed) -> None:
    doc = {"config": config, "checks": checks, "seed": seed}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_purities(args) -> int:
    model = _model(args)
    states = args.state or ["hw"]
    svals = args.s if args.s else [-1.0, 0.0, 1.0]
    rows = []
    for sel in states:
        try:
            psi = model.named_state(sel, seed=args.seed)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        rho = np.outer(psi, psi.conj())
        spectrum = gfd.purity_spectrum(rho, model)
        for s in svals:
            filtered = gfd.phase_purity(spectrum, s, model)
            for lam in model.labels():
                rows.append([
                    model.kind, _state_label(sel), s, _sector_name(lam),
                    float(model.irrep_dim(lam)), model.tau(lam),
                    spectrum[lam], filtered[lam],
                ])
    os.makedirs(args.out, exist_ok=True)
    header = ["model", "state", "s", "sector", "dim", "tau",
              "purity", "phase_purity"]
    if args.format == "json":
        path = os.path.join(args.out, "purities.json")
        doc = {
            "config": _config(args, states=states, s=svals),
            "rows": [dict(zip(header, r)) for r in rows],
            "seed": args.seed,
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        render.write_csv(os.path.join(args.out, "purities.csv"),
                         header, rows, comments=[f"seed={args.seed}"])
    return 0


def _marginal_qubit_operator(model: MultipartiteModel, A: np.ndarray):
    """Partial trace onto qubit 0 and the measure factor for the rest."""
    rest = model.dim // 2
    A4 = A.reshape(2, rest, 2, rest)
    return np.einsum("abcb->ac", A4), rest


def cmd_phasespace(args) -> int:
    model = _model(args)
    if model.kind == "fermionic":
        print("error: fermionic phase space has no spherical projection",
              file=sys.stderr)
        return 2
    try:
        ntheta, nphi = (int(tok) for tok in args.grid.lower().split("x"))
        if ntheta < 1 or nphi < 1:
            raise ValueError
    except ValueError:
        print(f"error: bad grid spec {args.grid!r}", file=sys.stderr)
        return 2
    states = args.state or ["hw"]
    svals = args.s if args.s else [0.0]
    theta, phi = render.equirect_grid(ntheta, nphi)
    points = [(t, p) for t in theta for p in phi]
    os.makedirs(args.out, exist_ok=True)

    for sel in states:
        try:
            psi = model.named_state(sel, seed=args.seed)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        rho = np.outer(psi, psi.conj())
        for s in svals:
            if isinstance(model, SpinModel):
                target, scale = model, 1.0
                A = rho
            else:
                A, rest = _marginal_qubit_operator(model, rho)
                target = MultipartiteModel(1)
                scale = float(rest) ** ((s - 1) / 2)
                A = A * scale
            spec = ps.KernelSpec.cahill_glauber(s)
            if isinstance(target, SpinModel):
                stack = ps.kernel_stack(target, points, spec)
            else:
                stack = ps.kernel_stack(target, [(pt,) for pt in points], spec)
            vals = np.real(np.einsum("nab,ba->n", stack, A))
            field = vals.reshape(ntheta, nphi)

            tag = f"{_state_label(sel)}_s{s:+g}"
            rows = [[theta[i], phi[j], field[i, j]]
                    for i in range(ntheta) for j in range(nphi)]
            render.write_csv(
                os.path.join(args.out, f"field_{tag}.csv"),
                ["theta", "phi", "value"], rows,
                comments=[f"seed={args.seed}"])
            rgb = render.colorize(field)
            if args.projection == "robinson":
                rgb = render.robinson_remap(rgb)
            render.write_ppm(
                os.path.join(args.out, f"field_{tag}.ppm"), rgb,
                comments=[f"seed={args.seed}",
                          f"state={sel} s={s:g} proj={args.projection}"])
    return 0


def cmd_duality(args) -> int:
    model = _model(args)
    if model.kind == "fermionic":
        print("error: duality command needs a structured quadrature "
              "(spin or multipartite)", file=sys.stderr)
        return 2
    svals = args.s if args.s else [-1.0, 0.0]
    checks = []
    ok = True
    for s in svals:
        rows = gfd.duality_check(model, s, args.samples, args.seed)
        for row in rows:
            if row.trivial:
                passed = abs(row.lhs_mean - row.rhs) <= 1e-10
                value, bound = abs(row.lhs_mean - row.rhs), 1e-10
            else:
                passed = abs(row.zscore) <= 4.0
                value, bound = abs(row.zscore), 4.0
            ok &= passed
            checks.append({
                "name": f"duality[s={s:g},sector={_sector_name(row.label)}]",
                "passed": bool(passed),
                "value": float(value),
                "bound": float(bound),
                "tolerance": float(bound),
            })
    os.makedirs(args.out, exist_ok=True)
    _write_json(os.path.join(args.out, "duality.json"),
                _config(args, s=svals, samples=args.samples), checks,
                args.seed)
    return 0 if ok else 1


def cmd_star(args) -> int:
    model = _model(args)
    if not isinstance(model, SpinModel):
        print("error: star command supports the spin model", file=sys.stderr)
        return 2
    svals = args.s if args.s else [0.0]
    rng = np.random.default_rng(args.seed)
    d = model.dim
    g1 = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    g2 = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    A, B = (g1 + g1.conj().T) / 2, (g2 + g2.conj().T) / 2
    grid = ps.sphere_quadrature(model.S.twice)  # doubled band limit
    out_points = [model.random_point(rng) for _ in range(args.points)]
    checks = []
    ok = True
    for s in svals:
        spec = ps.KernelSpec.cahill_glauber(s)
        fa = ps.symbol_field(model, A, grid, spec)
        fb = ps.symbol_field(model, B, grid, spec)
        vals = ps.star_product(fa, fb, s, out_points)
        ref = np.array([ps.symbol(model, A @ B, pch, spec)
                        for pch in out_points])
        dev = float(np.max(np.abs(vals - ref)) / (1 + np.max(np.abs(ref))))
        passed = dev <= 1e-6
        ok &= passed
        checks.append({
            "name": f"star_product[s={s:g}]",
            "passed": bool(passed),
            "value": dev,
            "bound": 1e-6,
            "tolerance": 1e-6,
        })
    os.makedirs(args.out, exist_ok=True)
    _write_json(os.path.join(args.out, "star.json"),
                _config(args, s=svals, points=args.points), checks, args.seed)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    try:
        results = verify.run_checks(args.qrt, args.spin_S, args.n,
                                    seed=args.seed, quad_tol=args.quad_tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    checks = [r.as_dict() for r in results]
    os.makedirs(args.out, exist_ok=True)
    _write_json(os.path.join(args.out, "verify.json"),
                _config(args, quad_tol=args.quad_tol), checks, args.seed)
    for r in results:
        status = "ok" if r.passed else "FAIL"
        print(f"{status:4s} {r.name}: value={r.value:.3e} bound={r.bound:.1e}")
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        S = HalfInt.of(args.spin_S)
        if S.twice < 1:
            raise ValueError("spin must be positive")
    except ValueError as exc:
        print(f"error: bad --spin-S: {exc}", file=sys.stderr)
        return 2
    handler = {
        "purities": cmd_purities,
        "phasespace": cmd_phasespace,
        "duality": cmd_duality,
        "star": cmd_star,
        "verify": cmd_verify,
    }[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
