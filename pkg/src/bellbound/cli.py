"""Command-line front end.

Exit codes: 0 success, 2 parse/format error, 3 domain error (size, region,
gamut), 4 see-saw did not converge (the report is still written).
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bell, family7, io, toric7
from .errors import BellBoundError
from .pauli import r_matrix
from .state import Bipartition, concurrence, flat_spectrum_report

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_NOCONV = 0, 2, 3, 4
TOLERANCE_KEYS = {"seesaw": bell.SEESAW_TOL}


@dataclass
class RunConfig:
    command: str
    seed: int = bell.DEFAULT_SEED
    restarts: int = bell.DEFAULT_RESTARTS
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCE_KEYS))
    fmt: str = "json"
    out: Path | None = None


def _parse_tol(parser: argparse.ArgumentParser, items: list[str] | None) -> dict:
    tols = dict(TOLERANCE_KEYS)
    for item in items or []:
        key, _, value = item.partition("=")
        if key not in tols:
            parser.error(f"unknown tolerance {key!r}; known: {sorted(tols)}")
        try:
            v = float(value)
        except ValueError:
            parser.error(f"tolerance {key} needs a number, got {value!r}")
        if not v > 0:
            parser.error(f"tolerance {key} must be positive")
        tols[key] = v
    return tols


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _maximize(state, cfg: RunConfig) -> bell.GammaSandwich:
    return bell.maximize_bell(
        state, restarts=cfg.restarts, seed=cfg.seed, tol=cfg.tolerances["seesaw"]
    )


def cmd_analyze(args, cfg: RunConfig) -> int:
    state = io.load_state(args.state)
    flat = flat_spectrum_report(state)
    conc = {
        str(site): concurrence(state, Bipartition(state.n, [site]))
        for site in range(1, state.n + 1)
    }
    bound = bell.bell_bound(r_matrix(state))
    gamma = _maximize(state, cfg) if args.maximize else None

    if cfg.fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["regionA", "vonNeumann", "renyi2", "rank", "isFlat", "isMaxFlat"])
        for s in flat.spectra:
            w.writerow(["-".join(map(str, s.bipartition.sites_a)), io.fmt(s.von_neumann),
                        io.fmt(s.renyi2), s.rank, int(s.is_flat), int(s.is_max_flat)])
        _emit(buf.getvalue(), cfg.out)
    else:
        report = {
            "n": state.n,
            "flatness": flat.to_dict(),
            "concurrences": conc,
            "boundReport": bound.to_dict(),
        }
        if gamma is not None:
            report["gammaSandwich"] = gamma.to_dict()
        _emit(io.dumps(report), cfg.out)
    if gamma is not None and not gamma.converged:
        return EXIT_NOCONV
    return EXIT_OK


def cmd_bell(args, cfg: RunConfig) -> int:
    gamma = _maximize(io.load_state(args.state), cfg)
    _emit(io.dumps(gamma.to_dict()), cfg.out)
    return EXIT_OK if gamma.converged else EXIT_NOCONV


def cmd_family(args, cfg: RunConfig) -> int:
    if args.sub == "sweep":
        rows = family7.figure_sweep(args.figure, points=args.points)
        out_dir = cfg.out or Path(".")
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"fig{args.figure}.csv"
        io.write_sweep_csv(rows, path)
        fix = (family7.FIG1 if args.figure == 1 else family7.FIG2)["fix"]
        curves = family7.series_curves(rows, fix)
        at_one = [r.bound for r in rows if r.gamut and r.csq == 1.0]
        summary = {
            "file": str(path),
            "rows": len(rows),
            "inGamut": sum(r.gamut for r in rows),
            "boundAtCsq1": at_one[0] if at_one else None,
            "spreadAtCsq1": (max(at_one) - min(at_one)) if at_one else None,
            "nonMonotonicSeries": [
                s for s, c in curves.items() if family7.interior_extrema([r.bound for r in c])
            ],
        }
        sys.stdout.write(io.dumps(summary) + "\n")
    elif args.sub == "invert":
        triple = family7.ConcurrenceTriple(args.c1sq, args.c2sq, args.csq)
        coeffs = family7.coeffs_from_concurrences(triple)
        report = {
            "alpha": list(coeffs.alpha),
            "alphaSq": coeffs.probabilities.tolist(),
            "rtrDiagonal": list(family7.rtr_diagonal(coeffs)),
            "bound": family7.family_bound(coeffs),
        }
        _emit(io.dumps(report), cfg.out)
    elif args.sub == "critical":
        coeffs = family7.FamilyCoeffs(tuple(args.alpha)) if args.alpha else family7.CRITICAL
        rep = family7.classify_critical_point(coeffs, args.eps)
        _emit(io.dumps(rep.to_dict()), cfg.out)
    return EXIT_OK


def cmd_toric(args, cfg: RunConfig) -> int:
    h = toric7.build_hamiltonian()
    if args.sub == "verify":
        rep = toric7.verify_toric_ground(io.load_state(args.state), h)
        _emit(io.dumps(rep.to_dict()), cfg.out)
    else:
        ev = h.spectrum()
        e0 = float(ev[0])
        report = {
            "minimum": e0,
            "degeneracy": int(np.sum(np.abs(ev - e0) <= toric7.GROUND_TOL)),
            "eigenvalues": ev.tolist(),
        }
        _emit(io.dumps(report), cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="output file (directory for sweeps)")
    common.add_argument("--seed", type=int, default=bell.DEFAULT_SEED)
    common.add_argument("--restarts", type=int, default=bell.DEFAULT_RESTARTS)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE",
                        help="override a tolerance (known: seesaw)")

    p = argparse.ArgumentParser(prog="bellbound", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", parents=[common], help="entropies, concurrences and Bell bound")
    an.add_argument("--state", required=True, type=Path)
    an.add_argument("--maximize", action="store_true", help="also run the see-saw search")

    bl = sub.add_parser("bell", help="Bell-operator maximization")
    bsub = bl.add_subparsers(dest="sub", required=True)
    bm = bsub.add_parser("maximize", parents=[common])
    bm.add_argument("--state", required=True, type=Path)

    fam = sub.add_parser("family", help="seven-qubit family analysis")
    fsub = fam.add_subparsers(dest="sub", required=True)
    fs = fsub.add_parser("sweep", parents=[common])
    fs.add_argument("--figure", type=int, choices=(1, 2), required=True)
    fs.add_argument("--points", type=int, default=201)
    fi = fsub.add_parser("invert", parents=[common])
    fi.add_argument("--c1sq", type=float, required=True)
    fi.add_argument("--c2sq", type=float, required=True)
    fi.add_argument("--csq", type=float, required=True)
    fc = fsub.add_parser("critical", parents=[common])
    fc.add_argument("--eps", type=float, default=family7.DEFAULT_EPS)
    fc.add_argument("--alpha", type=float, nargs=4, metavar=("A1", "A2", "A3", "A4"))

    tor = sub.add_parser("toric", help="seven-qubit disk toric code")
    tsub = tor.add_subparsers(dest="sub", required=True)
    tv = tsub.add_parser("verify", parents=[common])
    tv.add_argument("--state", required=True, type=Path)
    tsub.add_parser("spectrum", parents=[common])
    return p


COMMANDS = {"analyze": cmd_analyze, "bell": cmd_bell, "family": cmd_family, "toric": cmd_toric}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        seed=args.seed,
        restarts=args.restarts,
        tolerances=_parse_tol(parser, args.tol),
        fmt=args.format,
        out=args.out,
    )
    try:
        return COMMANDS[args.command](args, cfg)
    except BellBoundError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
