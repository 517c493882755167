"""Command-line interface; every subcommand prints one JSON document.

Exit codes: 0 success, 1 computational failure, 2 invalid input or refused
precondition.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .cospectral import discriminate_spectra, theorem42_demo
from .cutnorm import cut_norm_exact, mean_gap_lower_bound
from .densities import cycle_profile, density_direct
from .errors import GraphonError
from .graphon import SimpleGraph, StepGraphon
from .sampling import GENERATOR_FAMILY, SampleSpec, sample_graph
from .spectral import (
    GROUP_TOL,
    MATCH_TOL,
    ZERO_TOL,
    build_intertwiner,
    decompose,
    spectra_equal,
)

log = logging.getLogger("graphon_cospectra")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GraphonError(f"cannot read {path}: {exc.strerror}") from exc


def _graphon(path: str) -> StepGraphon:
    return StepGraphon.from_json(_read(path))


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"{text} is not positive")
    return x


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        x = int(text)
        if x < lo:
            raise argparse.ArgumentTypeError(f"{text} is below {lo}")
        return x

    return parse


def cmd_spectrum(args) -> dict:
    d = decompose(_graphon(args.graphon), args.zero_tol, args.group_tol)
    return d.spectrum.to_dict()


def cmd_cycles(args) -> dict:
    return cycle_profile(_graphon(args.graphon), args.kmax).to_dict()


def cmd_cospectral(args) -> dict:
    u, w = _graphon(args.u), _graphon(args.w)
    su, sw = decompose(u).spectrum, decompose(w).spectrum
    if not spectra_equal(su, sw, args.tol):
        return {"cospectral": False, "report": discriminate_spectra(su, sw, args.tol).to_dict()}
    t = build_intertwiner(u, w, args.tol)
    return {
        "cospectral": True,
        "spectrum": su.to_dict(),
        "intertwiner": t.to_dict(),
        "unitarity_residual": t.unitarity_residual(),
        "intertwining_residual": t.intertwining_residual(u, w),
    }


def cmd_cutnorm(args) -> dict:
    u, w = _graphon(args.u), _graphon(args.w)
    cert = cut_norm_exact(u, w)
    return {"certificate": cert.to_dict(), "mean_gap_lb": mean_gap_lower_bound(u, w)}


def cmd_sample(args) -> dict:
    g = sample_graph(SampleSpec(args.n, args.seed, _graphon(args.graphon)))
    if args.out:
        Path(args.out).write_text(g.to_edgelist())
        log.info("wrote edge list to %s", args.out)
    return {"generator": GENERATOR_FAMILY, "seed": args.seed, "graph": g.to_dict()}


def cmd_demo(args) -> dict:
    report = theorem42_demo(ns=args.ns, seeds=args.seeds)
    if not report["all_passed"]:
        log.warning("%d trial(s) missed the threshold", len(report["failures"]))
    return report


def cmd_density(args) -> dict:
    f = SimpleGraph.parse(_read(args.pattern))
    return {"density": density_direct(f, _graphon(args.graphon))}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphon-cospectra", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", help="nonzero spectrum of a step graphon")
    s.add_argument("graphon")
    s.add_argument("--zero-tol", type=_positive, default=ZERO_TOL)
    s.add_argument("--group-tol", type=_positive, default=GROUP_TOL)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("cycles", help="cycle densities t(C_k, W) for k = 3..K")
    s.add_argument("graphon")
    s.add_argument("--kmax", type=_int_at_least(3), default=16)
    s.set_defaults(func=cmd_cycles)

    s = sub.add_parser("cospectral", help="decide cospectrality; report or intertwiner")
    s.add_argument("u")
    s.add_argument("w")
    s.add_argument("--tol", type=_positive, default=MATCH_TOL)
    s.set_defaults(func=cmd_cospectral)

    s = sub.add_parser("cutnorm", help="exact cut norm of U - W")
    s.add_argument("u")
    s.add_argument("w")
    s.set_defaults(func=cmd_cutnorm)

    s = sub.add_parser("sample", help="draw a W-random graph")
    s.add_argument("graphon")
    s.add_argument("--n", type=_int_at_least(1), required=True)
    s.add_argument("--seed", type=_int_at_least(0), required=True)
    s.add_argument("--out", help="also write the graph as an edge list to this path")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("demo-theorem42", help="cospectral pair whose samples are never cospectral")
    s.add_argument("--seeds", type=_int_at_least(0), nargs="+", default=list(range(20)))
    s.add_argument("--ns", type=_int_at_least(1), nargs="+", default=[50, 100, 200])
    s.set_defaults(func=cmd_demo)

    s = sub.add_parser("density", help="homomorphism density t(F, W)")
    s.add_argument("pattern", help="graph as JSON or edge list")
    s.add_argument("graphon")
    s.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        result = args.func(args)
    except ValueError as exc:
        # input errors, guards and refusals all derive from ValueError
        log.error("%s", exc)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.error("computation failed: %s", exc)
        return 1
    sys.stdout.write(json.dumps(result) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
