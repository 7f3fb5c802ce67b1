"""Command-line front end.

Exit codes: 0 success, 1 internal failure, 2 invalid input or arguments.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import __version__, corpus, linalg, stateio
from .analysis import AnalysisTolerances, full_report
from .measurement import Projector, basis_projector, project, vector_projector
from .state_model import EntanglementError, ProjectorError, PureState


class UsageError(Exception):
    pass


def _read_state(path: str) -> PureState:
    if path == "-":
        return stateio.loads_state(sys.stdin.read())
    try:
        return stateio.load_state(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from exc


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _labels(text: str, option: str) -> list[int]:
    try:
        labels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"{option}: expected comma-separated particle labels, got {text!r}") from None
    if not labels:
        raise UsageError(f"{option}: no particle labels given")
    return labels


def _tolerances(args) -> AnalysisTolerances:
    base = args.tol if args.tol is not None else 1e-9
    vals = {
        "schmidt_tol": args.schmidt_tol if args.schmidt_tol is not None else base,
        "rank_tol": args.rank_tol if args.rank_tol is not None else base,
        "product_tol": args.product_tol if args.product_tol is not None else base,
    }
    for name, v in vals.items():
        if not v > 0:
            raise UsageError(f"--{name.replace('_', '-')}: must be positive")
    return AnalysisTolerances(**vals)


def parse_projector(spec: str, particle: int, dim: int) -> Projector:
    """``"0,2"`` projects onto span{|0>,|2>}; ``"0+2"`` onto (|0>+|2>)/sqrt(2)."""
    spec = spec.strip()
    try:
        if "+" in spec:
            v = np.zeros(dim)
            for part in spec.split("+"):
                level = int(part)
                if not 0 <= level < dim:
                    raise ProjectorError(f"basis level {level} out of range for dimension {dim}")
                v[level] += 1.0
            return vector_projector(particle, v)
        levels = [int(x) for x in spec.split(",")]
    except ValueError:
        raise ProjectorError(f"malformed projector spec {spec!r}") from None
    if len(set(levels)) != len(levels):
        raise ProjectorError(f"projector spec {spec!r} repeats a level")
    return basis_projector(particle, dim, levels)


def cmd_analyze(args) -> int:
    state = _read_state(args.file)
    report = full_report(state, _tolerances(args))
    if args.format == "json":
        sys.stdout.write(stateio.dumps_report(report, state))
    else:
        sys.stdout.write(stateio.render_report(report))
    return 0


def _basis_labels(dims) -> list[str]:
    return [",".join(str(i) for i in idx) for idx in itertools.product(*(range(d) for d in dims))]


def cmd_reduce(args) -> int:
    state = _read_state(args.file)
    keep = _labels(args.keep, "--keep")
    rho = linalg.reduce(state, keep)
    basis = _basis_labels(rho.dims)
    m = rho.matrix
    if args.format == "json":
        doc = {
            "particles": list(rho.particles.indices),
            "dims": list(rho.dims),
            "basis": basis,
            "re": m.real.tolist(),
            "im": m.imag.tolist(),
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return 0
    width = max(12, max(len(b) for b in basis) + 2)
    lines = [f"reduced state on particles {rho.particles}  (basis |" + ";".join(
        str(i) for i in rho.particles.indices) + ">)"]
    lines.append(" " * width + "".join(f"{b:>{width}}" for b in basis))
    for b, row in zip(basis, m):
        cells = []
        for z in row:
            z = complex(np.round(z.real, 12), np.round(z.imag, 12))
            cells.append(f"{z.real:.6g}" if z.imag == 0 else f"{z.real:.4g}{z.imag:+.4g}j")
        lines.append(f"{b:>{width}}" + "".join(f"{c:>{width}}" for c in cells))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_measure(args) -> int:
    state = _read_state(args.file)
    if args.particle not in state.particles:
        raise UsageError(f"--particle: {args.particle} not in {state.particles.indices}")
    dim = state.particles.dim_of(args.particle)
    proj = parse_projector(args.project, args.particle, dim)
    prob, post = project(state, proj)
    sys.stdout.write(f"probability: {prob:.12g}\n")
    if post is None:
        sys.stdout.write("outcome impossible; no post-measurement state written\n")
    elif args.output:
        _write(stateio.dumps_state(post), args.output)
    return 0


def cmd_fixtures(args) -> int:
    if args.name not in corpus.FIXTURES:
        raise UsageError(f"unknown fixture {args.name!r}; choose from {', '.join(sorted(corpus.FIXTURES))}")
    _write(stateio.dumps_state(corpus.fixture(args.name)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="entstruct", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def tol_flags(sp):
        sp.add_argument("--tol", type=float, help="set all three tolerances (default 1e-9)")
        sp.add_argument("--schmidt-tol", type=float)
        sp.add_argument("--rank-tol", type=float)
        sp.add_argument("--product-tol", type=float)

    a = sub.add_parser("analyze", help="full entanglement report for a state file")
    a.add_argument("file", help="state file, or - for stdin")
    a.add_argument("--format", choices=["text", "json"], default="text")
    tol_flags(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", help="reduced density operator")
    r.add_argument("file")
    r.add_argument("--keep", required=True, help="1-based labels, e.g. 1,3")
    r.add_argument("--format", choices=["text", "json"], default="text")
    r.set_defaults(func=cmd_reduce)

    m = sub.add_parser("measure", help="projective measurement on one particle")
    m.add_argument("file")
    m.add_argument("--particle", type=int, required=True)
    m.add_argument("--project", required=True,
                   help="basis levels: '0,2' for span, '0+2' for the normalized sum")
    m.add_argument("-o", "--output", help="write the post-measurement state here")
    m.set_defaults(func=cmd_measure)

    f = sub.add_parser("fixtures", help="emit a reference state file")
    f.add_argument("name", help=", ".join(sorted(corpus.FIXTURES)))
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, EntanglementError) as exc:
        print(f"entstruct {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover
        print(f"entstruct {args.command}: internal error: {exc!r}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
