"""Command-line driver: ``csdm build``, ``csdm measure``, ``csdm scan``.

Exit codes: 0 success, 1 runtime error, 2 usage or validation error.
Relative output paths resolve against ``$CSDM_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, hamio
from .cxlinalg import sector_eig
from .errors import (
    ConvergenceError,
    DegeneracyError,
    InconsistentProbabilitiesError,
    NotFoundError,
    PreconditionError,
    ZeroMagnitudeError,
)
from .gauss1d import ModelParams, build_pauli
from .plot import trajectories_svg
from .resonance import (
    CLAMP_SLACK,
    VARIANTS,
    measure_eigenvalue,
    scan_grid,
    stationary_point,
    to_csv,
    to_json,
)

OUTPUT_ENV = "CSDM_OUTPUT_DIR"
DEFAULT_TARGETS = {"model": 2.12, "model_n5": 2.12, "h2minus": -1.0}
DEFAULT_PAUSE_THRESHOLD = 0.05


class UsageError(Exception):
    pass


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _grid(text: str) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        try:
            start, stop, step = (float(v) for v in text.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad grid {text!r}; use start:stop:step") from None
        if step <= 0 or stop < start:
            raise argparse.ArgumentTypeError(f"bad grid {text!r}")
        count = int(round((stop - start) / step)) + 1
        return [round(start + k * step, 10) for k in range(count)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None


def _out_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _cjson(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _model_args(p: argparse.ArgumentParser, required: bool = False):
    g = p.add_argument_group("model system")
    g.add_argument("--n", type=int, default=None if not required else 5, help="number of Gaussian basis functions")
    g.add_argument("--alpha", type=float, default=0.65)
    g.add_argument("--theta", type=float, default=0.16)
    g.add_argument("--lam", type=float, default=0.1)
    g.add_argument("--J", type=float, default=0.8)
    g.add_argument("--ratio", type=float, default=0.45)


def _source_args(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--hamiltonian", metavar="FILE", help=".pham file to load")
    src.add_argument("--fixture", choices=sorted(hamio.FIXTURES), help="bundled Hamiltonian")
    p.add_argument("--electrons", type=int, default=None, help="particle-number sector (default: from file, else 1)")


def _circuit_args(p: argparse.ArgumentParser):
    p.add_argument("--variant", choices=VARIANTS, default="shift")
    p.add_argument("--mode", choices=("exact", "shots"), default="exact")
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--x", type=float, default=1.0, help="identity shift for the shift variant (Hartree)")
    p.add_argument("--clamp-slack", type=float, default=CLAMP_SLACK)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="csdm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the rotated model Hamiltonian as a .pham file")
    _model_args(b, required=True)
    b.add_argument("-o", "--output", help="output path (default: model_n{n}.pham)")

    m = sub.add_parser("measure", help="recover one complex eigenvalue through the circuits")
    _source_args(m)
    _model_args(m)
    _circuit_args(m)
    m.add_argument("--branch", choices=("-", "+"), default="-")
    m.add_argument("--target", type=_complex, default=None, help="eigenvalue to pick the input eigenstate")
    m.add_argument("--json", metavar="FILE")

    s = sub.add_parser("scan", help="theta trajectories and their stationary point")
    _source_args(s)
    _model_args(s)
    _circuit_args(s)
    s.add_argument("--alphas", type=_grid, default=None, help="start:stop:step or a,b,c")
    s.add_argument("--thetas", type=_grid, default=None)
    s.add_argument("--seed-target", type=_complex, default=None)
    s.add_argument("--pause-threshold", type=float, default=DEFAULT_PAUSE_THRESHOLD)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--csv", metavar="FILE")
    s.add_argument("--json", metavar="FILE")
    s.add_argument("--svg", metavar="FILE")
    return parser


def _params(args, alpha=None, theta=None) -> ModelParams:
    return ModelParams(
        alpha=args.alpha if alpha is None else alpha,
        theta=args.theta if theta is None else theta,
        n_basis=args.n if args.n is not None else 5,
        lam=args.lam, J=args.J, ratio=args.ratio,
    )


def _provenance(args, source: dict) -> dict:
    return {
        "version": __version__,
        "command": args.command,
        "source": source,
        "fixture_sha256": {name: hamio.fixture_checksum(name) for name in sorted(hamio.FIXTURES)},
    }


def _load_source(args):
    """Return ``(hamiltonian_or_None, metadata, source_dict, default_target)``."""
    if args.hamiltonian:
        hf = hamio.read(args.hamiltonian)
        return hf.hamiltonian, hf.metadata, {"file": str(args.hamiltonian)}, None
    if args.fixture:
        hf = hamio.load_fixture(args.fixture)
        src = {"fixture": args.fixture, "sha256": hamio.fixture_checksum(args.fixture)}
        return hf.hamiltonian, hf.metadata, src, DEFAULT_TARGETS[args.fixture]
    src = {"model": {"n": args.n or 5, "alpha": args.alpha, "theta": args.theta,
                     "lam": args.lam, "J": args.J, "ratio": args.ratio}}
    return None, {}, src, DEFAULT_TARGETS["model"]


def _electrons(args, metadata) -> int:
    if args.electrons is not None:
        return args.electrons
    return int(metadata.get("n_electrons", 1))


def cmd_build(args) -> int:
    params = _params(args)
    h = build_pauli(params)
    meta = {
        "system": f"1D model potential, lam={params.lam}, J={params.J}",
        "basis": f"{params.n_basis} Gram-Schmidt orthogonalized Gaussians, exponents alpha*{params.ratio}^k",
        "theta": f"{params.theta}",
        "alpha": f"{params.alpha}",
        "n_qubits": str(h.n_qubits),
        "n_electrons": "1",
    }
    path = _out_path(args.output or f"model_n{params.n_basis}.pham")
    hamio.write(path, h, meta)
    print(f"wrote {len(h)} terms on {h.n_qubits} qubits to {path}")
    return 0


def cmd_measure(args) -> int:
    h, meta, source, target = _load_source(args)
    if h is None:
        h = build_pauli(_params(args))
    target = args.target if args.target is not None else target
    if target is None:
        raise UsageError("--target is required for --hamiltonian input")
    dec = sector_eig(h, _electrons(args, meta))
    k = dec.nearest(target)
    lam = complex(dec.eigenvalues[k])
    phi = dec.eigenvectors[:, k] / np.linalg.norm(dec.eigenvectors[:, k])
    branch = -1 if args.branch == "-" else 1
    m = measure_eigenvalue(
        h, phi, args.variant, args.mode, args.shots if args.mode == "shots" else 0,
        args.seed if args.mode == "shots" else None, args.x, branch, args.clamp_slack,
    )
    err = abs(m.energy - lam)
    print(f"E_theta   = {m.energy.real:.6f} {m.energy.imag:+.6f}i Hartree  (branch {args.branch})")
    print(f"other     = {m.alternate.real:.6f} {m.alternate.imag:+.6f}i Hartree")
    print(f"E         = {m.position:.6f} Hartree")
    print(f"Gamma     = {m.width:.6f} Hartree")
    print(f"diag      = {lam.real:.6f} {lam.imag:+.6f}i Hartree  |error| = {err:.3e}")
    print(f"variant={m.variant} mode={m.mode} shots={m.shots} p={m.p:.8f} p'={m.p_prime:.8f} A={m.A:.6f} A'={m.A_prime:.6f}")
    if args.json:
        doc = _provenance(args, source)
        doc.update({
            "variant": m.variant, "mode": m.mode, "shots": m.shots,
            "seed": args.seed if args.mode == "shots" else None,
            "x": m.x, "branch": args.branch,
            "energy": _cjson(m.energy), "alternate": _cjson(m.alternate),
            "position": m.position, "width": m.width,
            "p": m.p, "p_prime": m.p_prime, "A": m.A, "A_prime": m.A_prime,
            "shift": _cjson(m.shift), "diagonalization": _cjson(lam), "error": err,
        })
        _out_path(args.json).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    return 0


def cmd_scan(args) -> int:
    h, meta, source, target = _load_source(args)
    target = args.seed_target if args.seed_target is not None else target
    if target is None:
        raise UsageError("--seed-target is required for --hamiltonian input")
    if h is not None:
        # a tabulated Hamiltonian exists at one (alpha, theta) only
        alphas = [float(meta.get("alpha", 1.0))]
        thetas = [float(meta.get("theta", 0.0))]

        def builder(alpha, theta):
            return h
    else:
        alphas = args.alphas if args.alphas is not None else [args.alpha]
        thetas = args.thetas if args.thetas is not None else _grid("0.10:0.24:0.01")

        def builder(alpha, theta):
            return build_pauli(_params(args, alpha, theta))

    if not alphas or not thetas:
        raise UsageError("alpha and theta grids must be non-empty")
    trajectories = scan_grid(
        builder, alphas, thetas, target, n_jobs=args.jobs,
        n_electrons=_electrons(args, meta), variant=args.variant, mode=args.mode,
        shots=args.shots if args.mode == "shots" else 0,
        seed=args.seed if args.mode == "shots" else None, x=args.x,
    )
    points = [p for t in trajectories for p in t]
    if any(len(t) >= 2 for t in trajectories):
        best = stationary_point(trajectories)
        pause = best.speed <= args.pause_threshold
    else:
        best, pause = points[0], False
    print(f"best point: alpha={best.alpha:g} theta={best.theta:g} "
          f"E_theta={best.energy.real:.6f} {best.energy.imag:+.6f}i Hartree")
    print(f"E = {best.position:.6f} Hartree, Gamma = {best.width:.6f} Hartree, speed = {best.speed:.4g} Hartree/rad")
    if not pause:
        print("not a pause point: trajectory speed above threshold or a single theta")
    for p in points:
        if p.warning:
            print(f"warning at alpha={p.alpha:g} theta={p.theta:g}: {p.warning}", file=sys.stderr)
    meta_out = _provenance(args, source)
    meta_out.update({
        "variant": args.variant, "mode": args.mode,
        "shots": args.shots if args.mode == "shots" else 0,
        "seed": args.seed if args.mode == "shots" else None,
        "x": args.x, "branch": "nearest-to-prepared-eigenvalue",
        "pause_threshold": args.pause_threshold, "pause": pause,
        "best": {"alpha": best.alpha, "theta": best.theta, "energy": _cjson(best.energy),
                 "position": best.position, "width": best.width, "speed": best.speed},
    })
    if args.csv:
        _out_path(args.csv).write_text(to_csv(points))
    if args.json:
        _out_path(args.json).write_text(to_json(points, meta_out))
    if args.svg:
        _out_path(args.svg).write_text(trajectories_svg(trajectories, best if pause else None))
    return 0


# failures of the computation itself; other ValueErrors are bad input
RUNTIME_ERRORS = (
    InconsistentProbabilitiesError, ZeroMagnitudeError, ConvergenceError,
    NotFoundError, PreconditionError, DegeneracyError, OSError,
)
COMMANDS = {"build": cmd_build, "measure": cmd_measure, "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except RUNTIME_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

if __name__ == "__main__":
    sys.exit(main())
