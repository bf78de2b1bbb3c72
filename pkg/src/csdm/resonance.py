"""Recover complex eigenvalues from ancilla-zero probabilities and scan theta trajectories.

Three ways of pairing a second circuit with the first are supported:

``shift``
    ``H`` and ``H + x I``. The phase follows from ``|x + E|^2``.
``cubic``
    ``K = H - c_I I`` and ``K + K^3``, where ``c_I`` is the identity
    coefficient of ``H``. Both circuits share the Pauli support of ``K``.
``square``
    ``K^2`` and ``K^2 + K^4``.

For ``cubic`` and ``square`` the recovered eigenvalue of ``K`` is shifted back
by ``c_I``. Those two only determine the phase of ``K``'s eigenvalue up to the
half-plane ``Re > 0``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .cxlinalg import sector_eig
from .errors import InconsistentProbabilitiesError, ZeroMagnitudeError
from .lcu import run_direct_measurement
from .pauli import LcuHamiltonian, PauliSum, to_lcu

VARIANTS = ("shift", "cubic", "square")
CLAMP_SLACK = 1e-9
CSV_COLUMNS = ("alpha", "theta", "re_E", "im_E", "speed", "re_E_diag", "im_E_diag")


@dataclass(frozen=True)
class RecoveryInputs:
    p: float
    p_prime: float
    A: float
    A_prime: float
    x: float = 1.0
    shift: complex = 0j
    branch: int = -1
    slack: float = CLAMP_SLACK

    def __post_init__(self):
        for name in ("p", "p_prime"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not (self.A > 0 and self.A_prime > 0):
            raise ValueError("A and A_prime must be positive")
        if self.branch not in (-1, 1):
            raise ValueError(f"branch must be +1 or -1, got {self.branch}")


def _clamped_arccos(arg: float, slack: float) -> float:
    if not -1.0 - slack <= arg <= 1.0 + slack:
        raise InconsistentProbabilitiesError(
            f"arccos argument {arg:.12g} outside [-1, 1] by more than {slack:g}"
        )
    return math.acos(min(1.0, max(-1.0, arg)))


def _need_signal(inp: RecoveryInputs):
    if inp.p <= 0.0:
        raise ZeroMagnitudeError("p = 0: the input state has no overlap with the success branch")


def recover_shift(inp: RecoveryInputs) -> complex:
    """Eigenvalue from ``p = |E|^2/A^2`` and ``p' = |x + E|^2/A'^2``.

    ``branch`` is the sign of the imaginary part of the result.
    """
    _need_signal(inp)
    if inp.x == 0:
        raise ValueError("shift x must be non-zero")
    mag = math.sqrt(inp.p) * inp.A
    num = inp.p_prime * inp.A_prime**2 - inp.x**2 - mag**2
    angle = _clamped_arccos(num / (2 * inp.x * mag), inp.slack)
    return inp.shift + mag * complex(math.cos(angle), inp.branch * math.sin(angle))


def recover_cubic(inp: RecoveryInputs) -> complex:
    """Eigenvalue from ``p = |E|^2/A^2`` and ``p' = |E + E^3|^2/A'^2``, plus ``shift``."""
    _need_signal(inp)
    p, A = inp.p, inp.A
    arg = inp.p_prime * inp.A_prime**2 / (2 * p**2 * A**4) - 1 / (2 * p * A**2) - p * A**2 / 2
    angle = _clamped_arccos(arg, inp.slack)
    return inp.shift + math.sqrt(p) * A * np.exp(inp.branch * 0.5j * angle)


def recover_square(inp: RecoveryInputs) -> complex:
    """Eigenvalue ``E`` from circuits for ``E^2``: ``p = |E^2|^2/A^2``, ``p' = |E^2 + E^4|^2/A'^2``."""
    _need_signal(inp)
    p, A = inp.p, inp.A
    sp = math.sqrt(p)
    arg = inp.p_prime * inp.A_prime**2 / (2 * p * sp * A**3) - 1 / (2 * sp * A) - sp * A / 2
    angle = _clamped_arccos(arg, inp.slack)
    return inp.shift + p**0.25 * math.sqrt(A) * np.exp(inp.branch * 0.5j * angle)


RECOVER = {"shift": recover_shift, "cubic": recover_cubic, "square": recover_square}


@dataclass(frozen=True)
class CircuitPair:
    """The two LCU circuits of one recovery variant."""

    variant: str
    primary: LcuHamiltonian
    secondary: LcuHamiltonian
    shift: complex
    x: Optional[float] = None


def circuit_pair(h: PauliSum, variant: str = "shift", x: float = 1.0) -> CircuitPair:
    if variant == "shift":
        return CircuitPair(variant, to_lcu(h), to_lcu(h + x), 0j, x)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    k = h.without_identity()
    if variant == "square":
        k = k @ k
    aux = k + k @ k @ k if variant == "cubic" else k + k @ k
    return CircuitPair(variant, to_lcu(k), to_lcu(aux), complex(h.identity_coefficient))


@dataclass(frozen=True)
class Measurement:
    variant: str
    energy: complex
    alternate: complex
    branch: int
    p: float
    p_prime: float
    A: float
    A_prime: float
    shift: complex
    x: Optional[float]
    mode: str
    shots: int
    seed: Optional[int]

    @property
    def position(self) -> float:
        return self.energy.real

    @property
    def width(self) -> float:
        return -2.0 * self.energy.imag


def measure_eigenvalue(
    h: PauliSum,
    phi,
    variant: str = "shift",
    mode: str = "exact",
    shots: int = 0,
    seed: int | None = None,
    x: float = 1.0,
    branch: int = -1,
    slack: float = CLAMP_SLACK,
    pair: CircuitPair | None = None,
) -> Measurement:
    """Run both circuits of ``variant`` on eigenstate ``phi`` and invert the probabilities."""
    pair = pair or circuit_pair(h, variant, x)
    seeds = (None, None)
    if mode == "shots":
        if seed is None:
            raise ValueError("seed is required in shots mode")
        seeds = tuple(int(s) for s in np.random.SeedSequence(seed).generate_state(2))
    first = run_direct_measurement(pair.primary, phi, mode, shots, seeds[0])
    second = run_direct_measurement(pair.secondary, phi, mode, shots, seeds[1])
    values = {}
    for b in (branch, -branch):
        inp = RecoveryInputs(
            first.p0, second.p0, pair.primary.A, pair.secondary.A,
            x=pair.x if pair.x is not None else 1.0, shift=pair.shift, branch=b, slack=slack,
        )
        values[b] = complex(RECOVER[pair.variant](inp))
    return Measurement(
        pair.variant, values[branch], values[-branch], branch, first.p0, second.p0,
        pair.primary.A, pair.secondary.A, pair.shift, pair.x, mode, shots, seed,
    )


@dataclass
class TrajectoryPoint:
    alpha: float
    theta: float
    energy: complex
    speed: float = 0.0
    energy_diag: complex = 0j
    central: bool = False
    warning: Optional[str] = None

    @property
    def position(self) -> float:
        return self.energy.real

    @property
    def width(self) -> float:
        return -2.0 * self.energy.imag


Builder = Callable[[float, float], PauliSum]


def trajectory_scan(
    builder: Builder,
    alpha: float,
    thetas: Sequence[float],
    seed_target: complex,
    n_electrons: int = 1,
    variant: str = "shift",
    mode: str = "exact",
    shots: int = 0,
    seed: int | None = None,
    x: float = 1.0,
    jump_tol: float = 0.5,
) -> list[TrajectoryPoint]:
    """Follow one complex eigenvalue of ``builder(alpha, theta)`` across ``thetas``.

    At each angle the eigenvalue nearest the previous point (``seed_target``
    at the first angle) is selected in the ``n_electrons`` sector, its
    eigenvector is fed to the circuits, and the energy is recovered from the
    measured probabilities. The probabilities cannot distinguish ``E`` from
    its complex conjugate, so of the two branches the one nearer the
    eigenvalue used to prepare the input state is kept.
    """
    thetas = [float(t) for t in thetas]
    if not thetas:
        raise ValueError("theta grid is empty")
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ValueError("thetas must be strictly increasing")
    points: list[TrajectoryPoint] = []
    target = complex(seed_target)
    for k, theta in enumerate(thetas):
        h = builder(alpha, theta)
        dec = sector_eig(h, n_electrons)
        idx = dec.nearest(target)
        lam = complex(dec.eigenvalues[idx])
        phi = dec.eigenvectors[:, idx]
        phi = phi / np.linalg.norm(phi)
        warning = None
        if k > 0 and abs(lam - target) > jump_tol:
            warning = f"trajectory break: eigenvalue jumped {abs(lam - target):.3f} Hartree"
        shot_seed = None if seed is None else seed + k
        m = measure_eigenvalue(h, phi, variant, mode, shots, shot_seed, x)
        energy = min((m.energy, m.alternate), key=lambda e: abs(e - lam))
        points.append(TrajectoryPoint(alpha, theta, energy, 0.0, lam, False, warning))
        target = lam
    _fill_speeds(points)
    return points


def _fill_speeds(points: list[TrajectoryPoint]):
    n = len(points)
    if n < 2:
        return
    for k, pt in enumerate(points):
        lo, hi = max(k - 1, 0), min(k + 1, n - 1)
        pt.central = 0 < k < n - 1
        pt.speed = abs(points[hi].energy - points[lo].energy) / (points[hi].theta - points[lo].theta)


def scan_grid(
    builder: Builder,
    alphas: Sequence[float],
    thetas: Sequence[float],
    seed_target: complex,
    n_jobs: int = 1,
    **kwargs,
) -> list[list[TrajectoryPoint]]:
    """One trajectory per alpha; trajectories run concurrently when ``n_jobs > 1``."""
    if len(alphas) == 0:
        raise ValueError("alpha grid is empty")

    def one(alpha):
        return trajectory_scan(builder, alpha, thetas, seed_target, **kwargs)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            return list(pool.map(one, alphas))
    return [one(a) for a in alphas]


def stationary_point(trajectories: Sequence[Sequence[TrajectoryPoint]]) -> TrajectoryPoint:
    """Point with the smallest finite-difference speed ``|dE/dtheta|``.

    Only central differences compete when any trajectory has three or more
    points. Ties go to the smaller theta, then the smaller alpha.
    """
    usable = [t for t in trajectories if len(t) >= 2]
    if not usable:
        raise ValueError("need at least one trajectory with two or more points")
    pool = [p for t in usable for p in t]
    if any(p.central for p in pool):
        pool = [p for p in pool if p.central]
    return min(pool, key=lambda p: (p.speed, p.theta, p.alpha))


def _row(p: TrajectoryPoint) -> list:
    return [p.alpha, p.theta, p.energy.real, p.energy.imag, p.speed, p.energy_diag.real, p.energy_diag.imag]


def to_csv(points: Sequence[TrajectoryPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in points:
        w.writerow([repr(float(v)) for v in _row(p)])
    return buf.getvalue()


def to_json(points: Sequence[TrajectoryPoint], metadata: dict | None = None) -> str:
    """JSON mirror of :func:`to_csv` with run metadata; key order is stable."""
    rows = []
    for p in points:
        d = dict(zip(CSV_COLUMNS, (float(v) for v in _row(p))))
        d["central"] = p.central
        if p.warning:
            d["warning"] = p.warning
        rows.append(d)
    return json.dumps({"metadata": metadata or {}, "points": rows}, sort_keys=True, indent=2) + "\n"
