"""Dense complex eigensolver and particle-number sector diagonalization.

``eig`` reduces to upper Hessenberg form with Householder reflections, runs
single-shift complex QR sweeps (Wilkinson shift, exceptional shifts on
stagnation) with deflation to reach a Schur form ``A = Z T Z^H``, and then
obtains each eigenvector by back substitution in ``T``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ConvergenceError, DimensionError, NotFoundError, PreconditionError
from .pauli import PauliSum, number_leakage, parity_sign, to_matrix

MAX_DIM = 1024
SWEEPS_PER_DIM = 100
REGULARIZATION = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues with matching unit-norm right eigenvectors in columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __len__(self):
        return len(self.eigenvalues)

    def nearest(self, target: complex) -> int:
        """Index of the eigenvalue closest to ``target``; ties go to sort order."""
        return int(np.argmin(np.abs(self.eigenvalues - target)))


@dataclass(frozen=True)
class SectorDecomposition(EigenDecomposition):
    """Eigenpairs of one Hamming-weight block, vectors embedded in the full space."""

    basis_indices: np.ndarray = None
    n_electrons: int = 0


@numba.njit(cache=True)
def _hessenberg(a):
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = a[k + 1 :, k].copy()
        xnorm = np.sqrt(np.sum(np.abs(x) ** 2))
        if xnorm == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0 + 0j
        v = x
        v[0] = x0 + phase * xnorm
        vnorm = np.sqrt(np.sum(np.abs(v) ** 2))
        v /= vnorm
        # A <- P A P with P = I - 2 v v^H acting on rows/cols k+1:
        w = v.conj() @ np.ascontiguousarray(a[k + 1 :, :])
        a[k + 1 :, :] -= 2.0 * np.outer(v, w)
        w = np.ascontiguousarray(a[:, k + 1 :]) @ v
        a[:, k + 1 :] -= 2.0 * np.outer(w, v.conj())
        w = np.ascontiguousarray(q[:, k + 1 :]) @ v
        q[:, k + 1 :] -= 2.0 * np.outer(w, v.conj())
        a[k + 2 :, k] = 0.0
    return a, q


@numba.njit(cache=True)
def _givens(a, b):
    r = np.sqrt(abs(a) ** 2 + abs(b) ** 2)
    if r == 0.0:
        return 1.0 + 0j, 0.0 + 0j
    return a / r, b / r


@numba.njit(cache=True)
def _schur(h, z, max_sweeps):
    """In-place QR iteration on Hessenberg ``h``; returns sweeps used or -1."""
    n = h.shape[0]
    hnorm = np.sqrt(np.sum(np.abs(h) ** 2))
    cs = np.empty(n, dtype=np.complex128)
    sn = np.empty(n, dtype=np.complex128)
    sweeps = 0
    its = 0
    hi = n - 1
    while hi > 0:
        l = hi
        while l > 0:
            scale = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if scale == 0.0:
                scale = hnorm
            if abs(h[l, l - 1]) <= _EPS * scale:
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            its = 0
            continue
        if sweeps >= max_sweeps:
            return -1
        sweeps += 1
        its += 1
        if its % 11 == 10:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1].real) + 0.75j * abs(h[hi, hi - 1].imag)
        else:
            p = h[hi - 1, hi - 1]
            q = h[hi - 1, hi]
            r = h[hi, hi - 1]
            d = h[hi, hi]
            m = 0.5 * (p + d)
            disc = cmath.sqrt(0.25 * (p - d) ** 2 + q * r)
            mu1 = m + disc
            mu2 = m - disc
            mu = mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2
        for k in range(l, hi + 1):
            h[k, k] -= mu
        for k in range(l, hi):
            c, s = _givens(h[k, k], h[k + 1, k])
            cs[k] = c
            sn[k] = s
            for j in range(k, n):
                t1 = h[k, j]
                t2 = h[k + 1, j]
                h[k, j] = c.conjugate() * t1 + s.conjugate() * t2
                h[k + 1, j] = -s * t1 + c * t2
            h[k + 1, k] = 0.0
        for k in range(l, hi):
            c = cs[k]
            s = sn[k]
            top = min(k + 2, hi)
            for i in range(0, top + 1):
                t1 = h[i, k]
                t2 = h[i, k + 1]
                h[i, k] = t1 * c + t2 * s
                h[i, k + 1] = -t1 * s.conjugate() + t2 * c.conjugate()
            for i in range(n):
                t1 = z[i, k]
                t2 = z[i, k + 1]
                z[i, k] = t1 * c + t2 * s
                z[i, k + 1] = -t1 * s.conjugate() + t2 * c.conjugate()
        for k in range(l, hi + 1):
            h[k, k] += mu
    return sweeps


@numba.njit(cache=True)
def _triangular_eigenvectors(t, reg):
    n = t.shape[0]
    tnorm = np.sqrt(np.sum(np.abs(t) ** 2))
    smin = max(reg * tnorm, 1e-300)
    y = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        lam = t[k, k]
        y[k, k] = 1.0
        for j in range(k - 1, -1, -1):
            acc = 0j
            for m in range(j + 1, k + 1):
                acc += t[j, m] * y[m, k]
            d = t[j, j] - lam
            if abs(d) < smin:
                d = smin
            y[j, k] = -acc / d
            big = np.max(np.abs(y[j : k + 1, k]))
            if big > 1e100:
                y[j : k + 1, k] /= big
    return y


def _sort_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((-values.imag, -values.real))


def eig(m) -> EigenDecomposition:
    """Eigenvalues and unit-norm right eigenvectors of a square complex matrix.

    Eigenvalues are sorted by descending real part, ties by descending
    imaginary part.

    Raises
    ------
    DimensionError
        If ``m`` is not square or exceeds ``MAX_DIM``.
    ConvergenceError
        If the QR iteration needs more than ``100 * dim`` sweeps.
    """
    a = np.array(m, dtype=np.complex128, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"eig needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimensionError(f"dimension {n} exceeds {MAX_DIM}")
    if n == 0:
        return EigenDecomposition(np.zeros(0, complex), np.zeros((0, 0), complex))
    h, z = _hessenberg(a)
    used = _schur(h, z, SWEEPS_PER_DIM * n)
    if used < 0:
        raise ConvergenceError(f"QR iteration did not converge in {SWEEPS_PER_DIM * n} sweeps")
    t = np.triu(h)
    values = np.diag(t).copy()
    vecs = z @ _triangular_eigenvectors(t, REGULARIZATION)
    vecs /= np.linalg.norm(vecs, axis=0)
    order = _sort_order(values)
    return EigenDecomposition(values[order], vecs[:, order])


def eigvals(m) -> np.ndarray:
    return eig(m).eigenvalues


def eigvec_for(m, target: complex, tol: float = 1e-3) -> tuple[complex, np.ndarray]:
    """Eigenvalue nearest ``target`` and its unit-norm right eigenvector."""
    dec = eig(m)
    k = dec.nearest(target)
    if abs(dec.eigenvalues[k] - target) > tol:
        raise NotFoundError(f"no eigenvalue within {tol} of {target}; nearest is {dec.eigenvalues[k]}")
    return complex(dec.eigenvalues[k]), dec.eigenvectors[:, k]


def sector_indices(n_qubits: int, n_electrons: int) -> np.ndarray:
    idx = np.arange(1 << n_qubits, dtype=np.int64)
    return idx[np.bitwise_count(idx) == n_electrons]


def sector_matrix(h: PauliSum, n_electrons: int) -> tuple[np.ndarray, np.ndarray]:
    """Block of ``h`` on basis states with ``n_electrons`` occupied orbitals."""
    n = h.n_qubits
    if not 0 <= n_electrons <= n:
        raise ValueError(f"n_electrons must lie in [0, {n}], got {n_electrons}")
    cols = sector_indices(n, n_electrons)
    pos = np.full(1 << n, -1, dtype=np.int64)
    pos[cols] = np.arange(len(cols))
    block = np.zeros((len(cols), len(cols)), dtype=complex)
    col_pos = np.arange(len(cols))
    for ps, c in h:
        rows = pos[cols ^ ps.x_mask]
        keep = rows >= 0
        sign = parity_sign(cols & ps.z_mask)
        vals = c * (1j ** ps.n_y) * sign
        np.add.at(block, (rows[keep], col_pos[keep]), vals[keep])
    return block, cols


def sector_eig(h: PauliSum, n_electrons: int, tol: float = 1e-8) -> SectorDecomposition:
    """Diagonalize the fixed-particle-number block of a number-conserving sum.

    Eigenvectors are returned embedded in the full ``2**n`` space.
    """
    leak = number_leakage(h)
    if leak > tol:
        raise PreconditionError(f"Hamiltonian does not conserve particle number (leakage {leak:.3e})")
    block, cols = sector_matrix(h, n_electrons)
    dec = eig(block)
    full = np.zeros((1 << h.n_qubits, len(cols)), dtype=complex)
    full[cols, :] = dec.eigenvectors
    return SectorDecomposition(dec.eigenvalues, full, cols, n_electrons)


def full_eig(h: PauliSum) -> EigenDecomposition:
    return eig(to_matrix(h))
