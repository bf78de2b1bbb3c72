"""Complex-rotated one-dimensional model Hamiltonian in a Gaussian basis.

The model potential is ``V(x) = (x^2/2 - J) exp(-lam x^2) + J``. Under the
rotation ``x -> x exp(i theta)`` the kinetic operator picks up
``eta^2 = exp(-2 i theta)`` and the potential is evaluated along the rotated
coordinate ``x / eta``. The scaling parameter ``alpha`` lives in the basis
exponents ``alpha * ratio**k``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, DomainError
from .pauli import PauliSum, jw_one_body

SQRT_PI = np.sqrt(np.pi)


@dataclass(frozen=True)
class ModelParams:
    alpha: float = 0.65
    theta: float = 0.16
    n_basis: int = 5
    lam: float = 0.1
    J: float = 0.8
    ratio: float = 0.45

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.theta < 0:
            raise ValueError(f"theta must be non-negative, got {self.theta}")
        if int(self.n_basis) != self.n_basis or self.n_basis < 1:
            raise ValueError(f"n_basis must be a positive integer, got {self.n_basis}")
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")

    @property
    def eta(self) -> complex:
        return complex(np.exp(-1j * self.theta))

    @property
    def exponents(self) -> np.ndarray:
        return self.alpha * self.ratio ** np.arange(self.n_basis)


@dataclass(frozen=True)
class OrthoBasis:
    """Orthonormal functions ``psi_i = sum_k coeffs[i, k] exp(-exponents[k] x^2)``."""

    exponents: np.ndarray
    coeffs: np.ndarray

    def gram(self) -> np.ndarray:
        s = overlap(self.exponents[:, None], self.exponents[None, :])
        return self.coeffs @ s @ self.coeffs.T

    def project(self, primitive: np.ndarray) -> np.ndarray:
        """Transform a matrix over primitive Gaussians into this basis."""
        return self.coeffs @ primitive @ self.coeffs.T


def overlap(a, b):
    """``int exp(-(a + b) x^2) dx`` over the real line."""
    c = np.asarray(a) + np.asarray(b)
    if np.any(c <= 0):
        raise DomainError("combined Gaussian exponent must be positive")
    return np.sqrt(np.pi / c)


def kinetic(a, b, eta=1.0):
    """``<exp(-a x^2)| -eta^2 d^2/dx^2 / 2 |exp(-b x^2)>``."""
    a, b = np.asarray(a), np.asarray(b)
    if np.any(a <= 0) or np.any(b <= 0):
        raise DomainError("Gaussian exponents must be positive")
    c = a + b
    return eta**2 * (a * b / c) * np.sqrt(np.pi / c)


def potential(a, b, params: ModelParams):
    """Matrix element of the rotated model potential between two Gaussians.

    With ``s = 1/eta`` the integrand is ``((s x)^2/2 - J) exp(-(a + b + lam s^2) x^2)
    + J exp(-(a + b) x^2)``. The Gaussian moments are continued to the complex
    exponent on the principal branch, which requires a positive real part.
    """
    a, b = np.asarray(a), np.asarray(b)
    s2 = np.exp(2j * params.theta)
    c = a + b
    cs = c + params.lam * s2
    if np.any(cs.real <= 0):
        raise DomainError(f"Re(a + b + lam e^(2i theta)) must be positive; theta={params.theta} too large")
    # int x^2 e^{-c x^2} = sqrt(pi) / (2 c^{3/2})
    quad = 0.5 * s2 * SQRT_PI / (2 * cs**1.5)
    return quad - params.J * np.sqrt(np.pi / cs) + params.J * np.sqrt(np.pi / c)


def gram_schmidt(exponents, tol: float = 1e-12) -> OrthoBasis:
    """Orthonormalize Gaussians in the order given.

    Classical Gram-Schmidt with one re-orthogonalization pass.
    """
    ex = np.asarray(exponents, dtype=float)
    if len(np.unique(ex)) != len(ex):
        raise DegeneracyError("Gaussian exponents must be pairwise distinct")
    s = overlap(ex[:, None], ex[None, :])
    n = len(ex)
    C = np.zeros((n, n))
    for k in range(n):
        g = np.zeros(n)
        g[k] = 1.0
        for _ in range(2):
            proj = C[:k] @ s @ g
            g = g - proj @ C[:k]
        norm2 = g @ s @ g
        if norm2 < tol**2:
            raise DegeneracyError(f"basis function {k} is numerically dependent (norm {np.sqrt(max(norm2, 0)):.3e})")
        C[k] = g / np.sqrt(norm2)
    return OrthoBasis(ex, C)


def build_matrix(params: ModelParams) -> np.ndarray:
    """One-electron matrix ``h_ij = <psi_i|T(eta) + V(x/eta)|psi_j>``."""
    basis = gram_schmidt(params.exponents)
    a = basis.exponents[:, None]
    b = basis.exponents[None, :]
    prim = kinetic(a, b, params.eta) + potential(a, b, params)
    return basis.project(prim)


def build_pauli(params: ModelParams) -> PauliSum:
    return jw_one_body(build_matrix(params))
