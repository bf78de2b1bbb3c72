"""Pauli-string algebra, Jordan-Wigner mapping and LCU decomposition.

Conventions
-----------
The leftmost character of a Pauli label acts on qubit 0, which is also
fermionic orbital 0. Qubit ``k`` of an ``n``-qubit register is bit
``n - 1 - k`` of a basis-state index, so the dense matrix of ``"XZ"`` is
``kron(X, Z)``. A qubit in state ``|1>`` is an occupied orbital.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import DimensionError

MAX_QUBITS = 16
MAX_MATRIX_QUBITS = 10
PRUNE_TOL = 1e-12

_LETTERS = "IXYZ"

# single-qubit products: (a, b) -> (phase, a*b)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


@dataclass(frozen=True, order=True)
class PauliString:
    """Tensor product of single-qubit Paulis, written as e.g. ``"YYIII"``."""

    ops: str

    def __post_init__(self):
        ops = self.ops
        if not isinstance(ops, str):
            ops = "".join(ops)
            object.__setattr__(self, "ops", ops)
        if not 1 <= len(ops) <= MAX_QUBITS:
            raise DimensionError(f"Pauli string length must be in [1, {MAX_QUBITS}], got {len(ops)}")
        bad = set(ops) - set(_LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters {sorted(bad)} in {ops!r}")

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls("I" * n_qubits)

    @classmethod
    def single(cls, op: str, qubit: int, n_qubits: int) -> "PauliString":
        return cls("I" * qubit + op + "I" * (n_qubits - qubit - 1))

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def is_identity(self) -> bool:
        return set(self.ops) <= {"I"}

    @property
    def x_mask(self) -> int:
        n = len(self.ops)
        return sum(1 << (n - 1 - k) for k, c in enumerate(self.ops) if c in "XY")

    @property
    def z_mask(self) -> int:
        n = len(self.ops)
        return sum(1 << (n - 1 - k) for k, c in enumerate(self.ops) if c in "ZY")

    @property
    def n_y(self) -> int:
        return self.ops.count("Y")

    def __str__(self):
        return self.ops

    def __len__(self):
        return len(self.ops)

    def to_matrix(self) -> np.ndarray:
        return to_matrix(PauliSum({self: 1.0}))


Label = Union[str, PauliString]


def _as_string(label: Label) -> PauliString:
    return label if isinstance(label, PauliString) else PauliString(label)


def pauli_mul(a: Label, b: Label) -> tuple[complex, PauliString]:
    """Multiply two Pauli strings.

    Returns ``(phase, product)`` with ``matrix(a) @ matrix(b) ==
    phase * matrix(product)`` and ``phase`` one of ``1, -1, 1j, -1j``.
    """
    a, b = _as_string(a), _as_string(b)
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"cannot multiply {a.n_qubits}- and {b.n_qubits}-qubit strings")
    phase = 1
    out = []
    for ca, cb in zip(a.ops, b.ops):
        p, c = _MUL[ca, cb]
        phase *= p
        out.append(c)
    return complex(phase), PauliString("".join(out))


class PauliSum:
    """Complex-weighted sum of Pauli strings on a fixed number of qubits.

    Coefficients with magnitude ``<= prune_tol`` are dropped on construction.
    Instances are immutable; term order is insertion order.
    """

    __slots__ = ("_terms", "_n_qubits", "prune_tol")

    def __init__(
        self,
        terms: Union[Mapping[Label, complex], Iterable[tuple[Label, complex]]] = (),
        n_qubits: int | None = None,
        prune_tol: float = PRUNE_TOL,
    ):
        if prune_tol < 0:
            raise ValueError("prune_tol must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[PauliString, complex] = {}
        for label, coeff in items:
            ps = _as_string(label)
            if n_qubits is None:
                n_qubits = ps.n_qubits
            elif ps.n_qubits != n_qubits:
                raise DimensionError(f"term {ps} does not act on {n_qubits} qubits")
            acc[ps] = acc.get(ps, 0j) + complex(coeff)
        if n_qubits is None:
            raise DimensionError("n_qubits is required for an empty PauliSum")
        self._terms = {k: v for k, v in acc.items() if abs(v) > prune_tol}
        self._n_qubits = int(n_qubits)
        self.prune_tol = prune_tol

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls({PauliString.identity(n_qubits): coeff})

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def terms(self) -> Mapping[PauliString, complex]:
        return MappingProxyType(self._terms)

    def coefficient(self, label: Label) -> complex:
        return self._terms.get(_as_string(label), 0j)

    @property
    def identity_coefficient(self) -> complex:
        return self.coefficient(PauliString.identity(self._n_qubits))

    def without_identity(self) -> "PauliSum":
        return PauliSum(
            [(k, v) for k, v in self._terms.items() if not k.is_identity],
            n_qubits=self._n_qubits,
            prune_tol=self.prune_tol,
        )

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __repr__(self):
        body = " + ".join(f"({v:.6g}) {k}" for k, v in self._terms.items())
        return f"PauliSum({body or '0'}, n_qubits={self._n_qubits})"

    def _check(self, other: "PauliSum"):
        if other.n_qubits != self._n_qubits:
            raise DimensionError(f"{self._n_qubits}-qubit sum combined with {other.n_qubits}-qubit sum")

    def __add__(self, other):
        if isinstance(other, PauliSum):
            self._check(other)
            return PauliSum(list(self) + list(other), self._n_qubits, self.prune_tol)
        if np.isscalar(other):
            return self + PauliSum.identity(self._n_qubits, other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return PauliSum([(k, v * scalar) for k, v in self], self._n_qubits, self.prune_tol)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return sum_mul(self, other)

    def __pow__(self, k: int):
        if k < 1:
            raise ValueError("only positive integer powers are supported")
        out = self
        for _ in range(k - 1):
            out = out @ self
        return out

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self._n_qubits == other._n_qubits and self._terms == other._terms

    __hash__ = None

    def allclose(self, other: "PauliSum", atol: float = 1e-12) -> bool:
        self._check(other)
        keys = set(self._terms) | set(other._terms)
        return all(abs(self.coefficient(k) - other.coefficient(k)) <= atol for k in keys)

    def to_matrix(self, max_qubits: int = MAX_MATRIX_QUBITS) -> np.ndarray:
        return to_matrix(self, max_qubits)


def sum_mul(a: PauliSum, b: PauliSum) -> PauliSum:
    """Operator product ``a @ b`` of two Pauli sums, pruned."""
    if a.n_qubits != b.n_qubits:
        raise DimensionError(f"cannot multiply {a.n_qubits}- and {b.n_qubits}-qubit sums")
    acc: dict[PauliString, complex] = {}
    for pa, ca in a:
        for pb, cb in b:
            phase, p = pauli_mul(pa, pb)
            acc[p] = acc.get(p, 0j) + phase * ca * cb
    return PauliSum(acc, n_qubits=a.n_qubits, prune_tol=min(a.prune_tol, b.prune_tol))


def number_operator(n: int) -> PauliSum:
    """Total occupation ``sum_j (I - Z_j) / 2``."""
    terms = [(PauliString.identity(n), n / 2)]
    terms += [(PauliString.single("Z", j, n), -0.5) for j in range(n)]
    return PauliSum(terms, n_qubits=n)


def jw_ladder(j: int, n: int, dagger: bool = False) -> PauliSum:
    """Jordan-Wigner image of ``a_j`` (or ``a_j^dagger``) on ``n`` orbitals.

    ``a_j^dagger = (X_j - iY_j)/2 (x) Z_{j-1} ... Z_0``; the annihilator takes
    the ``+`` sign.
    """
    if not 0 <= j < n:
        raise IndexError(f"orbital {j} out of range for {n} orbitals")
    tail = "Z" * j
    rest = "I" * (n - j - 1)
    sign = -1 if dagger else 1
    return PauliSum({tail + "X" + rest: 0.5, tail + "Y" + rest: sign * 0.5j}, n_qubits=n)


def jw_one_body(h) -> PauliSum:
    """Map ``sum_ij h_ij a_i^dagger a_j`` to qubit operators."""
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionError(f"one-body matrix must be square, got shape {h.shape}")
    n = h.shape[0]
    create = [jw_ladder(i, n, dagger=True) for i in range(n)]
    destroy = [jw_ladder(i, n) for i in range(n)]
    acc = PauliSum(n_qubits=n)
    for i in range(n):
        for j in range(n):
            if h[i, j] != 0:
                acc = acc + (create[i] @ destroy[j]) * complex(h[i, j])
    return _ordered(acc)


def jw_two_body(g) -> PauliSum:
    """Map ``sum_ijkl g_ijkl a_i^dagger a_j^dagger a_k a_l`` to qubit operators.

    No factor of one half is applied; pass ``g / 2`` to build the two-body part
    of a second-quantized Hamiltonian written with the conventional prefactor.
    """
    g = np.asarray(g)
    if g.ndim != 4 or len(set(g.shape)) != 1:
        raise DimensionError(f"two-body tensor must have four equal axes, got shape {g.shape}")
    n = g.shape[0]
    create = [jw_ladder(i, n, dagger=True) for i in range(n)]
    destroy = [jw_ladder(i, n) for i in range(n)]
    acc = PauliSum(n_qubits=n)
    for i, j, k, l in zip(*np.nonzero(g)):
        op = create[i] @ create[j] @ destroy[k] @ destroy[l]
        acc = acc + op * complex(g[i, j, k, l])
    return acc


def _ordered(s: PauliSum) -> PauliSum:
    # identity first, then by support position, Y before X before Z
    rank = {"I": 0, "Y": 1, "X": 2, "Z": 3}

    def key(item):
        ps = item[0]
        support = [k for k, c in enumerate(ps.ops) if c != "I"]
        return (len(support) > 0, support[:1], [rank[c] for c in ps.ops])

    return PauliSum(sorted(s, key=key), n_qubits=s.n_qubits, prune_tol=s.prune_tol)


def parity_sign(v) -> np.ndarray:
    """``(-1) ** popcount(v)`` elementwise, as int64."""
    return 1 - 2 * (np.bitwise_count(v).astype(np.int64) & 1)


def apply_pauli(ps: PauliString, vec: np.ndarray) -> np.ndarray:
    """Apply a Pauli string to state vector(s) along the first axis."""
    n = ps.n_qubits
    if vec.shape[0] != 1 << n:
        raise DimensionError(f"vector of length {vec.shape[0]} for {n}-qubit string")
    x, z = ps.x_mask, ps.z_mask
    idx = np.arange(1 << n, dtype=np.int64)
    src = idx ^ x
    # P|j> = i^nY (-1)^{|j & z|} |j ^ x>
    sign = parity_sign(src & z)
    factor = (1j ** ps.n_y) * sign
    if vec.ndim > 1:
        factor = factor.reshape((-1,) + (1,) * (vec.ndim - 1))
    return factor * vec[src]


def to_matrix(s: PauliSum, max_qubits: int = MAX_MATRIX_QUBITS) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of a Pauli sum."""
    n = s.n_qubits
    if n > max_qubits:
        raise DimensionError(f"{n} qubits exceeds the dense-matrix ceiling of {max_qubits}")
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim, dtype=np.int64)
    for ps, c in s:
        sign = parity_sign(cols & ps.z_mask)
        out[cols ^ ps.x_mask, cols] += c * (1j ** ps.n_y) * sign
    return out


def pauli_basis_coefficients(m: np.ndarray, tol: float = PRUNE_TOL) -> PauliSum:
    """Project a dense matrix onto the Pauli basis via ``tr(P^dagger M) / 2^n``."""
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if m.shape != (dim, dim) or 1 << n != dim:
        raise DimensionError(f"matrix shape {m.shape} is not 2^n x 2^n")
    cols = np.arange(dim, dtype=np.int64)
    terms = []
    for letters in _all_labels(n):
        ps = PauliString(letters)
        sign = parity_sign(cols & ps.z_mask)
        entries = (1j ** ps.n_y) * sign
        # tr(P^dagger M) = sum_j conj(P[j^x, j]) M[j^x, j]
        terms.append((ps, np.sum(np.conj(entries) * m[cols ^ ps.x_mask, cols]) / dim))
    return PauliSum(terms, n_qubits=n, prune_tol=tol)


def _all_labels(n: int):
    if n == 0:
        yield ""
        return
    for head in _LETTERS:
        for tail in _all_labels(n - 1):
            yield head + tail


@dataclass(frozen=True)
class LcuHamiltonian:
    """``H = sum_i beta_i exp(i phase_i) P_i`` padded to ``2**n_a`` entries."""

    betas: tuple[float, ...]
    phases: tuple[float, ...]
    strings: tuple[PauliString, ...]
    n_a: int
    n_s: int
    n_terms: int
    A: float = field(init=False)

    def __post_init__(self):
        size = 1 << self.n_a
        if not (len(self.betas) == len(self.phases) == len(self.strings) == size):
            raise DimensionError(f"LCU tables must have 2**n_a = {size} entries")
        if any(b < 0 for b in self.betas):
            raise ValueError("betas must be non-negative")
        object.__setattr__(self, "A", math.fsum(self.betas))
        if not self.A > 0:
            raise ValueError("LCU normalization A must be positive")

    @property
    def n_qubits(self) -> int:
        return self.n_a + self.n_s

    def reconstruct(self) -> PauliSum:
        return PauliSum(
            [(p, b * np.exp(1j * g)) for b, g, p in zip(self.betas, self.phases, self.strings)],
            n_qubits=self.n_s,
            prune_tol=0.0,
        )


def to_lcu(s: PauliSum) -> LcuHamiltonian:
    """Split each coefficient into magnitude and phase and pad to a power of two."""
    if len(s) == 0:
        raise ValueError("cannot build an LCU from an empty Pauli sum")
    L = len(s)
    n_a = (L - 1).bit_length()
    betas, phases, strings = [], [], []
    for ps, c in s:
        betas.append(abs(c))
        phases.append(float(np.angle(c)))
        strings.append(ps)
    pad = (1 << n_a) - L
    betas += [0.0] * pad
    phases += [0.0] * pad
    strings += [PauliString.identity(s.n_qubits)] * pad
    return LcuHamiltonian(tuple(betas), tuple(phases), tuple(strings), n_a, s.n_qubits, L)


def number_leakage(s: PauliSum) -> float:
    """Largest matrix element of ``s`` that changes particle number.

    Zero exactly when ``s`` commutes with the total number operator.
    """
    n = s.n_qubits
    idx = np.arange(1 << n, dtype=np.int64)
    groups: dict[int, np.ndarray] = {}
    for ps, c in s:
        x = ps.x_mask
        if x == 0:
            continue
        sign = parity_sign(idx & ps.z_mask)
        amp = c * (1j ** ps.n_y) * sign
        groups[x] = groups[x] + amp if x in groups else amp
    worst = 0.0
    for x, amp in groups.items():
        changes = 2 * np.bitwise_count(idx & x).astype(np.int64) != int(x).bit_count()
        if changes.any():
            worst = max(worst, float(np.abs(amp[changes]).max()))
    return worst

