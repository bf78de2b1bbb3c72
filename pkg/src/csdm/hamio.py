"""Reading and writing ``.pham`` Pauli Hamiltonian files, plus bundled fixtures.

Format::

    # key: value            (optional header comments)
    ZIIII -0.251131 0.022353
    IIYZY 0.060302 -0.008776j

One term per line: label, real part, imaginary part. The imaginary column may
carry a trailing ``i`` or ``j``. Labels must all have the same length and may
not repeat.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import ParseError
from .pauli import PauliString, PauliSum

FIXTURES = {
    "model_n5": "model_n5.pham",
    "h2minus": "h2minus_631g.pham",
}

_LABEL = re.compile(r"^[IXYZ]+$")


@dataclass
class HamiltonianFile:
    hamiltonian: PauliSum
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def n_qubits(self) -> int:
        return self.hamiltonian.n_qubits


def _number(token: str, line: int, imaginary: bool = False) -> float:
    if imaginary and token[-1:] in ("i", "j"):
        token = token[:-1]
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"non-numeric coefficient {token!r}", line) from None


def parse_file(text: str) -> HamiltonianFile:
    """Parse ``.pham`` text, keeping ``# key: value`` header lines as metadata."""
    metadata: dict[str, str] = {}
    terms: list[tuple[PauliString, complex]] = []
    seen: dict[str, int] = {}
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                metadata[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<STRING> <re> <im>', got {len(parts)} fields", lineno)
        label, re_tok, im_tok = parts
        if not _LABEL.match(label):
            bad = sorted(set(label) - set("IXYZ"))
            raise ParseError(f"bad character(s) {bad} in Pauli string {label!r}", lineno)
        if width is None:
            width = len(label)
        elif len(label) != width:
            raise ParseError(f"string {label!r} has length {len(label)}, expected {width}", lineno)
        if label in seen:
            raise ParseError(f"duplicate string {label!r} (first on line {seen[label]})", lineno)
        seen[label] = lineno
        coeff = complex(_number(re_tok, lineno), _number(im_tok, lineno, imaginary=True))
        terms.append((PauliString(label), coeff))
    if not terms:
        raise ParseError("no Hamiltonian terms found")
    declared = metadata.get("n_qubits")
    if declared is not None and declared.isdigit() and int(declared) != width:
        raise ParseError(f"header declares {declared} qubits but strings have length {width}")
    return HamiltonianFile(PauliSum(terms, n_qubits=width, prune_tol=0.0), metadata)


def parse(text: str) -> PauliSum:
    return parse_file(text).hamiltonian


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def serialize(h: PauliSum, metadata: dict | None = None) -> str:
    """Six-decimal fixed-point text for ``h``."""
    lines = [f"# {k}: {v}" for k, v in (metadata or {}).items()]
    for ps, c in h:
        lines.append(f"{ps.ops} {_fmt(c.real)} {_fmt(c.imag)}")
    return "\n".join(lines) + "\n"


def read(path) -> HamiltonianFile:
    with open(path, encoding="utf-8") as fh:
        return parse_file(fh.read())


def write(path, h: PauliSum, metadata: dict | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(h, metadata))


def fixture_bytes(name: str) -> bytes:
    try:
        fname = FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
    return resources.files("csdm.data").joinpath(fname).read_bytes()


def fixture_checksum(name: str) -> str:
    return hashlib.sha256(fixture_bytes(name)).hexdigest()


@lru_cache(maxsize=None)
def load_fixture(name: str) -> HamiltonianFile:
    return parse_file(fixture_bytes(name).decode("utf-8"))


def fixture_h2minus() -> PauliSum:
    """H2- at theta = 0.18, alpha = 1.00 in a 6-31g basis (8 spin orbitals)."""
    return load_fixture("h2minus").hamiltonian


def fixture_model_n5() -> PauliSum:
    """Model system at theta = 0.16, alpha = 0.65 with five basis functions."""
    return load_fixture("model_n5").hamiltonian
