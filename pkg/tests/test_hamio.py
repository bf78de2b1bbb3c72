import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from csdm import hamio
from csdm.errors import ParseError
from csdm.pauli import PauliSum

CHECKSUMS = {
    "model_n5": "2f011384e5daf263eb2a3dde6e0c7174b2a630de37755a0e13621f8d3bae7dc4",
    "h2minus": "9b3610e44622ee29357f73a2c0cac04fb0869c4112c3ad93227bd1da2c1c5fab",
}


@pytest.mark.parametrize("name", sorted(CHECKSUMS))
def test_fixture_checksums_frozen(name):
    assert hamio.fixture_checksum(name) == CHECKSUMS[name]


def test_fixture_shapes():
    model = hamio.load_fixture("model_n5")
    assert (model.n_qubits, len(model.hamiltonian)) == (5, 26)
    assert model.metadata["theta"] == "0.16"
    h2 = hamio.load_fixture("h2minus")
    assert (h2.n_qubits, len(h2.hamiltonian)) == (8, 201)
    assert h2.metadata["n_electrons"] == "3"


def test_fixture_spot_values():
    h = hamio.fixture_model_n5()
    assert h.coefficient("IIIII") == pytest.approx(complex(hamio.load_fixture("model_n5").hamiltonian.coefficient("IIIII")))
    assert abs(h.coefficient("IIIII")) > 0


def test_unknown_fixture():
    with pytest.raises(KeyError):
        hamio.fixture_bytes("nope")


def test_parse_basic_and_suffixes():
    h = hamio.parse("# n_qubits: 2\nXZ 1.5 -0.25\nYY 0 2j\nII -1 0.5i\n")
    assert h.coefficient("XZ") == 1.5 - 0.25j
    assert h.coefficient("YY") == 2j
    assert h.coefficient("II") == -1 + 0.5j


def test_parse_drops_exact_zero_terms():
    assert len(hamio.parse("XX 0 0\nZZ 1 0\n")) == 1


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("XX 1 0\nXY 1\n", 2, "fields"),
        ("XX 1 0\n\nXA 1 0\n", 3, "bad character"),
        ("XX 1 0\nXXX 1 0\n", 2, "length"),
        ("XX 1 0\nZZ 1 0\nXX 2 0\n", 3, "duplicate"),
        ("# c\nXX one 0\n", 2, "non-numeric"),
        ("XX 1 0.5k\n", 1, "non-numeric"),
    ],
)
def test_parse_errors_report_line(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        hamio.parse(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")
    assert fragment in str(exc.value)


def test_parse_empty_and_header_mismatch():
    with pytest.raises(ParseError):
        hamio.parse("# only: header\n\n")
    with pytest.raises(ParseError):
        hamio.parse("# n_qubits: 3\nXX 1 0\n")


def test_serialize_normalizes_negative_zero():
    text = hamio.serialize(PauliSum({"XY": -1e-9 + 0.5j}, prune_tol=0.0))
    assert text == "XY 0.000000 0.500000\n"


@settings(max_examples=60)
@given(
    st.dictionaries(
        st.text("IXYZ", min_size=3, max_size=3),
        st.tuples(st.floats(-100, 100), st.floats(-100, 100)),
        min_size=1,
        max_size=20,
    )
)
def test_round_trip_within_six_decimals(terms):
    assume(any(abs(complex(*v)) >= 1e-6 for v in terms.values()))
    h = PauliSum({k: complex(*v) for k, v in terms.items()}, prune_tol=0.0)
    meta = {"theta": "0.1", "n_qubits": "3"}
    back = hamio.parse_file(hamio.serialize(h, meta))
    assert back.metadata == meta
    for ps, c in h:
        assert abs(back.hamiltonian.coefficient(ps) - c) <= 1e-6


def test_serialize_is_idempotent_on_fixture():
    text = hamio.fixture_bytes("model_n5").decode()
    hf = hamio.parse_file(text)
    once = hamio.serialize(hf.hamiltonian, hf.metadata)
    again = hamio.parse_file(once)
    assert hamio.serialize(again.hamiltonian, again.metadata) == once
    assert again.hamiltonian.allclose(hf.hamiltonian, atol=5e-7)


def test_file_io(tmp_path):
    h = PauliSum({"ZI": 0.25, "IX": -1j})
    path = tmp_path / "h.pham"
    hamio.write(path, h, {"note": "x"})
    hf = hamio.read(path)
    assert hf.metadata == {"note": "x"}
    assert np.allclose(hf.hamiltonian.to_matrix(), h.to_matrix())
