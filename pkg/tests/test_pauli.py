import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csdm.errors import DimensionError
from csdm.pauli import (
    PauliString,
    PauliSum,
    apply_pauli,
    jw_ladder,
    jw_one_body,
    jw_two_body,
    number_leakage,
    number_operator,
    pauli_basis_coefficients,
    pauli_mul,
    to_lcu,
    to_matrix,
)

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)
SINGLE = {"I": I2, "X": X, "Y": Y, "Z": Z}

labels = lambda n: st.text("IXYZ", min_size=n, max_size=n)


def kron_label(label):
    out = np.eye(1)
    for ch in label:
        out = np.kron(out, SINGLE[ch])
    return out


def random_sum(rng, n, k):
    ops = ["".join(rng.choice(list("IXYZ"), n)) for _ in range(k)]
    coeffs = rng.normal(size=k) + 1j * rng.normal(size=k)
    terms = {}
    for o, c in zip(ops, coeffs):
        terms[o] = terms.get(o, 0) + c
    return PauliSum(terms)


@settings(max_examples=200)
@given(labels(3), labels(3))
def test_string_product_matches_dense(a, b):
    phase, prod = pauli_mul(a, b)
    assert np.allclose(phase * kron_label(prod.ops), kron_label(a) @ kron_label(b))


@settings(max_examples=100)
@given(labels(4))
def test_apply_pauli_matches_dense(label):
    rng = np.random.default_rng(len(label))
    v = rng.normal(size=16) + 1j * rng.normal(size=16)
    assert np.allclose(apply_pauli(PauliString(label), v), kron_label(label) @ v)


def test_leftmost_character_is_most_significant_qubit():
    assert np.allclose(PauliString("XZ").to_matrix(), np.kron(X, Z))


def test_string_validation():
    with pytest.raises(ValueError):
        PauliString("XA")
    with pytest.raises(ValueError):
        PauliString("")


def test_sum_algebra_matches_dense():
    rng = np.random.default_rng(1)
    a, b = random_sum(rng, 3, 6), random_sum(rng, 3, 5)
    ma, mb = a.to_matrix(), b.to_matrix()
    assert np.allclose((a + b).to_matrix(), ma + mb)
    assert np.allclose((a - b).to_matrix(), ma - mb)
    assert np.allclose((a @ b).to_matrix(), ma @ mb)
    assert np.allclose((a * 2.5j).to_matrix(), 2.5j * ma)
    assert np.allclose((a**3).to_matrix(), ma @ ma @ ma)
    assert np.allclose((a + 1.5).to_matrix(), ma + 1.5 * np.eye(8))


def test_sum_prunes_cancelled_terms():
    s = PauliSum({"XY": 1.0}) - PauliSum({"XY": 1.0})
    assert len(s) == 0


def test_mixed_width_raises():
    with pytest.raises(DimensionError):
        PauliSum({"X": 1}) + PauliSum({"XX": 1})


def test_dense_ceiling():
    with pytest.raises(DimensionError):
        to_matrix(PauliSum({"I" * 11: 1.0}))


def test_basis_decomposition_round_trip():
    rng = np.random.default_rng(2)
    m = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    assert np.allclose(pauli_basis_coefficients(m).to_matrix(), m)


# occupation-number oracle: a_j |n> = (-1)^{sum_{k<j} n_k} |n - e_j>, orbital 0 leftmost
def dense_annihilator(j, n):
    dim = 1 << n
    m = np.zeros((dim, dim))
    for idx in range(dim):
        bits = [(idx >> (n - 1 - k)) & 1 for k in range(n)]
        if bits[j]:
            sign = (-1) ** sum(bits[:j])
            m[idx ^ (1 << (n - 1 - j)), idx] = sign
    return m


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ladder_matches_occupation_oracle(n):
    for j in range(n):
        assert np.allclose(jw_ladder(j, n).to_matrix(), dense_annihilator(j, n))
        assert np.allclose(jw_ladder(j, n, dagger=True).to_matrix(), dense_annihilator(j, n).T)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_anticommutation(n):
    a = [jw_ladder(j, n).to_matrix() for j in range(n)]
    ad = [jw_ladder(j, n, dagger=True).to_matrix() for j in range(n)]
    eye = np.eye(1 << n)
    for i, j in itertools.product(range(n), repeat=2):
        assert np.abs(a[i] @ ad[j] + ad[j] @ a[i] - (i == j) * eye).max() < 1e-10
        assert np.abs(a[i] @ a[j] + a[j] @ a[i]).max() < 1e-10


def test_one_body_matches_occupation_oracle():
    rng = np.random.default_rng(3)
    n = 3
    h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    ref = sum(h[i, j] * dense_annihilator(i, n).T @ dense_annihilator(j, n) for i in range(n) for j in range(n))
    out = jw_one_body(h)
    assert np.allclose(out.to_matrix(), ref)
    assert next(iter(out))[0].is_identity


def test_two_body_matches_occupation_oracle():
    rng = np.random.default_rng(4)
    n = 3
    g = rng.normal(size=(n,) * 4)
    A = [dense_annihilator(j, n) for j in range(n)]
    ref = sum(
        g[i, j, k, l] * A[i].T @ A[j].T @ A[k] @ A[l]
        for i, j, k, l in itertools.product(range(n), repeat=4)
    )
    assert np.allclose(jw_two_body(g).to_matrix(), ref)


def test_number_leakage():
    rng = np.random.default_rng(5)
    assert number_leakage(jw_one_body(rng.normal(size=(3, 3)))) < 1e-14
    assert number_leakage(PauliSum({"XI": 1.0})) > 0.1
    n_op = number_operator(3).to_matrix()
    assert np.allclose(np.diag(n_op), [bin(i).count("1") for i in range(8)])


def test_lcu_decomposition_reconstructs():
    rng = np.random.default_rng(6)
    s = random_sum(rng, 3, 5)
    lcu = to_lcu(s)
    assert lcu.n_a == int(np.ceil(np.log2(len(s))))
    assert len(lcu.betas) == 1 << lcu.n_a
    assert np.all(np.asarray(lcu.betas) >= 0)
    assert lcu.A == pytest.approx(sum(abs(c) for _, c in s))
    assert lcu.reconstruct().allclose(s)


def test_lcu_single_term_needs_no_ancilla():
    assert to_lcu(PauliSum({"Z": 2.0})).n_a == 0
