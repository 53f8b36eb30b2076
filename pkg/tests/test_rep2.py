from itertools import permutations
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complex_matrices, unitaries
from eqchan.rep2 import (
    Partition, coherent_state, dicke_state, partitions, q_lambda, sym_isometry, sym_projector,
    wigner_t,
)
from eqchan.schur import SINGLET, permutation_matrix
from eqchan.sim import tensor_power

spins = st.integers(min_value=0, max_value=8)


def test_partition_fields():
    p = Partition(5, 2)
    assert (p.n, p.spin, p.singlets, p.unitary_dim, p.perm_dim) == (7, 3, 2, 4, 14)
    with pytest.raises(ValueError):
        Partition(1, 2)
    assert partitions(4) == [Partition(4, 0), Partition(3, 1), Partition(2, 2)]


@pytest.mark.parametrize("n", range(1, 13))
def test_dimension_identity(n):
    assert sum(p.unitary_dim * p.perm_dim for p in partitions(n)) == 2 ** n


def test_perm_dim_is_hook_length_count():
    # cross-check against the hook-length formula for two-row shapes
    for n in range(1, 13):
        for p in partitions(n):
            assert p.perm_dim == comb(n, p.lambda2) - (comb(n, p.lambda2 - 1) if p.lambda2 else 0)


def test_wigner_low_degree():
    m = np.array([[1 + 2j, -0.5], [0.3j, 2.0]])
    assert np.allclose(wigner_t(1, m), m)
    t2 = wigner_t(2, m)
    (a, b), (c, d) = m
    assert t2[0, 0] == pytest.approx(a * a)
    assert t2[1, 1] == pytest.approx(a * d + b * c)
    assert np.allclose(wigner_t(0, m), [[1.0]])
    with pytest.raises(ValueError):
        wigner_t(-1, m)


@pytest.mark.parametrize("l", range(9))
def test_wigner_identity(l):
    assert np.allclose(wigner_t(l, np.eye(2)), np.eye(l + 1))


@given(spins, complex_matrices(), complex_matrices())
def test_wigner_homomorphism(l, m1, m2):
    lhs = wigner_t(l, m1 @ m2)
    rhs = wigner_t(l, m1) @ wigner_t(l, m2)
    assert np.allclose(lhs, rhs, atol=1e-10 * (1 + np.abs(rhs).max()))


@given(spins, unitaries())
def test_wigner_unitary(l, u):
    t = wigner_t(l, u)
    assert np.allclose(t @ t.conj().T, np.eye(l + 1), atol=1e-10)


@given(spins, complex_matrices())
def test_wigner_transpose(l, m):
    assert np.allclose(wigner_t(l, m.T), wigner_t(l, m).T, atol=1e-10 * (1 + np.abs(m).max() ** l))


@given(spins, complex_matrices(1, 2))
def test_wigner_diagonal(l, ad):
    a, d = ad[0]
    t = wigner_t(l, np.diag([a, d]))
    want = np.diag([a ** (l - k) * d ** k for k in range(l + 1)])
    assert np.allclose(t, want, atol=1e-10 * (1 + np.abs(want).max()))


@given(spins, complex_matrices(), st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_wigner_scaling(l, m, s):
    want = s ** l * wigner_t(l, m)
    assert np.allclose(wigner_t(l, s * m), want, atol=1e-9 * (1 + np.abs(want).max()))


def test_q_lambda_small():
    m = np.array([[1.0, 2.0j], [0.5, -1.0]])
    det = np.linalg.det(m)
    assert np.allclose(q_lambda(Partition(1, 1), m), [[det]])
    assert np.allclose(q_lambda(Partition(2, 1), m), det * m)


@given(st.integers(0, 5), st.integers(0, 5), complex_matrices(), complex_matrices())
def test_q_lambda_homomorphism(l2, spin, m1, m2):
    p = Partition(l2 + spin, l2)
    rhs = q_lambda(p, m1) @ q_lambda(p, m2)
    assert np.allclose(q_lambda(p, m1 @ m2), rhs, atol=1e-9 * (1 + np.abs(rhs).max()))


def test_dicke_examples():
    assert np.allclose(dicke_state(2, 1), np.array([0, 1, 1, 0]) / np.sqrt(2))
    for l in range(1, 6):
        v = dicke_state(l, 0)
        assert v[0] == 1 and np.count_nonzero(v) == 1
    with pytest.raises(ValueError):
        dicke_state(2, 3)


@pytest.mark.parametrize("l", range(1, 7))
def test_dicke_orthonormal(l):
    v = sym_isometry(l)
    assert np.allclose(v.conj().T @ v, np.eye(l + 1), atol=1e-14)


def test_sym_isometry_small():
    assert np.allclose(sym_isometry(1), np.eye(2))
    v = sym_isometry(2)
    assert np.allclose(v[:, 0], [1, 0, 0, 0])
    assert np.allclose(v[:, 1], np.array([0, 1, 1, 0]) / np.sqrt(2))
    assert np.allclose(v[:, 2], [0, 0, 0, 1])


@given(st.integers(1, 6), complex_matrices())
def test_isometry_restricts_tensor_power(l, m):
    v = sym_isometry(l)
    want = wigner_t(l, m)
    got = v.conj().T @ tensor_power(m, l) @ v
    assert np.allclose(got, want, atol=1e-10 * (1 + np.abs(want).max()))


@given(st.integers(0, 7), complex_matrices(1, 2))
def test_coherent_state(l, psi):
    psi = psi[0]
    if np.linalg.norm(psi) < 1e-3:
        psi = np.array([1.0, 0.0])
    psi = psi / np.linalg.norm(psi)
    coh = coherent_state(l, psi)
    assert np.allclose(wigner_t(l, np.outer(psi, psi.conj())), np.outer(coh, coh.conj()), atol=1e-10)
    if l >= 1:
        assert np.allclose(sym_isometry(l) @ coh, tensor_power(psi.reshape(2, 1), l).ravel(), atol=1e-10)


def test_coherent_state_of_zero():
    for l in range(5):
        assert np.allclose(coherent_state(l, [1, 0]), np.eye(l + 1)[0])


def test_sym_projector_small():
    assert np.allclose(sym_projector(1), np.eye(2))
    assert np.allclose(sym_projector(2), np.eye(4) - np.outer(SINGLET, SINGLET), atol=1e-15)
    avg = sum(permutation_matrix(3, p) for p in permutations(range(3))) / 6
    assert np.allclose(sym_projector(3), avg, atol=1e-15)
