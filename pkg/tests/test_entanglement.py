import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import random_state
from spindomains.entanglement import (
    BipartiteDims,
    entropy_closed_form_nb1,
    log_negativity,
    negativity_closed_form_nb1,
    partial_transpose,
    trace_norm,
    von_neumann_entropy,
)
from spindomains.state_space import (
    BlockLayout,
    DensityMatrix,
    product_state,
    to_tensor_product,
)
from spindomains.steady_state import steady_state_matrix


def bell():
    psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
    return np.outer(psi, psi).astype(complex)


def ss_tp(n_a, n_b):
    return to_tensor_product(steady_state_matrix(BlockLayout.of(n_a, n_b)))


def test_partial_transpose_of_diagonal_is_identity_map():
    rho = np.diag(np.arange(1.0, 7.0))
    np.testing.assert_array_equal(partial_transpose(rho, BipartiteDims(3, 2)), rho)


def test_partial_transpose_explicit_elements():
    dims = BipartiteDims(2, 2)
    m = np.arange(16.0).reshape(4, 4)
    pt = partial_transpose(m, dims, "A")
    # (a, b; a', b') -> (a', b; a, b')
    assert pt[0, 2] == m[2, 0]
    assert pt[1, 3] == m[3, 1]
    assert pt[0, 1] == m[0, 1]


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
@settings(max_examples=30, deadline=None)
def test_partial_transpose_properties(d_a, d_b, seed):
    rng = np.random.default_rng(seed)
    dims = BipartiteDims(d_a, d_b)
    rho = random_state(rng, dims.dim)
    pa = partial_transpose(rho, dims, "A")
    np.testing.assert_allclose(partial_transpose(pa, dims, "A"), rho)
    # transposing both factors is the full transpose
    np.testing.assert_allclose(partial_transpose(pa, dims, "B"), rho.T)
    assert np.trace(pa) == pytest.approx(1.0)


def test_bell_state():
    pt = partial_transpose(bell(), BipartiteDims(2, 2))
    assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-14)
    assert log_negativity(bell(), BipartiteDims(2, 2)) == pytest.approx(1.0, abs=1e-14)


def test_partial_transpose_errors():
    with pytest.raises(ValueError):
        partial_transpose(np.eye(6), BipartiteDims(2, 2))
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4), BipartiteDims(2, 2), "C")
    with pytest.raises(Exception):
        partial_transpose(steady_state_matrix(BlockLayout.of(1, 1)), BipartiteDims(2, 2))


def test_trace_norm():
    assert trace_norm(np.diag([0.5, -0.25, 0.75])) == pytest.approx(1.5)
    assert trace_norm(np.array([[0, 1], [1, 0]])) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        trace_norm(np.array([[0, 1], [0, 0]]))


def test_product_state_has_no_negativity():
    rho = product_state(3, 2, 3, -2)
    assert log_negativity(rho, BipartiteDims.of(3, 2)) == 0.0


def test_negativity_n1_value():
    # weights 1/2, 1/2 on |1;-1>> and |0;0>>; partial transpose spectrum 1/4, 1/4, (1 +- sqrt 2)/4
    expected = math.log2((1 + math.sqrt(2)) / 2)
    assert expected == pytest.approx(0.2715533, abs=1e-7)
    assert log_negativity(ss_tp(1, 1), BipartiteDims(2, 2)) == pytest.approx(expected, abs=1e-13)
    assert negativity_closed_form_nb1(1) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("n", [2, 5, 17, 40])
def test_negativity_numeric_matches_closed_form(n):
    assert log_negativity(ss_tp(n, 1), BipartiteDims.of(n, 1)) == pytest.approx(
        negativity_closed_form_nb1(n), abs=1e-12)


def test_negativity_peak_location():
    vals = [negativity_closed_form_nb1(n) for n in range(1, 30)]
    assert int(np.argmax(vals)) + 1 == 5
    assert vals[4] == pytest.approx(0.562118, abs=1e-6)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_negativity_nb2_positive(n):
    assert log_negativity(ss_tp(n, 2), BipartiteDims.of(n, 2)) > 0


def test_entropy_examples():
    assert von_neumann_entropy(bell()) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0)
    assert von_neumann_entropy(steady_state_matrix(BlockLayout.of(1, 1))) == pytest.approx(1.0)
    # weights 1/4, 3/4
    assert entropy_closed_form_nb1(3) == pytest.approx(0.8112781244591328, abs=1e-14)
    with pytest.raises(ValueError):
        von_neumann_entropy(np.diag([1.5, -0.5]))


@pytest.mark.parametrize("n", [1, 4, 12])
def test_entropy_numeric_matches_closed_form(n):
    rho = steady_state_matrix(BlockLayout.of(n, 1))
    assert von_neumann_entropy(rho) == pytest.approx(entropy_closed_form_nb1(n), abs=1e-12)
    # basis independent
    assert von_neumann_entropy(to_tensor_product(rho)) == pytest.approx(
        entropy_closed_form_nb1(n), abs=1e-12)


def test_entropy_invariant_under_unitary(rng):
    rho = random_state(rng, 6)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    assert von_neumann_entropy(q @ rho @ q.conj().T) == pytest.approx(von_neumann_entropy(rho))


def test_density_matrix_input_accepted():
    tp = ss_tp(2, 1)
    assert isinstance(tp, DensityMatrix)
    assert log_negativity(tp, BipartiteDims.of(2, 1)) == log_negativity(tp.data, BipartiteDims.of(2, 1))
