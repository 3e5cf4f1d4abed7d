import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import Rational, sqrt as ssqrt
from sympy.physics.wigner import clebsch_gordan as sympy_cg

from spindomains.angular_momentum import (
    AngularMomentumError,
    SpinQuantum,
    clebsch_gordan,
    clebsch_gordan_2,
    decompose,
    ladder_element,
    twice,
)
from spindomains.state_space import BlockLayout


def test_cg_three_halves_example():
    # <1 1; 1/2 -1/2 | 3/2 1/2> = sqrt(1/3)
    assert clebsch_gordan(1, 0.5, 1, -0.5, 1.5, 0.5) == pytest.approx(math.sqrt(1 / 3), abs=1e-14)


@pytest.mark.parametrize("tj1,tj2", [(1, 1), (2, 1), (5, 3), (40, 2), (600, 4)])
def test_cg_stretched_state(tj1, tj2):
    assert clebsch_gordan_2(tj1, tj2, tj1, tj2, tj1 + tj2, tj1 + tj2) == pytest.approx(1.0, abs=1e-12)


def test_cg_singlet():
    # Racah sum evaluated symbolically
    exact = sympy_cg(Rational(1, 2), Rational(1, 2), 0, Rational(1, 2), Rational(-1, 2), 0)
    assert exact == 1 / ssqrt(2)
    assert clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0) == pytest.approx(0.7071067811865476, abs=1e-14)


def test_cg_accepts_fractions():
    h = Fraction(1, 2)
    assert clebsch_gordan(1, h, 1, -h, Fraction(3, 2), h) == pytest.approx(math.sqrt(1 / 3))


@st.composite
def cg_args(draw):
    tj1 = draw(st.integers(0, 14))
    tj2 = draw(st.integers(0, 8))
    tj = draw(st.sampled_from(range(abs(tj1 - tj2), tj1 + tj2 + 1, 2)))
    tm1 = draw(st.sampled_from(range(-tj1, tj1 + 1, 2)))
    tm2 = draw(st.sampled_from(range(-tj2, tj2 + 1, 2)))
    return tj1, tj2, tm1, tm2, tj


@given(cg_args())
def test_cg_matches_exact_racah(args):
    tj1, tj2, tm1, tm2, tj = args
    tm = tm1 + tm2
    if abs(tm) > tj:
        return
    exact = float(sympy_cg(*(Rational(x, 2) for x in (tj1, tj2, tj, tm1, tm2, tm))))
    assert clebsch_gordan_2(tj1, tj2, tm1, tm2, tj, tm) == pytest.approx(exact, abs=1e-12)


def test_cg_selection_rules_give_zero():
    assert clebsch_gordan(1, 1, 1, 0, 2, 0) == 0.0  # m != m1 + m2
    assert clebsch_gordan(1, 0.5, 1, -0.5, 2.5, 0.5) == 0.0  # triangle


@pytest.mark.parametrize(
    "args",
    [
        (1, 0.5, 0.5, -0.5, 1.5, 0.5),  # m1 parity
        (1, 0.5, 2, -0.5, 1.5, 1.5),  # |m1| > j1
        (0.3, 0.5, 0.3, 0.5, 0.8, 0.8),  # not half-integer
    ],
)
def test_cg_domain_errors(args):
    with pytest.raises(AngularMomentumError):
        clebsch_gordan(*args)


@pytest.mark.parametrize("n_a", range(1, 7))
@pytest.mark.parametrize("n_b", range(1, 4))
def test_cg_orthonormality(n_a, n_b):
    if n_b > n_a:
        pytest.skip("n_a >= n_b")
    spec = decompose(n_a, n_b)
    for tm_a in range(-n_a, n_a + 1, 2):
        for tm_b in range(-n_b, n_b + 1, 2):
            s = sum(clebsch_gordan_2(n_a, n_b, tm_a, tm_b, tj, tm_a + tm_b) ** 2
                    for tj in spec.twice_j if abs(tm_a + tm_b) <= tj)
            assert s == pytest.approx(1.0, abs=1e-12)
    u = BlockLayout.of(n_a, n_b).change_of_basis
    assert np.max(np.abs(u.T @ u - np.eye(u.shape[0]))) < 1e-12


def test_cg_large_spins_stay_finite():
    u = BlockLayout.of(400, 2).change_of_basis
    assert np.all(np.isfinite(u))
    assert np.max(np.abs(u.T @ u - np.eye(u.shape[0]))) < 1e-10


def test_ladder_examples():
    assert ladder_element(0.5, -0.5, "raise") == 1.0
    assert ladder_element(1, 0, "raise") == pytest.approx(math.sqrt(2), abs=1e-15)
    for j in (0, 0.5, 1, 3.5, 10):
        assert ladder_element(j, j, "raise") == 0.0
        assert ladder_element(j, -j, "lower") == 0.0


def test_ladder_matches_spin_one_matrix():
    # J+ = Jx + i Jy for spin 1 in the m = 1, 0, -1 basis
    jx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / math.sqrt(2)
    jy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / math.sqrt(2)
    jp = jx + 1j * jy
    assert jp[0, 1].real == pytest.approx(ladder_element(1, 0, "raise"))
    assert jp[1, 2].real == pytest.approx(ladder_element(1, -1, "raise"))


@given(st.integers(0, 60), st.data())
def test_ladder_raise_lower_symmetry(tj, data):
    tm = data.draw(st.sampled_from(range(-tj, tj, 2))) if tj else None
    if tm is None:
        return
    up = ladder_element(Fraction(tj, 2), Fraction(tm, 2), "raise")
    down = ladder_element(Fraction(tj, 2), Fraction(tm + 2, 2), "lower")
    assert up == pytest.approx(down, rel=1e-15)


def test_ladder_bad_direction():
    with pytest.raises(ValueError):
        ladder_element(1, 0, "sideways")


@pytest.mark.parametrize("n", [1, 2, 5, 10])
def test_decompose_nb1(n):
    assert decompose(n, 1).j_list == [(n + 1) / 2, (n - 1) / 2]


@pytest.mark.parametrize("n", [2, 3, 8])
def test_decompose_nb2(n):
    assert decompose(n, 2).j_list == [n / 2 + 1, n / 2, n / 2 - 1]


def test_decompose_two_qubits():
    spec = decompose(1, 1)
    assert spec.j_list == [1.0, 0.0]
    assert spec.dim == 4


@given(st.integers(1, 300), st.integers(1, 300))
def test_decompose_dimension(a, b):
    n_a, n_b = max(a, b), min(a, b)
    spec = decompose(n_a, n_b)
    assert len(spec.j_list) == n_b + 1
    assert spec.dim == (n_a + 1) * (n_b + 1)


def test_decompose_rejects_small_a():
    with pytest.raises(AngularMomentumError):
        decompose(1, 2)


def test_spin_quantum():
    q = SpinQuantum.of(1.5, -0.5)
    assert (q.twice_j, q.twice_m, q.j, q.m) == (3, -1, 1.5, -0.5)
    with pytest.raises(AngularMomentumError):
        SpinQuantum.of(1, 0.5)
    with pytest.raises(AngularMomentumError):
        SpinQuantum.of(1, 2)
    assert twice(Fraction(5, 2)) == 5
