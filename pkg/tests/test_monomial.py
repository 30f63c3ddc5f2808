import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense, dense_of
from su3cd.monomial import (
    PERMUTATIONS,
    MonomialMatrix,
    PhaseExp,
    gen_B,
    gen_E,
    gen_F,
    gen_F_legacy,
    gen_G,
    gen_R_legacy,
    make_generator,
    mm_canonical_eq,
    mm_conjugate,
    mm_inverse,
    mm_mul,
    mm_order,
    mm_pow,
    perm_sign,
)


@st.composite
def monomials(draw, max_modulus=60):
    L = draw(st.integers(1, max_modulus))
    perm = draw(st.sampled_from(PERMUTATIONS))
    if perm_sign(perm) == -1 and L % 2:
        L *= 2
    p0 = draw(st.integers(0, L - 1))
    p1 = draw(st.integers(0, L - 1))
    target = 0 if perm_sign(perm) == 1 else L // 2
    return MonomialMatrix(perm, (p0, p1, target - p0 - p1), L)


def test_phase_exp_reduces_and_multiplies():
    a = PhaseExp(7, 5)
    assert a.num == 2
    assert a * PhaseExp(1, 3) == PhaseExp(11, 15)
    assert PhaseExp(4, 12).reduced() == PhaseExp(1, 3)
    assert PhaseExp(4, 12).order() == 3
    assert PhaseExp(3, 12).to_complex() == pytest.approx(1j)


def test_determinant_must_be_one():
    with pytest.raises(ValueError):
        MonomialMatrix((0, 1, 2), (1, 0, 0), 3)
    with pytest.raises(ValueError):
        MonomialMatrix((0, 2, 1), (0, 0, 0), 2)
    with pytest.raises(ValueError):
        MonomialMatrix((0, 2, 1), (0, 0, 0), 3)
    with pytest.raises(ValueError):
        MonomialMatrix((0, 0, 1), (0, 0, 0), 1)
    with pytest.raises(ValueError):
        MonomialMatrix((0, 1, 2), (0, 0, 0), 0)


@given(monomials())
def test_dense_matches_oracle_and_has_det_one(x):
    a = x.to_dense()
    assert np.allclose(a, dense_of(x))
    assert np.linalg.det(a) == pytest.approx(1)


@given(monomials(), monomials())
def test_product_matches_dense_product(x, y):
    assert np.allclose(mm_mul(x, y).to_dense(), dense_of(x) @ dense_of(y))
    assert np.allclose((x @ y).to_dense(), dense_of(x) @ dense_of(y))


@given(monomials(), monomials(), monomials())
def test_product_is_associative(x, y, z):
    assert mm_canonical_eq(mm_mul(mm_mul(x, y), z), mm_mul(x, mm_mul(y, z)))


@given(monomials(), st.integers(-7, 7))
def test_inverse_and_powers(x, e):
    assert mm_mul(x, mm_inverse(x)).is_identity
    assert np.allclose(mm_pow(x, e).to_dense(), np.linalg.matrix_power(dense_of(x), e))


@given(monomials())
def test_order_matches_dense_power(x):
    a, cur, n = dense_of(x), dense_of(x), 1
    while not np.allclose(cur, np.eye(3)):
        cur, n = cur @ a, n + 1
    assert mm_order(x) == n


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_determinant_survives_long_product_chains(seed):
    rng = random.Random(seed)
    acc = MonomialMatrix.identity()
    for _ in range(1000):
        L = rng.choice([2, 4, 6, 12])
        perm = rng.choice(PERMUTATIONS)
        p0, p1 = rng.randrange(L), rng.randrange(L)
        target = 0 if perm_sign(perm) == 1 else L // 2
        acc = mm_mul(acc, MonomialMatrix(perm, (p0, p1, target - p0 - p1), L))
    # construction re-validates the determinant; compare with the dense value too
    assert np.linalg.det(acc.to_dense()) == pytest.approx(1)


def test_modulus_change_and_reduction():
    x = MonomialMatrix.diag((2, 4, 6), 12)
    assert x.reduced() == MonomialMatrix.diag((1, 2, 3), 6)
    assert x.with_modulus(24).phases == (4, 8, 12)
    assert mm_canonical_eq(x, x.with_modulus(36))
    with pytest.raises(ValueError):
        x.with_modulus(18)
    assert gen_B().reduced() == gen_B()


def test_named_generators():
    assert np.allclose(gen_E().to_dense(), dense((1, 2, 0), (0, 0, 0), 1))
    assert np.allclose(gen_B().to_dense(), -dense((0, 2, 1), (0, 0, 0), 1))
    F = gen_F(7, 2)
    assert F.phases == (1, 2, 4)
    G = gen_G(14, 2)
    assert G.phases == (0, 7, 7)
    assert mm_order(gen_E()) == 3
    assert mm_order(gen_B()) == 2


def test_conjugation_by_e_shifts_diagonal():
    # dense oracle: E diag(d0, d1, d2) E^-1 = diag(d1, d2, d0)
    F = gen_F_legacy(28, 4, 22)
    conj = mm_conjugate(gen_E(), F)
    ref = dense_of(gen_E()) @ dense_of(F) @ np.linalg.inv(dense_of(gen_E()))
    assert np.allclose(conj.to_dense(), ref)
    assert conj.phases == (22, 2, 4)
    assert mm_conjugate(mm_inverse(gen_E()), F).phases == (2, 4, 22)


def test_legacy_f_order():
    assert gen_F_legacy(28, 4, 22).phases == (4, 22, 2)
    assert mm_order(gen_F_legacy(28, 4, 22)) == 14


@pytest.mark.parametrize("nu,rho,sigma", [(1, 0, 0), (2, 0, 1), (3, 1, 2), (6, 5, 1)])
def test_legacy_r(nu, rho, sigma):
    R = gen_R_legacy(nu, rho, sigma)
    a = R.to_dense()
    assert np.linalg.det(a) == pytest.approx(1)
    w = np.exp(2j * np.pi / nu)
    assert a[0, 0] == pytest.approx(w**rho)
    assert a[1, 2] == pytest.approx(w**sigma)
    assert a[2, 1] == pytest.approx(-(w ** (-rho - sigma)))


def test_make_generator_dispatch():
    assert make_generator("E") == gen_E()
    assert make_generator("F_canonical", 7, 2) == gen_F(7, 2)
    assert make_generator("G_canonical", 14, 2) == gen_G(14, 2)
    assert make_generator("R_legacy", 2, 0, 1) == gen_R_legacy(2, 0, 1)
    with pytest.raises(ValueError):
        make_generator("Q")
