import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import canonical_ks, cube_root_solutions
from su3cd.congruence import (
    SCAN_LIMIT,
    admissible_r,
    admissible_r_list,
    canonical_k_values,
    factorize,
    is_prime,
    solve_k,
    solve_k_crt,
    solve_k_joint,
    sqrt_mod_prime,
)

# allowed r below 100 with their canonical k values
ALLOWED_R_BELOW_100 = {
    1: [0], 3: [1], 7: [2], 13: [3], 19: [7], 21: [4], 31: [5], 37: [10], 39: [16], 43: [6],
    49: [18], 57: [7], 61: [13], 67: [29], 73: [8], 79: [23], 91: [9, 16], 93: [25], 97: [35],
}


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2**63))
def test_factorize_matches_sympy(u):
    assert factorize(u) == sorted(sympy.factorint(u).items())


@pytest.mark.parametrize(
    "u", [1, 2, 97, 2**61 - 1, 1000003 * 1000033, (2**31 - 1) * (2**31 + 11), 3**39, 2**63]
)
def test_factorize_hard_cases(u):
    assert factorize(u) == sorted(sympy.factorint(u).items())


def test_factorize_rejects_out_of_range():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63 + 1)


@given(st.integers(0, 10**12))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@given(st.integers(3, 10**6).filter(sympy.isprime), st.integers(0, 10**6))
def test_sqrt_mod_prime(p, a):
    root = sqrt_mod_prime(a, p)
    if root is None:
        assert sympy.legendre_symbol(a % p, p) == -1
    else:
        assert root * root % p == a % p


def test_admissibility_matches_solvability():
    # r is admissible exactly when 1 + k + k^2 = 0 (mod r) has a solution
    for r in range(1, 3000):
        assert admissible_r(r).admissible == bool(cube_root_solutions(r)), r


def test_admissibility_fields():
    a = admissible_r(273)
    assert (a.admissible, a.three_exp, a.q_part, a.q_factors) == (True, 1, 91, [(7, 1), (13, 1)])
    assert not admissible_r(9).admissible
    assert not admissible_r(35).admissible
    with pytest.raises(ValueError):
        admissible_r(0)


def test_solve_k_matches_brute_force():
    for r in range(1, 2000):
        assert solve_k(r) == cube_root_solutions(r)


@settings(max_examples=200)
@given(st.integers(1, 10**5))
def test_crt_route_matches_scan(r):
    assert solve_k_crt(r) == solve_k(r)


def test_solve_k_above_scan_limit():
    r = 7 * 13 * 19 * 31 * 37 * 3
    assert r > SCAN_LIMIT
    ks = solve_k(r)
    assert len(ks) == 2**5
    assert all((1 + k + k * k) % r == 0 for k in ks)
    assert solve_k(7 * 5 * 10**6) == []


def test_allowed_r_below_100():
    found = {r: canonical_k_values(r) for r, _ in admissible_r_list(99)}
    assert found == ALLOWED_R_BELOW_100


def test_admissible_r_list_rejects_bad_bound():
    with pytest.raises(ValueError):
        admissible_r_list(0)


def test_joint_congruence_matches_scan():
    for r in range(1, 2000):
        brute = [k for k in range(r) if (1 + k + k * k) % r == 0 and (1 + 2 * k) % r == 0]
        assert solve_k_joint(r) == brute


def test_first_multi_pair_values():
    multi = [r for r in range(1, 400) if len(canonical_ks(r)) >= 2]
    # 91 is the first, with 133 and 217 next
    assert multi[:3] == [91, 133, 217]
    assert [r for r, _ in admissible_r_list(250) if len(canonical_k_values(r)) >= 2] == [91, 133, 217, 247]
    assert canonical_k_values(247) == canonical_ks(247) == [68, 87]
