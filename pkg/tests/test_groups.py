import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    alternating_group,
    compose,
    dense_closure_order,
    dense_of,
    dense_set,
    extends_to_isomorphism,
    perm_closure,
    symmetric_group,
)
from su3cd.classify import GroupSpec, build_group, generators_for
from su3cd.errors import GroupTooLargeError
from su3cd.groups import (
    TableGroup,
    brute_force_isomorphism,
    central_z3_decomposition,
    closure,
    diagonal_subgroup,
    fingerprint,
)
from su3cd.monomial import (
    PERMUTATIONS,
    MonomialMatrix,
    gen_E,
    mm_canonical_eq,
    mm_conjugate,
    mm_inverse,
    mm_mul,
    perm_sign,
)


def perm_table(elements):
    return TableGroup.from_elements(elements, compose)


def cyclic(n):
    return TableGroup.from_elements(list(range(n)), lambda a, b: (a + b) % n)


def dihedral(n):
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return perm_table(perm_closure([rot, ref]))


@pytest.mark.parametrize("label", ["C(7,1,2)", "C(2,2,0)", "D(2,2,0)", "C(9,3,1)", "D(3,1,1)", "C(14,2,2)"])
def test_closure_matches_dense_oracle(label):
    spec = GroupSpec.parse(label)
    gens = generators_for(spec)
    group = closure(gens)
    assert group.order == dense_closure_order([dense_of(g) for g in gens]) == spec.order
    assert dense_set(dense_of(x) for x in group) == dense_set(
        dense_of(x) for x in closure(list(reversed(gens)))
    )


def test_closure_cap():
    with pytest.raises(GroupTooLargeError):
        closure(generators_for(GroupSpec.parse("C(7,1,2)")), cap=20)


def test_membership_across_moduli():
    group = build_group(GroupSpec.parse("C(14,2,2)"))
    assert gen_E() in group
    assert MonomialMatrix.diag((0, 1, 1), 2) in group
    assert MonomialMatrix.diag((2, 1, 1), 4) not in group


def test_cayley_table_is_consistent():
    group = build_group(GroupSpec.parse("D(3,1,1)"))
    t = group.table_group()
    els = group.elements
    rng = np.random.default_rng(0)
    for a, b in rng.integers(0, len(els), size=(200, 2)):
        assert els[t.table[a, b]] == mm_mul(els[a], els[b]).with_modulus(group.modulus)
    assert els[t.identity].is_identity


def test_a4_and_s4_from_permutation_oracle():
    a4 = fingerprint(perm_table(alternating_group(4)))
    assert a4.order_histogram == {1: 1, 2: 3, 3: 8}
    assert (a4.center_order, a4.derived_order, a4.abelianization) == (1, 4, (3,))
    assert a4.class_sizes == (1, 3, 4, 4)
    s4 = fingerprint(perm_table(symmetric_group(4)))
    assert s4.order_histogram == {1: 1, 2: 9, 3: 8, 4: 6}
    assert (s4.center_order, s4.derived_order, s4.abelianization) == (1, 12, (2,))
    assert s4.class_sizes == (1, 3, 6, 6, 8)


def test_abelian_invariants():
    z2z4 = TableGroup.from_elements(
        [(a, b) for a in range(2) for b in range(4)],
        lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 4),
    )
    assert z2z4.abelianization_invariants() == [2, 4]
    assert cyclic(12).abelianization_invariants() == [12]
    assert fingerprint(dihedral(6)).abelianization == (2, 2)


def _check_witness(g1, g2, witness):
    gens, images = list(witness), list(witness.values())
    if isinstance(gens[0], MonomialMatrix):
        L = g1.modulus
        op1 = lambda a, b: mm_mul(a, b).with_modulus(L)
        id1 = MonomialMatrix.identity(L)
    else:
        op1, id1 = compose, tuple(range(len(gens[0])))
    if isinstance(images[0], MonomialMatrix):
        L2 = g2.modulus
        op2 = lambda a, b: mm_mul(a, b).with_modulus(L2)
        id2 = MonomialMatrix.identity(L2)
    else:
        op2, id2 = compose, tuple(range(len(images[0])))
    return extends_to_isomorphism(gens, images, op1, op2, id1, id2, len(g1), len(g2))


def test_delta12_is_a4_with_checked_witness():
    delta12 = build_group(GroupSpec.parse("C(2,2,0)"))
    a4 = perm_table(alternating_group(4))
    witness = brute_force_isomorphism(delta12, a4)
    assert witness is not None
    assert _check_witness(delta12, a4, witness)


def test_delta24_is_s4_with_checked_witness():
    delta24 = build_group(GroupSpec.parse("D(2,2,0)"))
    s4 = perm_table(symmetric_group(4))
    witness = brute_force_isomorphism(delta24, s4)
    assert witness is not None
    assert _check_witness(delta24, s4, witness)


def test_non_isomorphic_pairs():
    a4 = perm_table(alternating_group(4))
    assert brute_force_isomorphism(a4, cyclic(12)) is None
    assert brute_force_isomorphism(a4, dihedral(6)) is None
    assert brute_force_isomorphism(cyclic(8), cyclic(12)) is None


def test_isomorphism_cap():
    with pytest.raises(GroupTooLargeError):
        brute_force_isomorphism(cyclic(20), cyclic(20), cap=10)


def test_isomorphic_pair_witness():
    g1 = build_group(GroupSpec.parse("C(7,1,2)"))
    g2 = build_group(GroupSpec.parse("C(7,1,4)"))
    witness = brute_force_isomorphism(g1, g2)
    assert witness is not None and _check_witness(g1, g2, witness)


@settings(max_examples=15, deadline=None)
@given(
    st.sampled_from(["C(7,1,2)", "C(2,2,0)", "D(2,2,0)", "C(3,3,0)", "D(3,1,1)"]),
    st.sampled_from(PERMUTATIONS),
    st.integers(0, 11),
    st.integers(0, 11),
)
def test_fingerprint_invariant_under_conjugation(label, perm, p0, p1):
    L = 12
    target = 0 if perm_sign(perm) == 1 else L // 2
    a = MonomialMatrix(perm, (p0, p1, target - p0 - p1), L)
    spec = GroupSpec.parse(label)
    conj = closure([mm_conjugate(a, g) for g in generators_for(spec)])
    assert fingerprint(conj) == fingerprint(build_group(spec))


def test_diagonal_subgroup_shape():
    diag = diagonal_subgroup(build_group(GroupSpec.parse("C(14,2,2)")))
    assert diag.order == 28
    assert all(x.is_diagonal for x in diag)


@pytest.mark.parametrize(
    "label,inner",
    [("C(3,1,1)", "C(1,1,0)"), ("C(21,1,4)", "C(7,1,4)"), ("D(6,2,1)", "D(2,2,0)")],
)
def test_central_z3_decomposition(label, inner):
    group = build_group(GroupSpec.parse(label))
    z3, h = central_z3_decomposition(group)
    assert z3.order == 3
    assert h.order == group.order // 3
    assert fingerprint(h) == fingerprint(build_group(GroupSpec.parse(inner)))
    # direct product: the Z3 factor is central and meets the complement trivially
    w = next(x for x in z3 if not x.is_identity)
    assert all(mm_canonical_eq(mm_mul(x, w), mm_mul(w, x)) for x in group)
    assert w not in h


@pytest.mark.parametrize("label", ["C(3,3,0)", "C(7,1,2)", "D(9,3,1)"])
def test_no_central_z3_factor(label):
    assert central_z3_decomposition(build_group(GroupSpec.parse(label))) is None


def test_inverse_table():
    t = perm_table(symmetric_group(3))
    for i, j in enumerate(t.inverse):
        assert t.table[i, j] == t.identity
    assert mm_inverse(gen_E()) == mm_mul(gen_E(), gen_E())
