"""Finite matrix groups: closure, structural invariants, brute-force isomorphism.

Everything here works by direct enumeration. Groups handled by the tests are
small (a few thousand elements at most), so the simple algorithms are also
the trustworthy ones.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence, Union

import numpy as np

from su3cd.congruence import factorize
from su3cd.errors import GroupTooLargeError
from su3cd.monomial import PERM_INDEX, MonomialMatrix, mm_mul, mm_order

DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_ISOMORPHISM_CAP = 1000

_TABLE_BLOCK = 256


def _sort_key(x: MonomialMatrix) -> tuple:
    return (x.perm, x.phases)


class TableGroup:
    """A finite group given by its Cayley table on indices ``0..N-1``.

    ``table[a, b]`` is the index of ``a*b``. ``labels`` optionally carries the
    original element objects, in index order.
    """

    def __init__(self, table: np.ndarray, labels: Sequence[Any] | None = None):
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        n = self.table.shape[0]
        if self.table.shape != (n, n):
            raise ValueError("Cayley table must be square")
        self.labels = list(labels) if labels is not None else list(range(n))
        idx = np.arange(n)
        ident = np.flatnonzero((self.table == idx).all(axis=1))
        if ident.size != 1:
            raise ValueError("table has no unique identity")
        self.identity = int(ident[0])
        self.inverse = np.argmax(self.table == self.identity, axis=1)

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], op: Callable[[Any, Any], Any]) -> TableGroup:
        index = {x: i for i, x in enumerate(elements)}
        table = np.array([[index[op(a, b)] for b in elements] for a in elements], dtype=np.int64)
        return cls(table, elements)

    def __len__(self) -> int:
        return self.table.shape[0]

    @property
    def order(self) -> int:
        return len(self)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = len(self)
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        t = 1
        while True:
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = t
            if orders.all():
                return orders
            cur = self.table[cur, idx]
            t += 1

    def generated(self, gens: Iterable[int]) -> np.ndarray:
        """Sorted indices of the subgroup generated by ``gens``."""
        gens = np.unique(np.asarray(list(gens), dtype=np.int64))
        mask = np.zeros(len(self), dtype=bool)
        mask[self.identity] = True
        frontier = np.array([self.identity])
        while frontier.size and gens.size:
            prod = self.table[np.ix_(frontier, gens)].ravel()
            new = np.unique(prod[~mask[prod]])
            mask[new] = True
            frontier = new
        return np.flatnonzero(mask)

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        n = len(self)
        seen = np.zeros(n, dtype=bool)
        classes = []
        for x in range(n):
            if seen[x]:
                continue
            orbit = np.unique(self.table[self.table[:, x], self.inverse])
            seen[orbit] = True
            classes.append(orbit)
        return classes

    @cached_property
    def class_size_of(self) -> np.ndarray:
        sizes = np.zeros(len(self), dtype=np.int64)
        for cls in self.conjugacy_classes:
            sizes[cls] = cls.size
        return sizes

    @cached_property
    def center(self) -> np.ndarray:
        return np.flatnonzero((self.table == self.table.T).all(axis=1))

    @cached_property
    def derived_subgroup(self) -> np.ndarray:
        t, inv = self.table, self.inverse
        comm = t[t[t, inv[:, None]], inv[None, :]]
        return self.generated(np.unique(comm))

    def abelianization_invariants(self) -> list[int]:
        """Invariant factors of ``G/[G,G]``, ascending, each dividing the next."""
        derived = self.derived_subgroup
        q = len(self) // derived.size
        if q == 1:
            return []
        in_d = np.zeros(len(self), dtype=bool)
        in_d[derived] = True
        # order of each coset x[G,G] in the quotient
        idx = np.arange(len(self))
        cur = idx.copy()
        coset_order = np.zeros(len(self), dtype=np.int64)
        t = 1
        while not coset_order.all():
            coset_order[in_d[cur] & (coset_order == 0)] = t
            cur = self.table[cur, idx]
            t += 1

        exponents_by_prime = {}
        for p, e in factorize(q):
            logs = [0]
            while logs[-1] < e:
                pj = p ** len(logs)
                count = int(np.count_nonzero(pj % coset_order == 0)) // derived.size
                logs.append(round(math.log(count, p)))
            # number of cyclic p-factors of order >= p^j is logs[j] - logs[j-1]
            at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
            parts = []
            for j in range(1, len(logs)):
                parts += [j] * (at_least[j - 1] - at_least[j])
            exponents_by_prime[p] = sorted(parts, reverse=True)

        width = max(len(v) for v in exponents_by_prime.values())
        factors = []
        for i in range(width):
            d = 1
            for p, parts in exponents_by_prime.items():
                if i < len(parts):
                    d *= p ** parts[i]
            factors.append(d)
        return sorted(factors)


class FiniteMatrixGroup:
    """A fully enumerated group of monomial matrices over one shared modulus."""

    def __init__(
        self,
        elements: Iterable[MonomialMatrix],
        generators: Sequence[MonomialMatrix],
        modulus: int,
    ):
        self.modulus = modulus
        self.elements: tuple[MonomialMatrix, ...] = tuple(
            sorted((x.with_modulus(modulus) for x in elements), key=_sort_key)
        )
        self._members = frozenset(self.elements)
        self.generators: tuple[MonomialMatrix, ...] = tuple(g.with_modulus(modulus) for g in generators)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[MonomialMatrix]:
        return iter(self.elements)

    def __contains__(self, x: MonomialMatrix) -> bool:
        if self.modulus % x.modulus:
            x = x.reduced()
            if self.modulus % x.modulus:
                return False
        return x.with_modulus(self.modulus) in self._members

    def same_elements(self, other: FiniteMatrixGroup) -> bool:
        """Equality as sets of complex matrices."""
        return self.order == other.order and all(x in other for x in self.elements)

    def __repr__(self) -> str:
        return f"FiniteMatrixGroup(order={self.order}, L={self.modulus}, generators={len(self.generators)})"

    def table_group(self) -> TableGroup:
        if getattr(self, "_table", None) is None:
            self._table = TableGroup(_matrix_cayley_table(self), self.elements)
        return self._table


def _element_keys(perm: np.ndarray, phases: np.ndarray, L: int) -> np.ndarray:
    # third phase is fixed by the determinant, so (perm, ph0, ph1) is a key
    lookup = np.full(27, -1, dtype=np.int64)
    for p, i in PERM_INDEX.items():
        lookup[p[0] * 9 + p[1] * 3 + p[2]] = i
    pidx = lookup[perm[..., 0] * 9 + perm[..., 1] * 3 + perm[..., 2]]
    return (pidx * L + phases[..., 0]) * L + phases[..., 1]


def _matrix_cayley_table(g: FiniteMatrixGroup) -> np.ndarray:
    L = g.modulus
    n = g.order
    P = np.array([x.perm for x in g.elements], dtype=np.int64)
    Ph = np.array([x.phases for x in g.elements], dtype=np.int64)
    keys = _element_keys(P, Ph, L)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    table = np.empty((n, n), dtype=np.int64)
    cols = np.arange(n)[None, :, None]
    for start in range(0, n, _TABLE_BLOCK):
        rows = slice(start, min(n, start + _TABLE_BLOCK))
        PA = np.broadcast_to(P[rows, None, :], (P[rows].shape[0], n, 3))
        perm_ab = P[cols, PA]
        phase_ab = (Ph[rows, None, :] + Ph[cols, PA]) % L
        k = _element_keys(perm_ab, phase_ab, L)
        pos = np.searchsorted(sorted_keys, k)
        table[rows] = order[pos]
    return table


GroupLike = Union[FiniteMatrixGroup, TableGroup]


def as_table(g: GroupLike) -> TableGroup:
    return g if isinstance(g, TableGroup) else g.table_group()


def closure(generators: Sequence[MonomialMatrix], cap: int = DEFAULT_CLOSURE_CAP) -> FiniteMatrixGroup:
    """Enumerate the group generated by ``generators`` breadth first.

    Each new element is a frontier element times one generator, so words are
    found in order of length. Raises :class:`GroupTooLargeError` past ``cap``.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator")
    L = math.lcm(*(g.modulus for g in gens))
    gens = [g.with_modulus(L) for g in gens]
    ident = MonomialMatrix.identity(L)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mm_mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > cap:
            raise GroupTooLargeError(f"closure exceeded {cap} elements")
        frontier = nxt
    return FiniteMatrixGroup(seen, gens, L)


def small_generating_set(elements: Sequence[MonomialMatrix]) -> list[MonomialMatrix]:
    """Greedy generating set for a group given as an element list, highest orders first."""
    target = len(elements)
    gens: list[MonomialMatrix] = []
    current: set[MonomialMatrix] = set()
    for x in sorted(elements, key=lambda e: (-mm_order(e), _sort_key(e))):
        if len(current) == target:
            break
        if x.is_identity or x in current:
            continue
        gens.append(x)
        current = set(closure(gens).elements)
    return gens or [e for e in elements if e.is_identity][:1]


def diagonal_subgroup(g: FiniteMatrixGroup) -> FiniteMatrixGroup:
    diag = [x for x in g.elements if x.is_diagonal]
    return FiniteMatrixGroup(diag, small_generating_set(diag), g.modulus)


@dataclass(frozen=True)
class Fingerprint:
    order: int
    order_histogram: dict[int, int]
    center_order: int
    derived_order: int
    abelianization: tuple[int, ...]
    class_sizes: tuple[int, ...]


def fingerprint(g: GroupLike) -> Fingerprint:
    t = as_table(g)
    hist = Counter(int(o) for o in t.element_orders)
    return Fingerprint(
        order=len(t),
        order_histogram=dict(sorted(hist.items())),
        center_order=int(t.center.size),
        derived_order=int(t.derived_subgroup.size),
        abelianization=tuple(t.abelianization_invariants()),
        class_sizes=tuple(sorted(int(c.size) for c in t.conjugacy_classes)),
    )


def _element_signatures(t: TableGroup) -> list[tuple[int, int, bool]]:
    central = np.zeros(len(t), dtype=bool)
    central[t.center] = True
    return [
        (int(o), int(s), bool(c))
        for o, s, c in zip(t.element_orders, t.class_size_of, central)
    ]


def brute_force_isomorphism(
    g1: GroupLike, g2: GroupLike, cap: int = DEFAULT_ISOMORPHISM_CAP
) -> dict[Any, Any] | None:
    """Search exhaustively for an isomorphism ``g1 -> g2``.

    Returns a map from a generating set of ``g1`` to the images in ``g2``
    (using element labels), or ``None`` when no isomorphism exists. Candidate
    images are restricted to elements with the same order, class size and
    centrality; every surviving assignment is checked edge by edge on the
    Cayley graph, so a ``None`` answer is a proof of non-isomorphism.
    """
    for g in (g1, g2):
        if len(g) > cap:
            raise GroupTooLargeError(f"group of order {len(g)} exceeds isomorphism cap {cap}")
    t1, t2 = as_table(g1), as_table(g2)
    n = len(t1)
    if n != len(t2):
        return None
    sig1, sig2 = _element_signatures(t1), _element_signatures(t2)
    if Counter(sig1) != Counter(sig2):
        return None
    candidates: dict[tuple, list[int]] = {}
    for y, s in enumerate(sig2):
        candidates.setdefault(s, []).append(y)

    # rarest signatures first keeps the branching factor low
    ranked = sorted(range(n), key=lambda x: (len(candidates[sig1[x]]), -sig1[x][0], x))
    gens: list[int] = []
    current = t1.generated([])
    for x in ranked:
        if current.size == n:
            break
        if x in set(current.tolist()):
            continue
        gens.append(x)
        current = t1.generated(gens)

    # spanning trees of the prefix subgroups <gens[:j+1]>
    trees = []
    for j in range(len(gens)):
        sub = t1.generated(gens[: j + 1])
        parent = {t1.identity: None}
        steps = []
        frontier = [t1.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for gi in range(j + 1):
                    y = int(t1.table[x, gens[gi]])
                    if y not in parent:
                        parent[y] = x
                        steps.append((y, x, gi))
                        nxt.append(y)
            frontier = nxt
        trees.append((sub, steps))

    tab2 = t2.table.tolist()
    t1_table = t1.table
    t2_table = t2.table

    def consistent(j: int, images: list[int]) -> np.ndarray | None:
        sub, steps = trees[j]
        mapping = np.full(n, -1, dtype=np.int64)
        mapping[t1.identity] = t2.identity
        m = [0] * n
        m[t1.identity] = t2.identity
        for y, x, gi in steps:
            m[y] = tab2[m[x]][images[gi]]
        mapping[sub] = [m[x] for x in sub]
        image = mapping[sub]
        if np.unique(image).size != sub.size:
            return None
        for gi in range(j + 1):
            if not np.array_equal(mapping[t1_table[sub, gens[gi]]], t2_table[image, images[gi]]):
                return None
        return mapping

    def search(j: int, images: list[int]) -> list[int] | None:
        if j == len(gens):
            return images
        for y in candidates[sig1[gens[j]]]:
            if y in images:
                continue
            trial = images + [y]
            if consistent(j, trial) is not None:
                found = search(j + 1, trial)
                if found is not None:
                    return found
        return None

    images = search(0, [])
    if images is None:
        return None
    return {t1.labels[x]: t2.labels[y] for x, y in zip(gens, images)}


def central_z3_decomposition(
    g: FiniteMatrixGroup,
) -> tuple[FiniteMatrixGroup, FiniteMatrixGroup] | None:
    """Split ``g`` as ``{1, w1, w^2 1} x H`` when possible (``w`` a cube root of 1).

    ``H`` is searched among closures of the generators each multiplied by a
    power of ``w 1``; any direct complement arises this way, since every
    generator decomposes uniquely as ``w^a h``.
    """
    L = g.modulus
    if L % 3:
        return None
    w = MonomialMatrix.diag((L // 3, L // 3, L // 3), L)
    if w not in g:
        return None
    w2 = mm_mul(w, w)
    z3 = closure([w])
    choices = [(x, mm_mul(w, x), mm_mul(w2, x)) for x in g.generators]
    target = g.order // 3
    for combo in itertools.product(*choices):
        h = closure(combo, cap=g.order)
        if h.order == target and w not in h:
            return z3, h
    return None
