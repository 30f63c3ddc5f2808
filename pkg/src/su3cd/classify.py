"""Canonical labels ``C(m,n,k)`` / ``D(m,n,k)`` and everything keyed on them."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from su3cd.congruence import admissible_r_list
from su3cd.errors import InvalidSpecError, VerificationError
from su3cd.groups import DEFAULT_CLOSURE_CAP, FiniteMatrixGroup, closure
from su3cd.monomial import (
    MonomialMatrix,
    gen_B,
    gen_E,
    gen_F,
    gen_G,
    mm_canonical_eq,
    mm_conjugate,
    mm_inverse,
    mm_mul,
    mm_pow,
)

_SPEC_RE = re.compile(r"^\s*([CD])\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")


def spec_exists(kind: str, m: int, n: int, k: int) -> bool:
    if kind not in ("C", "D") or m < 1 or n < 1 or m % n:
        return False
    r = m // n
    if not 0 <= k < r or (1 + k + k * k) % r:
        return False
    return kind == "C" or (1 + 2 * k) % r == 0


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    m: int
    n: int
    k: int

    def __post_init__(self) -> None:
        if not spec_exists(self.kind, self.m, self.n, self.k):
            raise InvalidSpecError(f"no group {self.kind}({self.m},{self.n},{self.k})")

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        match = _SPEC_RE.match(text)
        if match is None:
            raise InvalidSpecError(f"cannot parse {text!r}; expected C(m,n,k) or D(m,n,k)")
        kind, m, n, k = match.groups()
        return cls(kind, int(m), int(n), int(k))

    @property
    def r(self) -> int:
        return self.m // self.n

    @property
    def order(self) -> int:
        return (3 if self.kind == "C" else 6) * self.m * self.n

    def sort_key(self) -> tuple:
        return (self.order, self.kind, self.m, self.n, self.k)

    def __str__(self) -> str:
        return f"{self.kind}({self.m},{self.n},{self.k})"


class DerivedParams(NamedTuple):
    ell: int
    ell_prime: int | None


def derived_params(spec: GroupSpec) -> DerivedParams:
    r, k = spec.r, spec.k
    return DerivedParams((1 + k + k * k) // r, (1 + 2 * k) // r if spec.kind == "D" else None)


def generators_for(spec: GroupSpec) -> list[MonomialMatrix]:
    gens = [gen_E(), gen_F(spec.m, spec.k), gen_G(spec.m, spec.n)]
    if spec.kind == "D":
        gens.append(gen_B())
    return gens


def build_group(spec: GroupSpec, cap: int = DEFAULT_CLOSURE_CAP) -> FiniteMatrixGroup:
    group = closure(generators_for(spec), cap=cap)
    if group.order != spec.order:
        raise VerificationError(f"{spec}: closure has order {group.order}, expected {spec.order}")
    return group


@dataclass(frozen=True)
class PresentationCheck:
    failed: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failed

    def __bool__(self) -> bool:
        return self.ok


def check_presentation(
    spec: GroupSpec, generators: Sequence[MonomialMatrix] | None = None
) -> PresentationCheck:
    """Evaluate the defining relations of ``spec`` as exact matrix identities.

    ``generators`` defaults to :func:`generators_for`; passing other matrices
    (same order: E, F, G[, B]) checks whether they satisfy the relations.
    """
    gens = list(generators) if generators is not None else generators_for(spec)
    E, F, G = gens[:3]
    r, k, m, n = spec.r, spec.k, spec.m, spec.n
    ell, ell_prime = derived_params(spec)
    one = MonomialMatrix.identity()

    relations = [
        ("E F E^-1 = F^k G^l", mm_conjugate(E, F), mm_mul(mm_pow(F, k), mm_pow(G, ell))),
        ("E G E^-1 = F^-r G^-(k+1)", mm_conjugate(E, G), mm_mul(mm_pow(F, -r), mm_pow(G, -(k + 1)))),
        ("F^m = 1", mm_pow(F, m), one),
        ("G^n = 1", mm_pow(G, n), one),
        ("F G = G F", mm_mul(F, G), mm_mul(G, F)),
        ("E^3 = 1", mm_pow(E, 3), one),
    ]
    if spec.kind == "D":
        B = gens[3]
        relations += [
            ("B F B^-1 = F G^l'", mm_conjugate(B, F), mm_mul(F, mm_pow(G, ell_prime))),
            ("B G B^-1 = G^-1", mm_conjugate(B, G), mm_inverse(G)),
            ("B^2 = 1", mm_pow(B, 2), one),
            ("(E B)^2 = 1", mm_pow(mm_mul(E, B), 2), one),
        ]
    return PresentationCheck(tuple(name for name, lhs, rhs in relations if not mm_canonical_eq(lhs, rhs)))


def spec_isomorphic(s1: GroupSpec, s2: GroupSpec) -> bool:
    if (s1.kind, s1.m, s1.n) != (s2.kind, s2.m, s2.n):
        return False
    return s1.k == s2.k or 1 + s1.k + s2.k == s1.r


def conjugation_witness(s1: GroupSpec, s2: GroupSpec) -> MonomialMatrix | None:
    """``B`` when ``M -> B M B^-1`` carries ``s1``'s matrices onto ``s2``'s."""
    if s1.k == s2.k or not spec_isomorphic(s1, s2):
        return None
    return gen_B()


def canonical_spec(spec: GroupSpec) -> GroupSpec:
    partner = spec.r - 1 - spec.k
    return spec if spec.k <= partner else GroupSpec(spec.kind, spec.m, spec.n, partner)


class Factorization(NamedTuple):
    factor: str
    inner: GroupSpec


def factorize_spec(spec: GroupSpec) -> Factorization | None:
    """``Z3 x inner`` when ``m = 3m'`` with ``3`` dividing neither ``m'`` nor ``n``."""
    m, n = spec.m, spec.n
    if m % 3 or (m // 3) % 3 == 0 or n % 3 == 0:
        return None
    if spec.k % 3 != 1:
        raise VerificationError(f"{spec}: factorizing label with k not 1 mod 3")
    m_inner = m // 3
    return Factorization("Z3", GroupSpec(spec.kind, m_inner, n, spec.k % (m_inner // n)))


@dataclass(frozen=True)
class SeriesDescriptor:
    label: str
    r: int
    n: int
    display: str


def series_label(spec: GroupSpec) -> SeriesDescriptor:
    """Place ``spec`` in its row of the series summary.

    ``r`` and ``n`` hold the row's own parameters: ``r'`` and ``n'`` for the
    rows written in terms of them.
    """
    r, n, k = spec.r, spec.n, spec.k
    if spec.kind == "D":
        if r == 1:
            return SeriesDescriptor("Delta6n2", 1, n, f"Δ({6 * n * n})")
        if n % 3:
            return SeriesDescriptor("Delta6n2_times_Z3", 1, n, f"Z3 × Δ({6 * n * n})")
        return SeriesDescriptor("D_931", 3, n // 3, f"D_{{9n',3n'}}^{{(1)}} (n'={n // 3})")
    if r == 1:
        return SeriesDescriptor("Delta3n2", 1, n, f"Δ({3 * n * n})")
    if r % 3:
        if n == 1:
            return SeriesDescriptor("Tm", r, 1, f"T_{spec.m}")
        return SeriesDescriptor("C_primitive", r, n, f"C_{{{r}n,n}}^{{({k})}} (n={n})")
    rp = r // 3
    if n % 3:
        return SeriesDescriptor("C_times_Z3", rp, n, f"Z3 × C_{{{rp}n,n}}^{{({k % rp})}} (n={n})")
    return SeriesDescriptor("C_933", rp, n // 3, f"C_{{{9 * rp}n',3n'}}^{{({k})}} (n'={n // 3})")


def enumerate_specs(max_order: int) -> list[GroupSpec]:
    """All canonical labels with group order at most ``max_order``."""
    if max_order < 3:
        raise ValueError(f"max_order must be at least 3, got {max_order}")
    specs = []
    for r, ks in admissible_r_list(max_order // 3):
        canonical = [k for k in ks if k <= r - 1 - k]
        n = 1
        while 3 * r * n * n <= max_order:
            specs += [GroupSpec("C", r * n, n, k) for k in canonical]
            n += 1
    for r, k in ((1, 0), (3, 1)):
        n = 1
        while 6 * r * n * n <= max_order:
            specs.append(GroupSpec("D", r * n, n, k))
            n += 1
    return sorted(specs, key=GroupSpec.sort_key)


def _diagonal_span_index(m: int, vectors: list[tuple[int, int]]) -> int:
    """Index in ``Z^2`` of the lattice spanned by ``vectors`` and ``m Z^2``.

    The subgroup of ``Z_m^2`` generated by ``vectors`` has order ``m^2``
    divided by this index, which is the gcd of all 2x2 minors.
    """
    cols = vectors + [(m, 0), (0, m)]
    g = 0
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            g = math.gcd(g, cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0])
            if g == 1:
                return 1
    return g


def _generates_by_lattice(spec: GroupSpec, a: int, b: int) -> bool:
    # ⟨h, E(, B)⟩ = (diagonal span of the conjugates of h) ⋊ ⟨E(, B)⟩
    m, r, k = spec.m, spec.r, spec.k
    x0, x1 = a % m, (a * k - b * r) % m
    x2 = (-x0 - x1) % m
    triple = (x0, x1, x2)
    shifts = [(triple[i], triple[(i + 1) % 3]) for i in range(3)]
    if spec.kind == "D":
        shifts += [(triple[i], triple[(i + 2) % 3]) for i in range(3)]
    return _diagonal_span_index(m, shifts) == r


def _generates_by_closure(spec: GroupSpec, a: int, b: int) -> bool:
    h = mm_mul(mm_pow(gen_F(spec.m, spec.k), a), mm_pow(gen_G(spec.m, spec.n), b))
    gens = [h, gen_E()] + ([gen_B()] if spec.kind == "D" else [])
    return closure(gens, cap=spec.order).order == spec.order


def single_diagonal_generator(spec: GroupSpec, method: str = "lattice") -> tuple[int, int] | None:
    """Smallest ``(a, b)`` such that ``F^a G^b`` with ``E`` (and ``B``) generates the group.

    ``method="closure"`` enumerates each candidate group directly; the
    default decides the same question from the span of the conjugates of
    ``F^a G^b``, which is exact and avoids building the group.
    """
    test = {"lattice": _generates_by_lattice, "closure": _generates_by_closure}[method]
    for a in range(spec.m):
        for b in range(spec.n):
            if test(spec, a, b):
                return a, b
    return None
