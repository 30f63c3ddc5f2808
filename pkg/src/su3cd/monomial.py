"""Exact 3x3 monomial matrices with root-of-unity entries.

A :class:`MonomialMatrix` stores a permutation ``perm`` and three phase
exponents over a shared modulus ``L``: row ``i`` has its single nonzero entry
in column ``perm[i]`` and that entry equals ``exp(2*pi*i*phases[i]/L)``.
Signs are phases too (``-1`` is ``L/2`` for even ``L``), so every element of
the groups handled here is represented without floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

MAX_MODULUS = 2**32

IDENTITY_PERM = (0, 1, 2)
PERMUTATIONS: tuple[tuple[int, int, int], ...] = tuple(permutations(range(3)))  # type: ignore[assignment]
PERM_INDEX = {p: i for i, p in enumerate(PERMUTATIONS)}


def perm_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def perm_order(perm: tuple[int, ...]) -> int:
    fixed = sum(1 for i in range(3) if perm[i] == i)
    if fixed == 3:
        return 1
    return 2 if fixed == 1 else 3


@dataclass(frozen=True, slots=True)
class PhaseExp:
    """The root of unity ``exp(2*pi*i*num/modulus)``."""

    num: int
    modulus: int

    def __post_init__(self) -> None:
        if not 1 <= self.modulus <= MAX_MODULUS:
            raise ValueError(f"modulus must be in [1, 2**32], got {self.modulus}")
        object.__setattr__(self, "num", self.num % self.modulus)

    def __mul__(self, other: PhaseExp) -> PhaseExp:
        L = math.lcm(self.modulus, other.modulus)
        return PhaseExp(
            self.num * (L // self.modulus) + other.num * (L // other.modulus), L
        )

    def order(self) -> int:
        return self.modulus // math.gcd(self.modulus, self.num)

    def reduced(self) -> PhaseExp:
        g = math.gcd(self.modulus, self.num)
        return PhaseExp(self.num // g, self.modulus // g)

    def to_complex(self) -> complex:
        return complex(np.exp(2j * np.pi * self.num / self.modulus))


@dataclass(frozen=True, slots=True)
class MonomialMatrix:
    """Exact determinant-one monomial matrix.

    Equality and hashing are structural: two instances compare equal only if
    they share the modulus. Use :func:`mm_canonical_eq` to compare across
    moduli, or :meth:`with_modulus` to move a matrix into a group's context.
    """

    perm: tuple[int, int, int]
    phases: tuple[int, int, int]
    modulus: int

    def __post_init__(self) -> None:
        L = self.modulus
        if not 1 <= L <= MAX_MODULUS:
            raise ValueError(f"modulus must be in [1, 2**32], got {L}")
        perm = tuple(self.perm)
        if perm not in PERM_INDEX:
            raise ValueError(f"not a permutation of (0, 1, 2): {self.perm!r}")
        phases = tuple(p % L for p in self.phases)
        if len(phases) != 3:
            raise ValueError("exactly three phases are required")
        total = sum(phases) % L
        if perm_sign(perm) == 1:
            ok = total == 0
        else:
            ok = L % 2 == 0 and total == L // 2
        if not ok:
            raise ValueError(
                f"determinant is not 1 (perm={perm}, phases={phases}, L={L})"
            )
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", phases)

    @classmethod
    def identity(cls, modulus: int = 1) -> MonomialMatrix:
        return cls(IDENTITY_PERM, (0, 0, 0), modulus)

    @classmethod
    def diag(cls, phases: tuple[int, int, int], modulus: int) -> MonomialMatrix:
        return cls(IDENTITY_PERM, phases, modulus)

    @property
    def is_diagonal(self) -> bool:
        return self.perm == IDENTITY_PERM

    @property
    def is_identity(self) -> bool:
        return self.perm == IDENTITY_PERM and self.phases == (0, 0, 0)

    def entry(self, row: int) -> tuple[int, PhaseExp]:
        """Column and value of the nonzero entry in ``row``."""
        return self.perm[row], PhaseExp(self.phases[row], self.modulus)

    def with_modulus(self, modulus: int) -> MonomialMatrix:
        if modulus == self.modulus:
            return self
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        s = modulus // self.modulus
        return MonomialMatrix(self.perm, tuple(p * s for p in self.phases), modulus)  # type: ignore[arg-type]

    def reduced(self) -> MonomialMatrix:
        """Same matrix over the smallest modulus that represents it."""
        g = math.gcd(self.modulus, *self.phases)
        return MonomialMatrix(self.perm, tuple(p // g for p in self.phases), self.modulus // g)  # type: ignore[arg-type]

    @property
    def perm_sign(self) -> int:
        return perm_sign(self.perm)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((3, 3), dtype=complex)
        for i in range(3):
            out[i, self.perm[i]] = np.exp(2j * np.pi * self.phases[i] / self.modulus)
        return out

    def __matmul__(self, other: MonomialMatrix) -> MonomialMatrix:
        return mm_mul(self, other)

    def __repr__(self) -> str:
        return f"MonomialMatrix(perm={self.perm}, phases={self.phases}, L={self.modulus})"


def mm_mul(a: MonomialMatrix, b: MonomialMatrix) -> MonomialMatrix:
    if a.modulus != b.modulus:
        L = math.lcm(a.modulus, b.modulus)
        a, b = a.with_modulus(L), b.with_modulus(L)
    pa, pb = a.perm, b.perm
    ph_a, ph_b = a.phases, b.phases
    return MonomialMatrix(
        (pb[pa[0]], pb[pa[1]], pb[pa[2]]),
        (ph_a[0] + ph_b[pa[0]], ph_a[1] + ph_b[pa[1]], ph_a[2] + ph_b[pa[2]]),
        a.modulus,
    )


def mm_inverse(a: MonomialMatrix) -> MonomialMatrix:
    # unitary: the inverse is the conjugate transpose
    perm = [0, 0, 0]
    phases = [0, 0, 0]
    for i in range(3):
        perm[a.perm[i]] = i
        phases[a.perm[i]] = -a.phases[i]
    return MonomialMatrix(tuple(perm), tuple(phases), a.modulus)  # type: ignore[arg-type]


def mm_pow(a: MonomialMatrix, exponent: int) -> MonomialMatrix:
    if exponent < 0:
        a, exponent = mm_inverse(a), -exponent
    result = MonomialMatrix.identity(a.modulus)
    while exponent:
        if exponent & 1:
            result = mm_mul(result, a)
        a = mm_mul(a, a)
        exponent >>= 1
    return result


def mm_conjugate(x: MonomialMatrix, a: MonomialMatrix) -> MonomialMatrix:
    """Return ``x a x^-1``."""
    return mm_mul(mm_mul(x, a), mm_inverse(x))


def mm_order(a: MonomialMatrix) -> int:
    """Multiplicative order: permutation order times order of the diagonal power."""
    p = perm_order(a.perm)
    d = mm_pow(a, p)
    return p * (d.modulus // math.gcd(d.modulus, *d.phases))


def mm_canonical_eq(a: MonomialMatrix, b: MonomialMatrix) -> bool:
    if a.perm != b.perm:
        return False
    L = math.lcm(a.modulus, b.modulus)
    return a.with_modulus(L).phases == b.with_modulus(L).phases


# -- named generators --------------------------------------------------------


def gen_E() -> MonomialMatrix:
    """Cyclic permutation matrix with ones at (0,1), (1,2), (2,0)."""
    return MonomialMatrix((1, 2, 0), (0, 0, 0), 1)


def gen_B() -> MonomialMatrix:
    """``-1`` at (0,0), (1,2), (2,1)."""
    return MonomialMatrix((0, 2, 1), (1, 1, 1), 2)


def gen_F(m: int, k: int) -> MonomialMatrix:
    """``diag(e, e^k, e^(-k-1))`` with ``e = exp(2 pi i / m)``."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return MonomialMatrix.diag((1, k, -k - 1), m)


def gen_G(m: int, n: int) -> MonomialMatrix:
    """``diag(1, e^-r, e^r)`` with ``r = m/n``."""
    if m < 1 or n < 1 or m % n:
        raise ValueError(f"n must be a positive divisor of m, got m={m}, n={n}")
    r = m // n
    return MonomialMatrix.diag((0, -r, r), m)


def gen_F_legacy(mu: int, alpha: int, beta: int) -> MonomialMatrix:
    if mu < 1:
        raise ValueError(f"mu must be positive, got {mu}")
    if not (0 <= alpha < mu and 0 <= beta < mu):
        raise ValueError(f"need 0 <= alpha, beta < mu; got alpha={alpha}, beta={beta}, mu={mu}")
    return MonomialMatrix.diag((alpha, beta, -alpha - beta), mu)


def gen_R_legacy(nu: int, rho: int, sigma: int) -> MonomialMatrix:
    if nu < 1:
        raise ValueError(f"nu must be positive, got {nu}")
    if not (0 <= rho < nu and 0 <= sigma < nu):
        raise ValueError(f"need 0 <= rho, sigma < nu; got rho={rho}, sigma={sigma}, nu={nu}")
    L = math.lcm(nu, 2)
    u = L // nu
    return MonomialMatrix((0, 2, 1), (rho * u, sigma * u, L // 2 - (rho + sigma) * u), L)


_GENERATORS = {
    "E": gen_E,
    "B": gen_B,
    "F_canonical": gen_F,
    "G_canonical": gen_G,
    "F_legacy": gen_F_legacy,
    "R_legacy": gen_R_legacy,
}


def make_generator(which: str, *params: int) -> MonomialMatrix:
    """Build a named generator, e.g. ``make_generator("F_canonical", 14, 2)``."""
    try:
        factory = _GENERATORS[which]
    except KeyError:
        raise ValueError(f"unknown generator {which!r}; expected one of {sorted(_GENERATORS)}") from None
    return factory(*params)
