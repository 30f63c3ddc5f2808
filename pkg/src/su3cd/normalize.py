"""Translate legacy ``C(mu,alpha,beta)`` / ``D(mu,alpha,beta;nu,rho,sigma)`` labels.

The legacy labels name a group by the parameters of its generators, and no
closed formula gives ``k`` from them. Normalization therefore builds the
group, extracts its diagonal subgroup and reads ``m``, ``n`` and ``k`` off
an element of the form ``diag(e, e^a, e^(-a-1))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Union

from su3cd.classify import GroupSpec, build_group, generators_for, spec_exists
from su3cd.errors import InvalidSpecError, VerificationError
from su3cd.groups import (
    DEFAULT_ISOMORPHISM_CAP,
    FiniteMatrixGroup,
    brute_force_isomorphism,
    closure,
    diagonal_subgroup,
    fingerprint,
)
from su3cd.monomial import MonomialMatrix, gen_E, gen_F_legacy, gen_G, gen_R_legacy, mm_order

# D-type results are compared by fingerprint up to this order, and by an
# explicit isomorphism search up to 700
FINGERPRINT_CAP = 3000
ISOMORPHISM_CHECK_CAP = 700

_INT = r"\s*(\d+)\s*"
_LEGACY_C_RE = re.compile(rf"^\s*C\s*\({_INT},{_INT},{_INT}\)\s*$")
_LEGACY_D_RE = re.compile(rf"^\s*D\s*\({_INT},{_INT},{_INT};{_INT},{_INT},{_INT}\)\s*$")


@dataclass(frozen=True)
class LegacyC:
    mu: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.mu < 1 or not (0 <= self.alpha < self.mu and 0 <= self.beta < self.mu):
            raise InvalidSpecError(f"invalid legacy parameters {self}")

    def generators(self) -> list[MonomialMatrix]:
        return [gen_E(), gen_F_legacy(self.mu, self.alpha, self.beta)]

    def __str__(self) -> str:
        return f"C({self.mu},{self.alpha},{self.beta})"


@dataclass(frozen=True)
class LegacyD:
    mu: int
    alpha: int
    beta: int
    nu: int
    rho: int
    sigma: int

    def __post_init__(self) -> None:
        if self.mu < 1 or not (0 <= self.alpha < self.mu and 0 <= self.beta < self.mu):
            raise InvalidSpecError(f"invalid legacy parameters {self}")
        if self.nu < 1 or not (0 <= self.rho < self.nu and 0 <= self.sigma < self.nu):
            raise InvalidSpecError(f"invalid legacy parameters {self}")

    def generators(self) -> list[MonomialMatrix]:
        return [
            gen_E(),
            gen_F_legacy(self.mu, self.alpha, self.beta),
            gen_R_legacy(self.nu, self.rho, self.sigma),
        ]

    def __str__(self) -> str:
        return f"D({self.mu},{self.alpha},{self.beta};{self.nu},{self.rho},{self.sigma})"


Legacy = Union[LegacyC, LegacyD]


def parse_legacy(text: str) -> Legacy:
    if match := _LEGACY_C_RE.match(text):
        return LegacyC(*map(int, match.groups()))
    if match := _LEGACY_D_RE.match(text):
        return LegacyD(*map(int, match.groups()))
    raise InvalidSpecError(
        f"cannot parse {text!r}; expected C(mu,alpha,beta) or D(mu,alpha,beta;nu,rho,sigma)"
    )


class AbelianNormalForm(NamedTuple):
    m: int
    n: int
    r: int
    a: int
    k: int
    witness: MonomialMatrix


def abelian_normal_form(diag: FiniteMatrixGroup) -> AbelianNormalForm:
    """Read ``(m, n, k)`` off a cyclically invariant diagonal group.

    ``witness`` is the first element (in the group's sorted order) of the
    form ``diag(e, e^a, e^(-a-1))`` with ``e = exp(2 pi i/m)``.
    """
    L = diag.modulus
    m = max(mm_order(x) for x in diag)
    if diag.order % m or m % (diag.order // m):
        raise VerificationError(f"diagonal group of order {diag.order} is not Z_m x Z_n with m={m}")
    n = diag.order // m
    r = m // n
    step = L // m
    for x in diag:
        if x.phases[0] == step % L:
            if x.phases[1] % step:
                raise VerificationError(f"{x} has entries outside the m-th roots of unity")
            a = x.phases[1] // step
            break
    else:
        raise VerificationError(f"no element diag(e, e^a, e^(-a-1)) with e of order {m}")
    G = gen_G(m, n)
    if G not in diag:
        raise VerificationError(f"diag(1, e^-{r}, e^{r}) is missing from the diagonal group")
    if closure([x, G]).order != diag.order:
        raise VerificationError("normal-form generators do not span the diagonal group")
    return AbelianNormalForm(m, n, r, a, a % r, x)


class Normalized(NamedTuple):
    spec: GroupSpec
    group: FiniteMatrixGroup


def _spec_from_form(kind: str, form: AbelianNormalForm) -> GroupSpec:
    if not spec_exists(kind, form.m, form.n, form.k):
        raise VerificationError(f"derived label {kind}({form.m},{form.n},{form.k}) violates the congruences")
    return GroupSpec(kind, form.m, form.n, form.k)


def normalize_c(legacy: LegacyC) -> Normalized:
    full = closure(legacy.generators())
    form = abelian_normal_form(diagonal_subgroup(full))
    spec = _spec_from_form("C", form)
    if full.order != spec.order:
        raise VerificationError(f"{legacy}: order {full.order} != 3mn = {spec.order}")
    if not closure(generators_for(spec)).same_elements(full):
        raise VerificationError(f"{legacy}: canonical generators of {spec} give a different matrix set")
    return Normalized(spec, full)


def normalize_d(legacy: LegacyD) -> Normalized:
    """Normalize a D-type legacy label.

    The canonical generators live in a basis that may differ from the legacy
    one, so the result is checked for isomorphism rather than set equality.
    """
    full = closure(legacy.generators())
    form = abelian_normal_form(diagonal_subgroup(full))
    spec = _spec_from_form("D", form)
    if full.order != spec.order:
        raise VerificationError(f"{legacy}: order {full.order} != 6mn = {spec.order}")
    if full.order <= FINGERPRINT_CAP:
        canonical = build_group(spec)
        if fingerprint(full) != fingerprint(canonical):
            raise VerificationError(f"{legacy}: fingerprint differs from {spec}")
        if full.order <= ISOMORPHISM_CHECK_CAP:
            cap = max(DEFAULT_ISOMORPHISM_CAP, full.order)
            if brute_force_isomorphism(full, canonical, cap=cap) is None:
                raise VerificationError(f"{legacy}: not isomorphic to {spec}")
    return Normalized(spec, full)


def normalize(legacy: Legacy | str) -> Normalized:
    if isinstance(legacy, str):
        legacy = parse_legacy(legacy)
    return normalize_c(legacy) if isinstance(legacy, LegacyC) else normalize_d(legacy)
