"""Catalog emission, the admissible-r table and the numerical experiments."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from su3cd.classify import (
    GroupSpec,
    build_group,
    check_presentation,
    derived_params,
    enumerate_specs,
    factorize_spec,
    series_label,
    single_diagonal_generator,
)
from su3cd.congruence import (
    admissible_r_list,
    canonical_k_values,
    factorize,
    solve_k_joint,
)
from su3cd.errors import VerificationError
from su3cd.groups import diagonal_subgroup
from su3cd.monomial import mm_order

SCHEMA_VERSION = 1
VERIFY_LEVELS = ("auto", "none", "order", "full")
FULL_VERIFY_BELOW = 1000
THREADS_ENV = "SU3CD_THREADS"


@dataclass(frozen=True)
class CatalogEntry:
    spec: str
    kind: str
    m: int
    n: int
    k: int
    r: int
    ell: int
    ell_prime: int | None
    order: int
    series_label: str
    factorization: str | None
    isomorphism_partner_k: int | None

    @classmethod
    def from_spec(cls, spec: GroupSpec) -> CatalogEntry:
        ell, ell_prime = derived_params(spec)
        fac = factorize_spec(spec)
        partner = spec.r - 1 - spec.k
        return cls(
            spec=str(spec),
            kind=spec.kind,
            m=spec.m,
            n=spec.n,
            k=spec.k,
            r=spec.r,
            ell=ell,
            ell_prime=ell_prime,
            order=spec.order,
            series_label=series_label(spec).display,
            factorization=str(fac.inner) if fac else None,
            isomorphism_partner_k=partner if partner != spec.k else None,
        )


def resolve_verify_level(level: str, order: int) -> str:
    if level not in VERIFY_LEVELS:
        raise ValueError(f"unknown verification level {level!r}")
    if level == "auto":
        return "full" if order < FULL_VERIFY_BELOW else "order"
    return level


def verify_spec(spec: GroupSpec, level: str = "auto") -> str:
    """Rebuild ``spec`` and check it to the requested depth; returns the level used.

    ``order`` checks the closure size; ``full`` adds the presentation and the
    shape of the diagonal subgroup. Failures raise :class:`VerificationError`.
    """
    level = resolve_verify_level(level, spec.order)
    if level == "none":
        return level
    group = build_group(spec)
    if level == "full":
        check = check_presentation(spec)
        if not check:
            raise VerificationError(f"{spec}: relations fail: {', '.join(check.failed)}")
        diag = diagonal_subgroup(group)
        if diag.order != spec.m * spec.n or max(mm_order(x) for x in diag) != spec.m:
            raise VerificationError(f"{spec}: diagonal subgroup is not Z_m x Z_n")
    return level


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_catalog(max_order: int, verify: str = "auto", threads: int | None = None) -> dict[str, Any]:
    specs = enumerate_specs(max_order)

    def check(spec: GroupSpec) -> CatalogEntry:
        verify_spec(spec, verify)
        return CatalogEntry.from_spec(spec)

    with ThreadPoolExecutor(max_workers=threads or thread_count()) as pool:
        entries = list(pool.map(check, specs))
    return {
        "schema_version": SCHEMA_VERSION,
        "max_order": max_order,
        "entries": [asdict(e) for e in entries],
    }


def dump_catalog(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_catalog(max_order: int, path: str | os.PathLike, verify: str = "auto", threads: int | None = None) -> dict:
    doc = build_catalog(max_order, verify=verify, threads=threads)
    Path(path).write_text(dump_catalog(doc), encoding="utf-8")
    return doc


# -- admissible r table ------------------------------------------------------


@dataclass(frozen=True)
class Table1Row:
    r: int
    factorization: str
    k: list[int]


def format_factorization(u: int) -> str:
    if u == 1:
        return "1"
    return " × ".join(str(p) for p, e in factorize(u) for _ in range(e))


def table1_rows(max_r: int) -> list[Table1Row]:
    return [
        Table1Row(r, format_factorization(r), [k for k in ks if k <= r - 1 - k])
        for r, ks in admissible_r_list(max_r)
    ]


def format_table1(rows: list[Table1Row]) -> str:
    lines = [f"{'r':>4}  {'factorization':<13}  k"]
    for row in rows:
        lines.append(f"{row.r:>4}  {row.factorization:<13}  {', '.join(map(str, row.k))}")
    return "\n".join(lines) + "\n"


# -- experiments -------------------------------------------------------------


def specs_with_m_at_most(max_m: int) -> list[GroupSpec]:
    specs = []
    for r, ks in admissible_r_list(max_m):
        for n in range(1, max_m // r + 1):
            specs += [GroupSpec("C", r * n, n, k) for k in ks if k <= r - 1 - k]
    for r, k in ((1, 0), (3, 1)):
        specs += [GroupSpec("D", r * n, n, k) for n in range(1, max_m // r + 1)]
    return sorted(specs, key=GroupSpec.sort_key)


def experiment_single_gen(bound: int) -> dict[str, Any]:
    """Look for a single diagonal generator in every canonical group with ``m <= bound``."""
    specs = specs_with_m_at_most(bound)
    failures = [str(s) for s in specs if single_diagonal_generator(s) is None]
    return {"experiment": "single-gen", "bound": bound, "checked": len(specs), "failures": failures}


def experiment_theorem4(bound: int) -> dict[str, Any]:
    """All ``r <= bound`` where both congruences have a common solution."""
    hits = [[r, ks] for r in range(1, bound + 1) if (ks := solve_k_joint(r))]
    return {"experiment": "theorem4", "bound": bound, "solutions": hits}


def experiment_multipair(bound: int) -> dict[str, Any]:
    """Admissible ``r <= bound`` with two or more non-isomorphic k values."""
    hits = [[r, ks] for r, _ in admissible_r_list(bound) if len(ks := canonical_k_values(r)) >= 2]
    return {"experiment": "multipair", "bound": bound, "solutions": hits}


EXPERIMENTS = {
    "single-gen": experiment_single_gen,
    "theorem4": experiment_theorem4,
    "multipair": experiment_multipair,
}
