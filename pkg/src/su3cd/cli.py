"""Command-line interface.

Exit codes: 0 success, 1 invalid input or I/O failure, 2 internal
verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Any, Sequence

from su3cd.catalog import (
    EXPERIMENTS,
    VERIFY_LEVELS,
    CatalogEntry,
    format_table1,
    table1_rows,
    verify_spec,
    write_catalog,
)
from su3cd.classify import (
    GroupSpec,
    build_group,
    canonical_spec,
    factorize_spec,
    spec_isomorphic,
)
from su3cd.congruence import admissible_r, canonical_k_values, solve_k
from su3cd.errors import GroupTooLargeError, InvalidSpecError, VerificationError
from su3cd.groups import brute_force_isomorphism, central_z3_decomposition, diagonal_subgroup, fingerprint
from su3cd.normalize import abelian_normal_form, normalize

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2


def _emit(args: argparse.Namespace, data: Any, text: str) -> None:
    if args.json:
        print(json.dumps(data, ensure_ascii=False))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def cmd_table1(args: argparse.Namespace) -> int:
    rows = table1_rows(args.max)
    _emit(args, [asdict(r) for r in rows], format_table1(rows))
    return EXIT_OK


def cmd_solve_k(args: argparse.Namespace) -> int:
    ks = solve_k(args.r)
    canonical = canonical_k_values(args.r)
    _emit(
        args,
        {"r": args.r, "k": ks, "canonical_k": canonical},
        f"r={args.r}: k = {ks or 'none'}; canonical {canonical or 'none'}",
    )
    return EXIT_OK


def cmd_admissible(args: argparse.Namespace) -> int:
    adm = admissible_r(args.r)
    text = (
        f"r={adm.r}: {'admissible' if adm.admissible else 'not admissible'} "
        f"(3^{adm.three_exp} * {adm.q_part}; q factors {adm.q_factors})"
    )
    _emit(args, asdict(adm), text)
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    spec = GroupSpec.parse(args.spec)
    level = verify_spec(spec, args.verify)
    entry = CatalogEntry.from_spec(spec)
    data = asdict(entry) | {"verified": level}
    lines = [f"{spec}  order {spec.order}  {entry.series_label}", f"verification: {level}"]
    if level != "none":
        group = build_group(spec)
        diag = diagonal_subgroup(group)
        lines.append(f"closure order {group.order}, diagonal subgroup order {diag.order}")
        data["closure_order"] = group.order
    if entry.factorization:
        lines.append(f"factorizes as Z3 × {entry.factorization}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def cmd_normalize(args: argparse.Namespace) -> int:
    spec, group = normalize(args.legacy)
    form = abelian_normal_form(diagonal_subgroup(group))
    canonical = canonical_spec(spec)
    data = {
        "legacy": args.legacy.replace(" ", ""),
        "spec": str(spec),
        "canonical_spec": str(canonical),
        "m": form.m,
        "n": form.n,
        "r": form.r,
        "k": form.k,
        "a": form.a,
        "order": group.order,
    }
    text = f"{data['legacy']} = {spec}\nm={form.m} n={form.n} r={form.r} a={form.a} k={form.k} order={group.order}"
    if canonical != spec:
        text += f"\nisomorphic canonical label: {canonical}"
    _emit(args, data, text)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.max_order > 10**4:
        raise InvalidSpecError("--max-order is limited to 10^4")
    doc = write_catalog(args.max_order, args.out, verify=args.verify)
    _emit(
        args,
        {"out": args.out, "entries": len(doc["entries"])},
        f"wrote {len(doc['entries'])} entries to {args.out}",
    )
    return EXIT_OK


def cmd_isomorphic(args: argparse.Namespace) -> int:
    s1, s2 = GroupSpec.parse(args.spec1), GroupSpec.parse(args.spec2)
    predicted = spec_isomorphic(s1, s2)
    data: dict[str, Any] = {"spec1": str(s1), "spec2": str(s2), "isomorphic": predicted}
    text = f"{s1} and {s2}: {'isomorphic' if predicted else 'not isomorphic'}"
    if args.brute_force:
        witness = brute_force_isomorphism(build_group(s1), build_group(s2))
        found = witness is not None
        data["brute_force"] = found
        text += f"\nbrute-force search: {'isomorphism found' if found else 'no isomorphism'}"
        if found != predicted:
            raise VerificationError(f"brute force disagrees with the label rule for {s1}, {s2}")
    _emit(args, data, text)
    return EXIT_OK


def cmd_factorize(args: argparse.Namespace) -> int:
    spec = GroupSpec.parse(args.spec)
    fac = factorize_spec(spec)
    data: dict[str, Any] = {"spec": str(spec), "factorization": str(fac.inner) if fac else None}
    text = f"{spec} ≅ Z3 × {fac.inner}" if fac else f"{spec} does not factorize"
    if args.verify:
        decomposition = central_z3_decomposition(build_group(spec))
        if (decomposition is None) != (fac is None):
            raise VerificationError(f"{spec}: decomposition search disagrees with the label rule")
        if fac is not None:
            if fingerprint(decomposition[1]) != fingerprint(build_group(fac.inner)):
                raise VerificationError(f"{spec}: complement does not match {fac.inner}")
        data["verified"] = True
        text += "\nverified against the enumerated group"
    _emit(args, data, text)
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    report = EXPERIMENTS[args.which](args.bound)
    if args.which == "single-gen":
        text = f"checked {report['checked']} groups with m <= {args.bound}; failures: {report['failures'] or 'none'}"
    else:
        text = f"{args.which} up to {args.bound}: r = {[r for r, _ in report['solutions']]}"
        text += "\n" + "\n".join(f"  r={r}: k={ks}" for r, ks in report["solutions"])
    _emit(args, report, text)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are invalid input; exit status 2 is reserved for verification
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="su3cd", description="Finite SU(3) subgroups of type C and D.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", parents=[common], help="admissible r with their k values")
    p.add_argument("--max", type=_positive, default=100)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("solve-k", parents=[common], help="solve 1 + k + k^2 = 0 mod r")
    p.add_argument("r", type=_positive)
    p.set_defaults(func=cmd_solve_k)

    p = sub.add_parser("admissible", parents=[common], help="admissibility of r")
    p.add_argument("r", type=_positive)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("build", parents=[common], help="build and verify C(m,n,k) / D(m,n,k)")
    p.add_argument("spec")
    p.add_argument("--verify", choices=VERIFY_LEVELS, default="auto")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("normalize", parents=[common], help="translate a legacy label")
    p.add_argument("legacy")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("catalog", parents=[common], help="write the JSON catalog")
    p.add_argument("--max-order", type=_positive, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--verify", choices=VERIFY_LEVELS, default="auto")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("isomorphic", parents=[common], help="decide isomorphism of two labels")
    p.add_argument("spec1")
    p.add_argument("spec2")
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("factorize", parents=[common], help="Z3 direct-product factorization")
    p.add_argument("spec")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("experiment", parents=[common], help="rerun a numerical scan")
    p.add_argument("which", choices=sorted(EXPERIMENTS))
    p.add_argument("--bound", type=_positive, required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSpecError, GroupTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
