"""Command-line front end: multiplication tables, products, verification, K-theory, nu.

Output is byte-deterministic for fixed flags: records are emitted in the
canonical basis order with rationals rendered as ``num/den`` in lowest
terms.  Tables and single products stream one JSON object per line (or CSV
rows with ``label:num/den`` value lists); ``verify``, ``ktheory`` and ``nu``
print a single JSON document.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .endstab import HorocycleAlgebra, ToeplitzAlgebra, toeplitz_bratteli, toeplitz_shift_alpha
from .iwahori import IwahoriAlgebra
from .ktheory import load_bratteli, pv_k_groups, truncated_limit
from .sl2 import SL2EndAlgebra, nu as nu_map
from .spherical import SphericalAlgebra, SphericalParams
from .tree import DEFAULT_MAX_VERTICES


def fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def product_record(family: str, algebra, a, b) -> dict:
    prod = algebra.basis_element(a) * algebra.basis_element(b)
    return {
        "family": family,
        "key": [algebra.basis_label(a), algebra.basis_label(b)],
        "value": [
            [algebra.basis_label(idx), fmt_rational(coeff)] for idx, coeff in prod.terms()
        ],
    }


def emit_records(records, fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["family", "left", "right", "value"])
        for rec in records:
            value = ";".join(f"{label}:{coeff}" for label, coeff in rec["value"])
            writer.writerow([rec["family"], rec["key"][0], rec["key"][1], value])
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _spherical_algebra(args) -> SphericalAlgebra:
    if args.q is not None:
        if args.q0 is not None or args.q1 is not None:
            raise ValueError("pass either --q or --q0/--q1, not both")
        return SphericalAlgebra(SphericalParams.homogeneous(args.q))
    if args.q0 is None or args.q1 is None:
        raise ValueError("spherical needs --q (homogeneous) or --q0 and --q1 (two-orbit)")
    return SphericalAlgebra(SphericalParams.two_orbit(args.q0, args.q1))


def _require(value, flag: str):
    if value is None:
        raise ValueError(f"missing required option {flag}")
    return value


def cmd_table(args) -> int:
    family = args.family
    records = []
    if family == "spherical":
        algebra = _spherical_algebra(args)
        top = _require(args.max, "--max")
        for n in range(top + 1):
            for m in range(n, top + 1):
                records.append(product_record(family, algebra, n, m))
    elif family == "iwahori":
        algebra = IwahoriAlgebra(_require(args.qs, "--qs"), _require(args.qt, "--qt"))
        indices = algebra.words_up_to(_require(args.len, "--len"))
        for a in indices:
            for b in indices:
                records.append(product_record(family, algebra, a, b))
    elif family == "affine":
        algebra = HorocycleAlgebra(_require(args.q, "--q"))
        top = _require(args.max, "--max")
        for m in range(top + 1):
            for n in range(top + 1):
                records.append(product_record(family, algebra, m, n))
    else:
        raise ValueError(f"unknown table family {family!r}")
    emit_records(records, args.format, sys.stdout)
    return 0


def cmd_mul(args) -> int:
    family = args.family
    if family == "spherical":
        algebra = _spherical_algebra(args)
    elif family == "iwahori":
        algebra = IwahoriAlgebra(_require(args.qs, "--qs"), _require(args.qt, "--qt"))
    elif family == "affine":
        algebra = HorocycleAlgebra(_require(args.q, "--q"))
    elif family == "affine-nf":
        algebra = ToeplitzAlgebra(_require(args.q, "--q"))
    elif family == "sl2":
        algebra = SL2EndAlgebra(_require(args.p, "--p"))
    else:
        raise ValueError(f"unknown family {family!r}")
    a = algebra.parse_label(args.left)
    b = algebra.parse_label(args.right)
    emit_records([product_record(family, algebra, a, b)], args.format, sys.stdout)
    return 0


def cmd_verify(args) -> int:
    family = args.family
    budget = args.max_ball_vertices
    if family == "spherical":
        algebra = _spherical_algebra(args)
        report = verify_mod.verify_spherical(
            algebra.params, _require(args.max, "--max"), max_vertices=budget
        )
    elif family == "iwahori":
        report = verify_mod.verify_iwahori(
            _require(args.qs, "--qs"),
            _require(args.qt, "--qt"),
            _require(args.len, "--len"),
            max_vertices=budget,
        )
    elif family == "affine":
        report = verify_mod.verify_affine(
            _require(args.q, "--q"), _require(args.max, "--max"), max_vertices=budget
        )
    else:
        raise ValueError(f"unknown verify family {family!r}")
    print(json.dumps(report.to_json(), indent=2))
    return 0 if report.ok else 1


def cmd_ktheory(args) -> int:
    if args.example is not None:
        if args.example != "toeplitz":
            raise ValueError(f"unknown example {args.example!r}")
        size = args.size
        diagram = toeplitz_bratteli(size)
        alpha = toeplitz_shift_alpha(size)
        k0, k1_rank = pv_k_groups(alpha)
        doc = {
            "example": "toeplitz",
            "size": size,
            "diagram": diagram.to_json(),
            "limit": truncated_limit(diagram),
            "alpha": alpha.to_lists(),
            "K0": k0.to_json(),
            "K1_rank": k1_rank,
        }
    else:
        if args.path is None:
            raise ValueError("pass a Bratteli diagram path or --example toeplitz")
        diagram = load_bratteli(args.path)
        depth = args.depth if args.depth is not None else diagram.num_levels - 1
        doc = {"path": args.path, "limit": truncated_limit(diagram, depth)}
    print(json.dumps(doc, indent=2))
    return 0


def cmd_nu(args) -> int:
    algebra = SL2EndAlgebra(args.p, depth_bound=max(args.depth, 1))
    cosets = algebra.cosets_up_to_depth(args.depth)
    coset_docs = []
    for c in cosets:
        image = nu_map(c.representative)
        coset_docs.append(
            {
                "representative": c.label(),
                "orbit": [g.label() for g in c.members],
                "size": len(c.members),
                "nu": [[g.label(), fmt_rational(coeff)] for g, coeff in image.terms()],
            }
        )
    table = []
    for a in cosets:
        for b in cosets:
            prod = algebra.basis_element(a) * algebra.basis_element(b)
            table.append(
                {
                    "key": [a.label(), b.label()],
                    "value": [
                        [algebra.basis_label(idx), fmt_rational(coeff)]
                        for idx, coeff in prod.terms()
                    ],
                }
            )
    doc = {"p": args.p, "depth": args.depth, "cosets": coset_docs, "table": table}
    print(json.dumps(doc, indent=2))
    return 0


def _add_family_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, help="homogeneous branching number")
    parser.add_argument("--q0", type=int, help="even-type branching number (two-orbit)")
    parser.add_argument("--q1", type=int, help="odd-type branching number (two-orbit)")
    parser.add_argument("--qs", type=int, help="weight of the letter s")
    parser.add_argument("--qt", type=int, help="weight of the letter t")
    parser.add_argument("--max", type=int, help="largest basis index")
    parser.add_argument("--len", type=int, help="largest word length")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hecketree",
        description="exact Hecke-algebra tables for groups acting on trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="emit a multiplication table")
    p_table.add_argument("family", choices=["spherical", "iwahori", "affine"])
    _add_family_options(p_table)
    p_table.add_argument("--format", choices=["json", "csv"], default="json")
    p_table.set_defaults(func=cmd_table)

    p_mul = sub.add_parser("mul", help="multiply two basis elements")
    p_mul.add_argument("family", choices=["spherical", "iwahori", "affine", "affine-nf", "sl2"])
    p_mul.add_argument("left")
    p_mul.add_argument("right")
    _add_family_options(p_mul)
    p_mul.add_argument("--p", type=int, help="prime for the sl2 family")
    p_mul.add_argument("--format", choices=["json", "csv"], default="json")
    p_mul.set_defaults(func=cmd_mul)

    p_verify = sub.add_parser("verify", help="run an oracle-vs-table sweep")
    p_verify.add_argument("family", choices=["spherical", "iwahori", "affine"])
    _add_family_options(p_verify)
    p_verify.add_argument(
        "--max-ball-vertices",
        type=int,
        default=DEFAULT_MAX_VERTICES,
        help="memory budget for oracle tree balls",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_k = sub.add_parser("ktheory", help="Bratteli limit / crossed-product K-groups")
    p_k.add_argument("path", nargs="?", help="Bratteli diagram JSON file")
    p_k.add_argument("--depth", type=int, help="truncation level (default: all provided)")
    p_k.add_argument("--example", choices=["toeplitz"], help="run a built-in example")
    p_k.add_argument("--size", type=int, default=6, help="stage size for --example")
    p_k.set_defaults(func=cmd_ktheory)

    p_nu = sub.add_parser("nu", help="unit-square orbit map and sl2 table")
    p_nu.add_argument("--p", type=int, required=True)
    p_nu.add_argument("--depth", type=int, required=True)
    p_nu.set_defaults(func=cmd_nu)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 0
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
