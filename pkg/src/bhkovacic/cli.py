"""Command-line front end: reproducible verification runs and reports.

Subcommands
    families    candidate/retained family tables (n=1 or n=2) per kind
    chandra     closed-form polynomial and its verification record
    hautot      extended expansion report in either special-function basis
    evidence    determinant-sign scan over (family, l, d) cells
    verify-all  the whole check battery at configurable bounds

Exit status 0 means every executed check passed; 1 reports a failed
check; 2 is a usage error.  BHK_THREADS caps scan workers.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .algebra import Poly, rat_from_str, rat_to_str
from .auxode import (
    brute_force_polynomial_solutions,
    build_auxiliary,
    chandrasekhar_coeffs,
    chandrasekhar_checks,
    chandrasekhar_r_frame,
    homotopic_equivalence_check,
    solve_low_degree,
)
from .evidence import SCAN_FAMILIES, family_by_label, s3_nonexistence, scan
from .hautot import (
    ObstructionError,
    det_A,
    determinant_equality_check,
    extended_expansion,
    kummer_poly,
    recurrence_identity_suite,
)
from .kovacic import enumerate_families_n1, enumerate_families_n2, retain_families
from .master import ModeSpec, PerturbationKind, special_frequency
from .reporting import Report, jsonable

_EXPECTED_RETAINED = {
    PerturbationKind.GRAVITATIONAL: {"G3", "G7", "G8"},
    PerturbationKind.ELECTROMAGNETIC: {"E3", "E7"},
    PerturbationKind.SCALAR: {"S3"},
}


def _mode_from_args(args, default_l=None, default_s="1") -> ModeSpec:
    kind = PerturbationKind.from_name(args.beta)
    l = args.l if args.l is not None else (default_l or kind.min_l)
    s = rat_from_str(args.s if args.s is not None else default_s)
    return ModeSpec(kind, l, s)


def _emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
    elif fmt == "csv":
        print(report.to_csv(), end="")
    else:
        print(report.to_human())


def _report(args, command: str) -> Report:
    config = {
        k: v for k, v in sorted(vars(args).items()) if k not in ("func",)
    }
    config["command"] = command
    return Report(tool_version=__version__, config=config)


def cmd_families(args) -> int:
    mode = _mode_from_args(args)
    report = _report(args, "families")
    if args.n == 1:
        families = enumerate_families_n1(mode)
        retention = retain_families(families)
        retained = set(retention.retained_labels)
        rows = [
            {
                "label": f.label,
                "e0": str(f.e0),
                "e2": str(f.e2),
                "einf": str(f.einf),
                "degree": str(f.degree),
                "retained": f.label in retained,
            }
            for f in families
        ]
        report.add(
            "families.n1.table",
            retained == _EXPECTED_RETAINED[mode.kind],
            tag="kovacic.step3b",
            witness={"rows": rows, "retained": sorted(retained)},
        )
    else:
        candidates, retained = enumerate_families_n2(mode)
        rows = [
            {
                "label": f.label,
                "e0": str(f.e0),
                "e2": str(f.e2),
                "einf": str(f.einf),
                "degree": str(f.degree),
            }
            for f in candidates
        ]
        report.add(
            "families.n2.table",
            not retained,
            tag="kovacic.n2.parity",
            witness={"rows": rows, "retained": [f.label for f in retained]},
        )
    _emit(report, args.format)
    if args.format == "human":
        for row in rows:
            flag = ""
            if args.n == 1:
                flag = "  retained" if row["retained"] else ""
            print(
                f"{row['label']:>5}  e0={row['e0']:>8}  e2={row['e2']:>8}  "
                f"einf={row['einf']:>8}  d={row['degree']:>8}{flag}"
            )
    return 0 if report.all_passed else 1


def cmd_chandra(args) -> int:
    report = _report(args, "chandra")
    l = args.l
    P_w = chandrasekhar_coeffs(l)
    P_r = chandrasekhar_r_frame(l)
    witness = {
        "l": l,
        "s": special_frequency(l),
        "w_frame": P_w,
        "r_frame": P_r,
    }
    if args.verify:
        record = chandrasekhar_checks(l)
        witness["verification"] = record
        report.add(
            "chandra.verify", record.all_ok, tag="chandra.four_checks", witness=witness
        )
    else:
        report.add("chandra.coeffs", True, tag="chandra.closed_form", witness=witness)
    _emit(report, args.format)
    if args.format == "human":
        print(f"P(w) degree {P_w.degree}, coefficients low to high:")
        print("  " + ", ".join(rat_to_str(c) for c in P_w.coeffs))
        print(f"P(r) degree {P_r.degree}, coefficients low to high:")
        print("  " + ", ".join(rat_to_str(c) for c in P_r.coeffs))
    return 0 if report.all_passed else 1


def cmd_hautot(args) -> int:
    report = _report(args, "hautot")
    expansion = extended_expansion(args.l, args.basis)
    report.add(
        f"hautot.expansion.{args.basis}",
        expansion.equal,
        tag="hautot.extended_expansion",
        witness={
            "l": expansion.l,
            "s": expansion.s,
            "coefficients": list(expansion.coefficients),
            "equal": expansion.equal,
            "difference": expansion.difference,
        },
    )
    _emit(report, args.format)
    if args.format == "human":
        names = ("A0", "A1", "A2", "A3")
        for name, value in zip(names, expansion.coefficients):
            print(f"  {name} = {rat_to_str(value)}")
    return 0 if report.all_passed else 1


def cmd_evidence(args) -> int:
    report = _report(args, "evidence")
    families = SCAN_FAMILIES if args.family == "all" else (args.family,)
    result = scan(
        families=families,
        l_max=args.l_max,
        d_max=args.max_degree,
        out=args.out,
    )
    report.add(
        "evidence.scan.final_signs",
        result.all_final_signs_ok,
        tag="evidence.det_sign",
        witness={
            "cells": result.cells,
            "violations": result.final_sign_violations[:16],
            "flagged_count": result.flagged_count,
            "flags_resolved_nonzero": result.flags_resolved_nonzero,
        },
    )
    report.add(
        "evidence.scan.cross_checks",
        result.cross_checks_ok,
        tag="evidence.bareiss_crosscheck",
        witness={"count": len(result.cross_checks)},
    )
    _emit(report, args.format)
    return 0 if report.all_passed else 1


def run_verify_all(l_max: int = 6, d_max: int = 100) -> Report:
    """The full battery at the given bounds; every record is exact."""
    report = Report(
        tool_version=__version__, config={"command": "verify-all", "l_max": l_max, "d_max": d_max}
    )

    # family tables and retention, n=1
    for kind in PerturbationKind:
        mode = ModeSpec(kind, kind.min_l, Fraction(1))
        families = enumerate_families_n1(mode)
        retention = retain_families(families, l_max=max(l_max, 6))
        report.add(
            f"families.n1.{kind.name.lower()}",
            set(retention.retained_labels) == _EXPECTED_RETAINED[kind],
            tag="kovacic.step3b",
            witness=sorted(retention.retained_labels),
        )
        candidates, retained2 = enumerate_families_n2(mode)
        expected_count = {(-3): 9, 0: 9, 1: 3}[kind.beta]
        report.add(
            f"families.n2.{kind.name.lower()}",
            len(candidates) == expected_count and not retained2,
            tag="kovacic.n2.parity",
            witness={"candidates": len(candidates), "retained": len(retained2)},
        )

    # G8 closed-form solutions
    g8 = family_by_label("G8")
    ok = True
    for l in range(2, max(l_max, 2) + 1):
        expected_s = special_frequency(l)
        expected_k = Fraction(6, (l + 2) * (l - 1))
        found = solve_low_degree(g8, 1, l=l)
        ok = ok and found == [(expected_s, Poly([expected_k, 1]))]
    report.add("g8.low_degree", ok, tag="g8.first_order_solution")

    # closed-form polynomial checks
    chandra_ok = True
    for l in range(2, max(l_max, 2) + 1):
        record = chandrasekhar_checks(l)
        chandra_ok = chandra_ok and record.all_ok
    report.add("chandra.verify", chandra_ok, tag="chandra.four_checks")

    # Hautot determinant roots
    det_ok = True
    for l in range(2, max(l_max, 2) + 1):
        s_star = special_frequency(l)
        poly = det_A(l)
        det_ok = det_ok and poly.eval(s_star) == 0 and poly.eval(-s_star) == 0
        det_ok = det_ok and poly.eval(s_star + 1) != 0 and poly.eval(s_star - 1) != 0
    report.add("hautot.det_roots", det_ok, tag="hautot.sufficiency_det")

    # extended expansions; the l=2 coefficients are pinned in the report
    exp_ok = True
    l2_coeffs = {}
    for l in range(2, min(max(l_max, 2), 6) + 1):
        for basis in ("kummer", "laguerre"):
            expansion = extended_expansion(l, basis)
            exp_ok = exp_ok and expansion.equal
            if l == 2:
                l2_coeffs[basis] = list(expansion.coefficients)
    report.add(
        "hautot.expansions",
        exp_ok,
        tag="hautot.extended_expansion",
        witness={"l2_coefficients": l2_coeffs},
    )

    # obstruction behaviour and identities at s = 4
    try:
        kummer_poly(9, -7)
        obstruction_ok = False
    except ObstructionError:
        obstruction_ok = True
    try:
        kummer_poly(8, -7)
    except ObstructionError:
        pass
    else:
        obstruction_ok = False
    identities = recurrence_identity_suite(Fraction(4), bound=3)
    report.add(
        "hautot.obstruction_and_identities",
        obstruction_ok and all(r.ok for r in identities),
        tag="hautot.phi_replacement",
    )

    # oracle agreement
    g7 = family_by_label("G7")
    mode = ModeSpec(PerturbationKind.GRAVITATIONAL, 2, special_frequency(2))
    basis = brute_force_polynomial_solutions(build_auxiliary(g7, mode), 9)
    target = chandrasekhar_r_frame(2)
    oracle_ok = len(basis) == 1 and basis[0] * target.leading() == target * basis[0].leading()
    e7 = family_by_label("E7")
    for l, s in ((1, 1), (1, 2), (2, 1), (2, 3)):
        mode = ModeSpec(PerturbationKind.ELECTROMAGNETIC, l, Fraction(s))
        oracle_ok = oracle_ok and not brute_force_polynomial_solutions(
            build_auxiliary(e7, mode), 2 * s
        )
    report.add("oracle.agreement", oracle_ok, tag="oracle.bareiss_nullspace")

    # determinant-sign scan at the configured bounds
    result = scan(l_max=max(l_max, 2), d_max=d_max)
    report.add(
        "evidence.scan",
        result.all_final_signs_ok and result.cross_checks_ok and result.flags_resolved_nonzero,
        tag="evidence.det_sign",
        witness={"cells": result.cells, "flagged": result.flagged_count},
    )

    # S3 non-existence
    s3 = s3_nonexistence(two_s_max=min(2 * max(l_max, 2), 12), l_max=max(l_max, 2))
    report.add(
        "s3.nonexistence",
        s3.all_ok,
        tag="s3.ratio_and_oracle",
        witness={
            "ratio_solution_set": list(s3.ratio_solution_set),
            "oracle_cells": s3.oracle_cells,
        },
    )

    # homotopic equivalences and determinant equality
    homotopy = homotopic_equivalence_check()
    report.add("homotopy.z_power", homotopy.all_ok, tag="heun.homotopic_substitution")
    eq_ok = all(determinant_equality_check(j).all_ok for j in range(0, 4))
    report.add("hautot.det_equality", eq_ok, tag="hautot.block_equality")
    return report


def cmd_verify_all(args) -> int:
    report = run_verify_all(l_max=args.l_max, d_max=args.max_degree)
    _emit(report, args.format)
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bhk",
        description="exact verification of Liouvillian solutions of the "
        "Schwarzschild perturbation master equation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("human", "json", "csv"), default="human"
        )
        p.add_argument(
            "--json",
            dest="format",
            action="store_const",
            const="json",
            help="shorthand for --format json",
        )

    p = sub.add_parser("families", help="Kovacic candidate family tables")
    p.add_argument("--beta", default="gravitational", help="gravitational|em|scalar")
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--s", default=None, help="frequency parameter, num[/den]")
    p.add_argument("--n", type=int, choices=(1, 2), default=1)
    add_format(p)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("chandra", help="closed-form polynomial and checks")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    add_format(p)
    p.set_defaults(func=cmd_chandra)

    p = sub.add_parser("hautot", help="extended special-function expansion")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--basis", choices=("kummer", "laguerre"), required=True)
    add_format(p)
    p.set_defaults(func=cmd_hautot)

    p = sub.add_parser("evidence", help="determinant-sign scan")
    p.add_argument("--family", choices=SCAN_FAMILIES + ("all",), default="all")
    p.add_argument("--l-max", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=500)
    p.add_argument("--out", default=None, help="write per-cell JSON records here")
    add_format(p)
    p.set_defaults(func=cmd_evidence)

    p = sub.add_parser("verify-all", help="run the whole battery")
    p.add_argument("--l-max", type=int, default=6)
    p.add_argument("--max-degree", type=int, default=100)
    add_format(p)
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
