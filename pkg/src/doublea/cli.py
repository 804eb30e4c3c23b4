"""Command-line front end.

Exit status: 0 on success (or a SEMISTABLE verdict), 2 on a NONSEMISTABLE
verdict, 1 on usage or internal errors.  JSON goes to standard output and is
byte-identical across runs with the same arguments and seed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import bielliptic
from .certify import (
    NONSEMISTABLE,
    SEMISTABLE,
    build_class_system,
    certify,
    constructive_basis,
    fuzz,
    toy_class_system,
    verify_certificate,
)
from .chi import (
    family_report,
    family_sign_identity,
    min_weight_chi_basis,
    nonpositive_chi_basis,
    reference_counts,
    t1_missing_degrees,
)
from .families import family_B, family_S, family_T
from .kempf import centered_maximum, kempf_bound_check
from .laurent import (
    basis_report,
    cotangent_span_check,
    pluricanonical_basis,
    reference_listing_check,
    scroll_minor_check,
    torus_weights,
)
from .monomials import RhoWeights
from .sampling import basis_fuzz

log = logging.getLogger("doublea")

EXIT_OK, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_weights(source: str, length: int) -> list[int]:
    """Inline comma/space separated integers, or a file with one integer per line."""
    path = Path(source)
    try:
        text = path.read_text() if path.is_file() else source
    except OSError as exc:
        raise UsageError(f"cannot read weights file {source}: {exc}") from exc
    tokens = text.replace(",", " ").split()
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise UsageError(f"weights must be integers: {exc}") from exc
    if len(values) != length:
        raise UsageError(f"expected {length} weights, got {len(values)}")
    return values


def _rho(args, k: int) -> RhoWeights:
    vec = parse_weights(args.weights, 2 * k)
    if sum(vec) != 0:
        raise UsageError(f"weights must sum to zero, got {sum(vec)}")
    return RhoWeights.from_vector(vec)


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for {args.command}")


def _check_k(k: int, m: int | None = None, mmin: int = 2) -> None:
    if k < 2:
        raise UsageError(f"need k >= 2, got {k}")
    if m is not None and m < mmin:
        raise UsageError(f"need m >= {mmin}, got {m}")


def cmd_certify(args) -> tuple[dict, int]:
    _need(args, "k", "m")
    k, m = args.k, args.m
    _check_k(k, m)
    out: dict = {"command": "certify", "k": k, "g": 2 * k, "m": m, "mode": args.mode}
    verdicts = []
    if args.mode in ("lp", "both"):
        sys_ = build_class_system(k, m)
        cert = certify(sys_)
        block = cert.to_json()
        block["verified"] = verify_certificate(cert, sys_)
        out["lp"] = block
        verdicts.append(cert.verdict)
    if args.mode in ("constructive", "both"):
        if args.weights is not None:
            rho = _rho(args, k)
            built = constructive_basis(k, m, rho)
            block = {
                "weights": list(rho.vector),
                "weight": built.weight,
                "chi_route": built.chi.route,
                "basis": [str(mon) for mon in built.monomials],
                "checked_weights": 1,
                "max_weight": built.weight,
                "evidence": "given weights only",
            }
        else:
            fz = basis_fuzz(k, m, args.trials, args.seed, jobs=args.jobs)
            block = {
                "seed": args.seed,
                "bound": fz["bound"],
                "checked_weights": args.trials,
                "max_weight": fz["max_constructive_weight"],
                "evidence": "sampled weights, not a certificate",
                "family_fallbacks": fz["family_fallbacks"],
            }
        block["verdict"] = SEMISTABLE if block["max_weight"] <= 0 else NONSEMISTABLE
        out["constructive"] = block
        verdicts.append(block["verdict"])
    out["verdict"] = verdicts[0]
    out["modes_agree"] = len(set(verdicts)) == 1
    code = EXIT_OK if all(v == SEMISTABLE for v in verdicts) else EXIT_UNSTABLE
    return out, code


def cmd_chi_basis(args) -> tuple[dict, int]:
    _need(args, "k", "m", "weights")
    k, m = args.k, args.m
    _check_k(k, m)
    rho = _rho(args, k)
    if args.optimal:
        basis, w = min_weight_chi_basis(k, m, rho)
        route = "exact-minimum"
    else:
        choice = nonpositive_chi_basis(k, m, rho)
        basis, w, route = choice.basis, choice.weight, choice.route
    out = {
        "command": "chi-basis",
        "k": k,
        "m": m,
        "weights": list(rho.vector),
        "lambda_k+nu_k": rho.top_sum,
        "route": route,
        "family": basis.family,
        "s": basis.s,
        "monomials": [str(mon) for mon in basis.mons],
        "weight": w,
    }
    return out, EXIT_OK


def cmd_family(args) -> tuple[dict, int]:
    _need(args, "k", "family")
    k = args.k
    _check_k(k)
    fam = args.family.upper()
    reports = []
    extra: dict = {}
    if fam == "B":
        m = 2
        variants = [args.variant] if args.variant else ["1", "2"]
        for v in variants:
            if v not in ("1", "2"):
                raise UsageError("family B variants are 1 and 2")
            reports.append(family_report(family_B(k, int(v))))
    elif fam in ("T", "S"):
        _need(args, "m")
        m = args.m
        _check_k(k, m, mmin=3)
        if args.s is not None and not 1 <= args.s <= k - 1:
            raise UsageError(f"--s must lie in 1..{k - 1}")
        ss = [args.s] if args.s is not None else list(range(1, k))
        for s in ss:
            if fam == "T":
                for v in ("T2", "T2'"):
                    reports.append(family_report(family_T(k, m, s, v)))
            else:
                for mir in (False, True):
                    reports.append(family_report(family_S(k, m, s, mir)))
                    if args.literal:
                        reports.append(family_report(family_S(k, m, s, mir, literal=True)))
        t_union, s_union = family_sign_identity(k, m)
        union = t_union if fam == "T" else s_union
        extra["union"] = union.to_json()
        if fam == "T":
            extra["t1_missing_degrees"] = t1_missing_degrees(k, m)
        extra["reference_counts"] = reference_counts(k, m)["rows"]
    else:
        raise UsageError("--family must be B, T or S")
    out = {
        "command": "family",
        "family": fam,
        "k": k,
        "m": m,
        "valid": all(r.valid for r in reports if "(literal)" not in r.family),
        "reports": [r.to_json() for r in reports],
        **extra,
    }
    return out, EXIT_OK


def cmd_sections(args) -> tuple[dict, int]:
    _need(args, "k", "m")
    k, m = args.k, args.m
    _check_k(k, m)
    weights, distinct = torus_weights(k)
    report = basis_report(k, m)
    minors = scroll_minor_check(k)
    cot = cotangent_span_check(k)
    out = {
        "command": "sections",
        "k": k,
        "m": m,
        "basis": [ls.to_json() for ls in pluricanonical_basis(k, m)],
        "dimension": report,
        "minors": minors,
        "cotangent": cot,
        "torus_weights": {"weights": list(weights), "distinct": distinct},
        "reference_listing": reference_listing_check(k, m),
        "pass": all(
            [report["dimension_ok"], report["witnesses_ok"], report["independent"], minors["pass"], cot["pass"], distinct]
        ),
    }
    return out, EXIT_OK


def cmd_bielliptic(args) -> tuple[dict, int]:
    _need(args, "g")
    if args.g < 3:
        raise UsageError("need g >= 3")
    ms = [args.m] if args.m is not None else list(range(2, 11))
    if min(ms) < 2:
        raise UsageError("need m >= 2")
    rows = bielliptic.table([args.g], ms)
    return {"command": "bielliptic", "g": args.g, "rows": rows}, EXIT_OK


def cmd_slope(args) -> tuple[dict, int]:
    _need(args, "g", "m")
    if args.g < 2 or args.m < 2:
        raise UsageError("need g >= 2 and m >= 2")
    slope = bielliptic.polarization_slope(args.g, args.m)
    lam, delta = bielliptic.polarization_pair(args.g, args.m)
    out = {
        "command": "slope",
        "g": args.g,
        "m": args.m,
        "slope": f"{slope.numerator}/{slope.denominator}",
        "lambda_coefficient": lam,
        "delta_coefficient": f"{delta.numerator}/{delta.denominator}",
    }
    if args.g >= 3:
        out["trigonal"] = bielliptic.trigonal_comparison(args.g)
    return out, EXIT_OK


def cmd_fuzz(args) -> tuple[dict, int]:
    _need(args, "k", "m")
    k, m = args.k, args.m
    _check_k(k, m)
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.toy:
        sys_ = toy_class_system(k, m)
        farkas = certify(sys_).destabilizer
        report = fuzz(sys_, args.trials, args.seed, inject=[farkas], jobs=args.jobs)
        out = {"command": "fuzz", "system": "toy", **report}
        return out, EXIT_UNSTABLE if report["max_min_weight"] > 0 else EXIT_OK
    sys_ = build_class_system(k, m)
    report = fuzz(sys_, args.trials, args.seed, jobs=args.jobs)
    chi = basis_fuzz(k, m, args.trials, args.seed, jobs=args.jobs)
    out = {"command": "fuzz", "system": "double-A", **report, "chi": chi}
    ok = report["all_nonpositive"] and chi["violations"] == 0
    return out, EXIT_OK if ok else EXIT_UNSTABLE


def cmd_kempf(args) -> tuple[dict, int]:
    _need(args, "k", "m")
    _check_k(args.k, args.m, mmin=1)
    out: dict = {"command": "kempf", "k": args.k, "m": args.m}
    if args.weights is not None:
        out["check"] = kempf_bound_check(args.k, args.m, parse_weights(args.weights, args.k))
    if args.k <= 4:
        out["centered_maximum"] = centered_maximum(args.k, args.m).to_json()
    return out, EXIT_OK


COMMANDS = {
    "certify": cmd_certify,
    "chi-basis": cmd_chi_basis,
    "family": cmd_family,
    "sections": cmd_sections,
    "bielliptic": cmd_bielliptic,
    "slope": cmd_slope,
    "fuzz": cmd_fuzz,
    "kempf": cmd_kempf,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--k", type=int, help="curve parameter; genus g = 2k")
    common.add_argument("--g", type=int, help="genus, for bielliptic/slope")
    common.add_argument("--m", type=int, help="Hilbert point degree")
    common.add_argument("--s", type=int, help="family parameter, 1..k-1")
    common.add_argument("--weights", help="inline comma list or file (one integer per line, lambda then nu)")
    common.add_argument("--mode", choices=["lp", "constructive", "both"], default="lp")
    common.add_argument("--trials", type=int, default=10_000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--optimal", action="store_true", help="print the exact minimum-weight chi-basis")
    common.add_argument("--family", help="B, T or S")
    common.add_argument("--variant", help="family B variant 1 or 2")
    common.add_argument("--literal", action="store_true", help="also report the unrepaired S listing")
    common.add_argument("--toy", action="store_true", help="fuzz the one-class destabilized toy system")
    parser = _Parser(prog="doublea", description="Hilbert point semistability of the balanced double A_(2k+1)-curve")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def render_text(out: dict) -> str:
    lines = []

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for key, v in value.items():
                walk(f"{prefix}.{key}" if prefix else str(key), v)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        elif isinstance(value, list):
            lines.append(f"{prefix:<40} {' '.join(str(v) for v in value)}")
        else:
            lines.append(f"{prefix:<40} {value}")

    walk("", out)
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        out, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"doublea: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal errors share the usage exit status
        print(f"doublea: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(out, indent=2))
    else:
        print(render_text(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
