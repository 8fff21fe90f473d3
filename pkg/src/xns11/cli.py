"""Command-line front end: run certificates singly or as the full pipeline."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .analytic_certificates import certify_cusp_torsion, certify_interval_lemma
from .curve_core import CURVE, GENERATOR, RationalPoint, mul
from .heights import verify_height_comparison
from .linear_forms import (reduce_by_convergents, scan_certificate,
                           solve_integral_points)
from .modular_map import (j_map, verify_eleven_adic_check,
                          verify_integrality_equivalence,
                          verify_resultant_check)

SCHEMA_VERSION = 1
PRECISION_ENV = "XNS11_PRECISION"


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every subcommand."""

    precision_digits: int = 60
    escalation_factor: float = 2.0
    threshold: Fraction = Fraction(1, 20)
    scan_limit: int = 20
    out: str | None = None
    verbose: bool = False

    def __post_init__(self):
        if self.precision_digits < 20:
            raise ValueError("precision must be at least 20 digits")
        if self.escalation_factor < 1.5:
            raise ValueError("escalation factor must be at least 1.5")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie strictly between 0 and 1")
        if self.scan_limit < 8:
            raise ValueError("scan limit below 8 cannot see all solutions")

    def echo(self) -> dict:
        return {"precision_digits": self.precision_digits,
                "escalation_factor": str(self.escalation_factor),
                "threshold": str(self.threshold),
                "scan_limit": self.scan_limit}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _insert_separator(argv: list) -> list:
    # argparse reads "-11/4" as a flag; everything after "--" is positional
    if "--" in argv:
        return argv
    for i, tok in enumerate(argv):
        if re.match(r"^-\d", tok):
            return argv[:i] + ["--"] + argv[i:]
    return argv


def _spot_points():
    return [mul(m, GENERATOR) for m in range(-10, 11) if m]


def _print_cert(cert, cfg: RunConfig) -> int:
    print(cert.render_text(cfg.verbose))
    return 0 if cert.passed else 1


def _cmd_solve(ns, cfg: RunConfig) -> int:
    report = solve_integral_points(cfg.precision_digits, cfg.threshold)
    print(report.render_text(cfg.verbose))
    return 0 if report.passed else 1


def _cmd_lemma21(ns, cfg: RunConfig) -> int:
    threshold = ns.threshold if ns.threshold is not None else cfg.threshold
    result = certify_interval_lemma(cfg.precision_digits, threshold)
    return _print_cert(result.certificate, cfg)


def _cmd_lemma22(ns, cfg: RunConfig) -> int:
    cert = verify_height_comparison(_spot_points(), cfg.precision_digits,
                                    max_error=Fraction(1, 1000))
    return _print_cert(cert, cfg)


def _cmd_lemma31(ns, cfg: RunConfig) -> int:
    return _print_cert(certify_cusp_torsion(cfg.precision_digits), cfg)


def _cmd_scan_k(ns, cfg: RunConfig) -> int:
    limit = ns.limit if ns.limit is not None else cfg.scan_limit
    scan, cert = scan_certificate(limit, cfg.precision_digits)
    for k in sorted(scan):
        if scan[k]:
            pts = ", ".join(sorted(str(P) for P in scan[k]))
            print(f"k = {k:+d}: {pts}")
    return _print_cert(cert, cfg)


def _cmd_reduce(ns, cfg: RunConfig) -> int:
    table = reduce_by_convergents(cfg.precision_digits)
    print(f"alpha = {table.alpha}")
    print(f"{'row':>4} {'q':>34} {'lhs':>22} {'checked':>8} {'passed':>7}")
    for r in table.rows:
        print(f"{r.index:>4} {r.q:>34} {r.lhs:>22} "
              f"{str(r.checked):>8} {str(r.passed):>7}")
    print(f"cutoff row: {table.cutoff_index}")
    return _print_cert(table.certificate, cfg)


def _cmd_jmap(ns, cfg: RunConfig) -> int:
    if ns.infinity:
        if ns.x is not None or ns.y is not None:
            print("error: --infinity takes no coordinates", file=sys.stderr)
            return 2
        P = RationalPoint.infinity()
    else:
        if ns.x is None or ns.y is None:
            print("error: jmap needs x and y (or --infinity)", file=sys.stderr)
            return 2
        P = RationalPoint(ns.x, ns.y)
        if not CURVE.contains(P):
            print(f"error: {P} is not on the curve", file=sys.stderr)
            return 2
    print(j_map(P))
    return 0


def _thm41_certificates():
    return (("resultant-check", verify_resultant_check()),
            ("eleven-adic-check", verify_eleven_adic_check()),
            ("integrality-equivalence", verify_integrality_equivalence()))


def _cmd_thm41(ns, cfg: RunConfig) -> int:
    ok = True
    for _, cert in _thm41_certificates():
        print(cert.render_text(cfg.verbose))
        ok = ok and cert.passed
    return 0 if ok else 1


def build_report(cfg: RunConfig) -> dict:
    """Full pipeline plus the j-map certificates as one JSON document."""
    report = solve_integral_points(cfg.precision_digits, cfg.threshold)
    thm41 = _thm41_certificates()
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "xns11", "version": __version__},
        "config": cfg.echo(),
        "passed": report.passed and all(c.passed for _, c in thm41),
        "solve": report.as_dict(),
        "theorem41": {name: cert.as_dict() for name, cert in thm41},
    }


def _cmd_report(ns, cfg: RunConfig) -> int:
    doc = build_report(cfg)
    text = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True)
    out = ns.out or cfg.out
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
        print(f"report written to {out}")
    else:
        print(text)
    return 0 if doc["passed"] else 1


def build_parser(default_precision: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xns11",
        description="Certificates for the seven integral points of X_ns(11).")
    parser.add_argument("--precision", type=int, default=default_precision,
                        help="working precision in decimal digits "
                             f"(default {default_precision}, env {PRECISION_ENV})")
    parser.add_argument("--verbose", action="store_true",
                        help="print every check, not only failures")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the full enumeration pipeline")
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("lemma21", help="interval bound on the slope of t")
    p.add_argument("--threshold", type=_rational, default=None,
                   help="half-width of the cusp neighborhoods (default 1/20)")
    p.set_defaults(handler=_cmd_lemma21)

    p = sub.add_parser("lemma22", help="naive-to-canonical height comparison")
    p.set_defaults(handler=_cmd_lemma22)

    p = sub.add_parser("lemma31", help="torsion of the zeros of t")
    p.set_defaults(handler=_cmd_lemma31)

    p = sub.add_parser("scan-k", help="exact scan of small integral k")
    p.add_argument("--limit", type=int, default=None,
                   help="scan |k| up to this bound (default 20)")
    p.set_defaults(handler=_cmd_scan_k)

    p = sub.add_parser("reduce", help="continued-fraction reduction table")
    p.set_defaults(handler=_cmd_reduce)

    p = sub.add_parser("jmap", help="evaluate the map to the j-line")
    p.add_argument("--infinity", action="store_true",
                   help="evaluate at the point at infinity")
    p.add_argument("x", nargs="?", type=_rational, default=None,
                   help="x-coordinate, as an integer or num/den")
    p.add_argument("y", nargs="?", type=_rational, default=None,
                   help="y-coordinate, as an integer or num/den")
    p.set_defaults(handler=_cmd_jmap)

    p = sub.add_parser("thm41", help="integrality transfer to the j-line")
    p.set_defaults(handler=_cmd_thm41)

    p = sub.add_parser("report", help="emit the full JSON report")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(handler=_cmd_report)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        default_precision = int(os.environ.get(PRECISION_ENV, "60"))
    except ValueError:
        print(f"error: {PRECISION_ENV} must be an integer", file=sys.stderr)
        return 2
    parser = build_parser(default_precision)
    try:
        ns = parser.parse_args(_insert_separator(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(precision_digits=ns.precision, verbose=ns.verbose)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return ns.handler(ns, cfg)


if __name__ == "__main__":
    sys.exit(main())
