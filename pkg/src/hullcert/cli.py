"""Command-line front end.

Subcommands: construct, verify, decompose, oracle, fuzz, render,
reproduce-all.  Machine-readable artifacts are JSON with "p/q" rationals;
human-readable summaries are tab-separated tables; figures are
deterministic SVG files.  Exit codes: 0 pass, 1 verification failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .certificate import Certificate, extract, reconstruct, verify
from .errors import CertificateError, HullcertError, InputError
from .families import MIXTURE, VERTEX, get_family, load_instance
from .fuzzing import fuzz_family
from .oracle import oracle_check
from .rational import fmt_rat, rat
from .render import render_certificate

PASS, FAIL, BAD_INPUT = 0, 1, 2


def _parse_point(text):
    return tuple(rat(Fraction(p.strip())) for p in text.split(","))


def _parse_tolerance(text):
    return rat(Fraction(text)) if text else None


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _instance_from_args(args):
    if args.instance:
        data = _load_json(args.instance)
        if args.family and data.get("family") != args.family:
            raise InputError(
                f"instance file is for family {data.get('family')!r}, "
                f"not {args.family!r}"
            )
    elif args.family:
        data = get_family(args.family).default_instance()
    else:
        raise InputError("either --family or --instance is required")
    fam, inst, mode = load_instance(data)
    if getattr(args, "mode", None):
        mode = args.mode
    return fam, inst, mode, data


def _print_tsv(rows, header=None):
    if header:
        print("\t".join(header))
    for row in rows:
        print("\t".join(str(c) for c in row))


def _measure_table(cert):
    rows = []
    for i, v in enumerate(cert.system.variables):
        conic = (
            fmt_rat(cert.conic[v].signed_measure()) if cert.conic else ""
        )
        rows.append(
            (
                v,
                fmt_rat(cert.target[i]),
                fmt_rat(cert.convex[v].signed_measure()),
                conic,
            )
        )
    return rows


def cmd_construct(args):
    fam, inst, mode, data = _instance_from_args(args)
    rng = random.Random(args.seed)
    if args.point:
        h = _parse_point(args.point)
    elif args.point_source == "random-vertex":
        h = fam.sample_point(inst, rng, VERTEX, mode)
    elif args.point_source == "random-mix":
        h = fam.sample_point(inst, rng, MIXTURE, mode)
    else:
        raise InputError("--point required unless --point-source is random-*")
    tol = _parse_tolerance(args.tolerance)
    if tol is None:
        tol = fam.verify_tol(mode)
    cert = fam.construct(inst, h, mode=mode, rng=rng)
    report = verify(cert, tol=tol)
    _print_tsv(_measure_table(cert), header=("variable", "target", "convex", "conic"))
    for line in report.lines():
        print(line)
    if args.out:
        _write_json(args.out, cert.to_json())
    if args.svg:
        render_certificate(cert, args.svg, title=fam.name)
    return PASS if report.ok else FAIL


def _load_certificate(args):
    fam, inst, mode, _data = _instance_from_args(args)
    system = fam.feasible_system(inst, mode)
    cert = Certificate.from_json(_load_json(args.certificate), system)
    tol = _parse_tolerance(args.tolerance)
    if tol is None:
        tol = fam.verify_tol(mode)
    return fam, cert, tol


def cmd_verify(args):
    _fam, cert, tol = _load_certificate(args)
    report = verify(cert, tol=tol)
    for line in report.lines():
        print(line)
    return PASS if report.ok else FAIL


def cmd_decompose(args):
    _fam, cert, tol = _load_certificate(args)
    report = verify(cert, tol=tol)
    if not report.ok:
        for line in report.lines():
            print(line)
        return FAIL
    comb = extract(cert, tol=tol, report=report)
    rows = [
        ("point",) + tuple(fmt_rat(x) for x in p) + ("weight", fmt_rat(w))
        for p, w in comb.support
    ]
    rows += [
        ("ray",) + tuple(fmt_rat(x) for x in z) + ("weight", fmt_rat(w))
        for z, w in comb.rays
    ]
    _print_tsv(rows)
    print(
        "reconstruction:",
        " ".join(fmt_rat(v) for v in reconstruct(comb)),
        "(exact)" if reconstruct(comb) == cert.target else "(MISMATCH)",
    )
    if args.out:
        _write_json(args.out, comb.to_json())
    return PASS if reconstruct(comb) == cert.target else FAIL


def cmd_oracle(args):
    fam, inst, mode, _data = _instance_from_args(args)
    if not args.point:
        raise InputError("--point is required for the oracle")
    h = _parse_point(args.point)
    answer = oracle_check(fam, inst, h, mode)
    print(f"method: {answer.method}")
    if answer.inside is True:
        print("membership: yes")
        gens = fam.generators(inst, mode)
        rows = [
            tuple(fmt_rat(x) for x in p) + (fmt_rat(w),)
            for p, w in zip(gens[0], answer.weights)
            if w > 0
        ]
        _print_tsv(rows)
        return PASS
    if answer.inside is False:
        print("membership: no")
        sep = answer.separator
        print(
            "separator:",
            " + ".join(
                f"{fmt_rat(c)}·x{i+1}" for i, c in enumerate(sep.w) if c != 0
            ),
            f"+ {fmt_rat(sep.w0)} <= 0 on the hull; value at point "
            f"{fmt_rat(sep.value(h))} > 0",
        )
        return FAIL
    print("membership: undecided (relaxation satisfied)")
    return PASS


def cmd_fuzz(args):
    fam_name = args.family or _load_json(args.instance).get("family")
    instance_data = _load_json(args.instance) if args.instance else None
    report = fuzz_family(
        fam_name,
        samples=args.samples,
        seed=args.seed,
        mode=args.mode,
        instance_data=instance_data,
        oracle_every=args.oracle_every,
    )
    lines = list(report.lines())
    for line in lines:
        print(line)
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    return PASS if report.ok else FAIL


def cmd_render(args):
    _fam, cert, _tol = _load_certificate(args)
    if not args.svg:
        raise InputError("--svg output path is required")
    render_certificate(cert, args.svg, title=_fam.name)
    print(f"wrote {args.svg}")
    return PASS


def _figure_corpus():
    root = resources.files("hullcert").joinpath("figures")
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            yield entry.name, json.loads(entry.read_text())


def _check_expected(spec, comb):
    """Compare an extracted combination against a figure's expectation."""
    problems = []
    if "support" in spec:
        want = {
            tuple(rat(Fraction(x)) for x in p): rat(Fraction(w))
            for p, w in spec["support"]
        }
        got = {p: w for p, w in comb.support}
        if want != got:
            problems.append("support differs from the published decomposition")
    if "rays" in spec:
        want = {
            tuple(rat(Fraction(x)) for x in p): rat(Fraction(w))
            for p, w in spec["rays"]
        }
        got = {p: w for p, w in comb.rays}
        if want != got:
            problems.append("rays differ from the published decomposition")
    tol = rat(Fraction(spec.get("tol", "0")))
    for key, items in (("support_approx", comb.support), ("rays_approx", comb.rays)):
        if key not in spec:
            continue
        for p_want, w_want in spec[key]:
            p_want = tuple(rat(Fraction(x)) for x in p_want)
            w_want = rat(Fraction(w_want))
            hit = any(
                all(abs(a - b) <= tol for a, b in zip(p, p_want))
                and abs(w - w_want) <= tol
                for p, w in items
            )
            if not hit:
                problems.append(
                    f"no {key} entry within {fmt_rat(tol)} of the published values"
                )
    return problems


def cmd_reproduce_all(args):
    outdir = Path(args.out or "figures-out")
    outdir.mkdir(parents=True, exist_ok=True)
    rows = []
    all_ok = True
    for name, fig in _figure_corpus():
        fam, inst, mode = load_instance(fig["instance"])
        if fig.get("mode"):
            mode = fig["mode"]
        h = tuple(rat(Fraction(v)) for v in fig["point"])
        tol = fam.verify_tol(mode)
        label = fig.get("figure", name)
        try:
            cert = fam.construct(inst, h, mode=mode, rng=random.Random(0))
        except HullcertError as exc:
            ok = fig.get("expect", {}).get("verify") == "error"
            rows.append((label, "construct-error" if ok else f"ERROR {exc}"))
            all_ok &= ok
            continue
        report = verify(cert, tol=tol)
        svg = outdir / (name.replace(".json", "") + ".svg")
        render_certificate(cert, svg, title=label)
        expect = fig.get("expect", {})
        if expect.get("verify") == "fail":
            ok = not report.ok
            rows.append((label, "expected-failure" if ok else "UNEXPECTED PASS"))
            all_ok &= ok
            continue
        if not report.ok:
            rows.append((label, "VERIFY FAIL"))
            all_ok = False
            continue
        comb = extract(cert, tol=tol, report=report)
        problems = _check_expected(expect, comb)
        if reconstruct(comb) != cert.target:
            problems.append("reconstruction mismatch")
        rows.append((label, "ok" if not problems else "; ".join(problems)))
        all_ok &= not problems
    _print_tsv(rows, header=("figure", "status"))
    summary = outdir / "summary.tsv"
    summary.write_text(
        "figure\tstatus\n" + "\n".join(f"{a}\t{b}" for a, b in rows) + "\n"
    )
    print(f"figures and summary written to {outdir}/")
    return PASS if all_ok else FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hullcert",
        description=(
            "Construct, verify, and decompose geometric convex-hull "
            "certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, point=False, certificate=False):
        p.add_argument("--family", help="construction family name")
        p.add_argument("--instance", help="instance JSON file")
        p.add_argument("--mode", help="family mode/variant (a/b, paper/repaired, ...)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tolerance", help="verification tolerance, e.g. 1e-9")
        if point:
            p.add_argument("--point", help="comma-separated rationals")
        if certificate:
            p.add_argument("--certificate", required=True, help="certificate JSON file")

    p = sub.add_parser("construct", help="build and verify a certificate")
    common(p, point=True)
    p.add_argument(
        "--point-source",
        choices=("explicit", "random-vertex", "random-mix"),
        default="explicit",
    )
    p.add_argument("--out", help="certificate JSON output path")
    p.add_argument("--svg", help="proof-by-picture SVG output path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a certificate file")
    common(p, certificate=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decompose", help="extract the convex combination")
    common(p, certificate=True)
    p.add_argument("--out", help="combination JSON output path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("oracle", help="brute-force membership check")
    common(p, point=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="seeded round-trip property check")
    common(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--oracle-every", type=int, default=10)
    p.add_argument("--out", help="report output path (TSV)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("render", help="render a certificate as SVG")
    common(p, certificate=True)
    p.add_argument("--svg", required=True, help="SVG output path")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("reproduce-all", help="re-run the published examples")
    p.add_argument("--out", help="output directory for figures and summary")
    p.set_defaults(func=cmd_reproduce_all)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, CertificateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except HullcertError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
