"""Command-line driver.

Commands: check-char, act, decompose, irreducible, multiplicity, weyl,
basechange, suite.  Exit codes: 0 pass, 1 property violation, 2 input
error.  Reports are tab-delimited on stdout; --json-out writes the machine
form and --fig-out renders the matplotlib figures next to it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .padic import DomainError, DivergenceError, PadicScalar, PadicError
from .group import IwahoriMatrix, OneParamFactor
from .series import TateSeries
from .actions import Character, PSVector, act_group, check_analytic, decay_report, xz_decompose
from .verma import is_irreducible, kostant_multiplicity, phi_weight_rank
from .weyl import WeylElement, bruhat_components, chi_w, conjugate_root
from .basechange import ResScalarsContext, TensorModel, full_bc, holomorphic_bc, restrict_scalars
from .padic import UnramifiedField
from .config import JobConfig, parse_char
from .suite import run_suite
from . import reports


def _add_common(sub):
    sub.add_argument("--p", type=int, default=7)
    sub.add_argument("--n", type=int, default=2)
    sub.add_argument("--precision", type=int, default=12)
    sub.add_argument("--truncation", type=int, default=6)
    sub.add_argument("--char", type=str, default=None, help="comma-separated c_i (ints or a/b)")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--json-out", type=str, default=None)
    sub.add_argument("--fig-out", type=str, default=None, help="directory for rendered figures")


def _config(args) -> JobConfig:
    char = parse_char(args.char) if args.char else ()
    cfg = JobConfig(
        p=args.p,
        n=args.n,
        precision=args.precision,
        truncation=args.truncation,
        char=char,
        seed=args.seed,
        degree=getattr(args, "N", 2) or 2,
    )
    return cfg.validate()


def _character(cfg: JobConfig) -> Character:
    if not cfg.char:
        return Character.trivial(cfg.n, cfg.p, cfg.precision)
    cs = []
    for c in cfg.char:
        if isinstance(c, Fraction):
            cs.append(PadicScalar.from_fraction(c, cfg.p, cfg.precision))
        else:
            cs.append(PadicScalar.from_int(c, cfg.p, cfg.precision))
    return Character(tuple(cs), cfg.p, 1)


def _figpath(args, name):
    d = args.fig_out
    os.makedirs(d, exist_ok=True)
    return os.path.join(d, name)


def cmd_check_char(args) -> int:
    cfg = _config(args)
    chi = _character(cfg)
    report = check_analytic(chi)
    sys.stdout.write(reports.margins_table(report))
    if args.json_out:
        reports.dump_json(
            {
                "analytic": report["analytic"],
                "bound": report["bound"],
                "margins": report["margins"],
            },
            args.json_out,
        )
    if args.fig_out:
        from . import figures

        figures.margins_figure(report, _figpath(args, "margins.png"))
    return 0 if report["analytic"] else 1


def _load_series(path) -> PSVector:
    with open(path) as fh:
        return reports.ps_vector_from_json(json.load(fh))


def _parse_element(cfg, text) -> IwahoriMatrix:
    """Either a JSON matrix file or an inline factor list
    kind:i,j,param;kind:i,j,param;..."""
    if os.path.exists(text):
        with open(text) as fh:
            return IwahoriMatrix.from_json(json.load(fh))
    acc = IwahoriMatrix.identity(cfg.n, cfg.p, cfg.precision, tag=None)
    for piece in text.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        kind, rest = piece.split(":")
        i, j, param = rest.split(",")
        if "/" in param:
            num, den = param.split("/")
            scalar = PadicScalar.from_fraction(Fraction(int(num), int(den)), cfg.p, cfg.precision)
        else:
            scalar = PadicScalar.from_int(int(param), cfg.p, cfg.precision)
        factor = OneParamFactor(kind, int(i), int(j), scalar)
        acc = acc @ factor.to_matrix(cfg.n, cfg.p, cfg.precision)
    return acc.with_tag("G")


def cmd_act(args) -> int:
    cfg = _config(args)
    f = _load_series(args.series)
    g = _parse_element(cfg, args.element)
    out = act_group(g, f)
    grading = args.grading or ("y" if "y" in out.series.vars else out.series.vars.names[0])
    rep = decay_report(out, grading) if grading in out.series.vars else None
    blob = reports.ps_vector_to_json(out)
    if args.out:
        reports.dump_json(blob, args.out)
    else:
        sys.stdout.write(reports.dump_json(blob) + "\n")
    if rep:
        sys.stdout.write(reports.decay_table(rep))
        if args.fig_out:
            from . import figures

            figures.decay_figure(rep, _figpath(args, "decay.png"))
    if args.json_out:
        reports.dump_json({"series": blob, "decay": rep}, args.json_out)
    return 0


def cmd_decompose(args) -> int:
    cfg = _config(args)
    X, Z, vars = xz_decompose(args.i, args.j, cfg.n, cfg.p, cfg.truncation, cfg.precision)
    blob = {
        "i": args.i,
        "j": args.j,
        "n": cfg.n,
        "X": [[x.to_json() for x in row] for row in X],
        "Z": [[z.to_json() for z in row] for row in Z],
    }
    text = reports.dump_json(blob, args.json_out)
    if not args.json_out:
        sys.stdout.write(text + "\n")
    else:
        sys.stdout.write("wrote %s\n" % args.json_out)
    return 0


def cmd_irreducible(args) -> int:
    cfg = _config(args)
    chi = _character(cfg)
    verdict = is_irreducible(chi, cfg.n)
    sys.stdout.write("verdict\t%s\n" % ("irreducible" if verdict.irreducible else "reducible"))
    sys.stdout.write(reports.violations_table(verdict))
    blob = verdict.to_json()
    if args.rank_check:
        report = phi_weight_rank(chi, cfg.n, cfg.truncation)
        sys.stdout.write(reports.weight_rank_table(report))
        blob = reports.weight_rank_json(report, verdict)
        blob["violations"] = verdict.to_json()["violations"]
        if args.fig_out:
            from . import figures

            figures.weight_rank_figure(report, _figpath(args, "weight_rank.png"))
    if args.json_out:
        reports.dump_json(blob, args.json_out)
    return 0 if verdict.irreducible else 1


def cmd_multiplicity(args) -> int:
    cfg = _config(args)
    chi = _character(cfg)
    offset = tuple(int(x) for x in args.offset.split(","))
    if len(offset) != cfg.n or sum(offset) != 0:
        raise DomainError("offset needs %d components summing to 0" % cfg.n)
    count = kostant_multiplicity(offset, chi, cfg.n)
    sys.stdout.write(reports.tsv_table(("offset", "multiplicity"), [(args.offset, count)]))
    if args.json_out:
        reports.dump_json({"offset": list(offset), "multiplicity": count}, args.json_out)
    return 0


def cmd_weyl(args) -> int:
    cfg = _config(args)
    chi = _character(cfg)
    if args.w:
        w = WeylElement(tuple(int(x) for x in args.w.split(",")))
        tw = chi_w(chi, w)
        rows = []
        for i in range(1, cfg.n + 1):
            for j in range(1, cfg.n + 1):
                if i != j:
                    rows.append(("(%d,%d)" % (i, j), "(%d,%d)" % conjugate_root(w, i, j)))
        sys.stdout.write(reports.tsv_table(("root", "conjugated"), rows))
        if args.json_out:
            reports.dump_json(
                {"w": list(w.jr), "chi_w": [c.to_json() for c in tw.c]}, args.json_out
            )
        return 0
    comps = bruhat_components(cfg.n, chi)
    rows = [(",".join(map(str, c.w.jr)), len(c.variables)) for c in comps]
    sys.stdout.write(reports.tsv_table(("w (one-line of w^-1)", "coordinates"), rows))
    if args.json_out:
        reports.dump_json([c.to_json() for c in comps], args.json_out)
    return 0


def cmd_basechange(args) -> int:
    cfg = _config(args)
    field = UnramifiedField(cfg.p, args.N, cfg.precision)
    if args.series:
        with open(args.series) as fh:
            f = TateSeries.from_json(json.load(fh))
        ctx = ResScalarsContext(field, f.vars)
        if args.map == "restrict":
            out = restrict_scalars(f.embed_coefficients(field), ctx)
        elif args.map == "holomorphic":
            out = holomorphic_bc(f, ctx)
        else:
            out = full_bc(f, ctx)
        blob = out.to_json()
        if args.json_out:
            reports.dump_json(blob, args.json_out)
        else:
            sys.stdout.write(reports.dump_json(blob) + "\n")
        return 0
    chi = _character(cfg)
    model = TensorModel.build(chi, cfg.n, args.N, min(cfg.truncation, 4), cfg.precision)
    t = PadicScalar.from_int(1 + cfg.p, cfg.p, cfg.precision)
    ts = [t] + [PadicScalar.from_int(1, cfg.p, cfg.precision)] * (cfg.n - 1)
    lam = model.torus_eigenvalue_of_constant(ts)
    via_norm = model.norm_route_eigenvalue(ts)
    ok = lam.agrees(via_norm, abs_digits=cfg.precision - 1)
    sys.stdout.write(
        reports.tsv_table(
            ("check", "status"),
            [("tensor constant eigenvalue = chi(norm)", "pass" if ok else "FAIL")],
        )
    )
    if args.json_out:
        reports.dump_json(
            {"eigenvalue": lam.to_json(), "chi_of_norm": via_norm.to_json(), "agree": ok},
            args.json_out,
        )
    return 0 if ok else 1


def cmd_suite(args) -> int:
    cfg = _config(args)
    names = args.criteria.split(",") if args.criteria else None
    results = run_suite(cfg, names)
    sys.stdout.write(reports.suite_table(results))
    blob = {
        "config": {
            "p": cfg.p,
            "n": cfg.n,
            "precision": cfg.precision,
            "truncation": cfg.truncation,
            "seed": cfg.seed,
        },
        "results": results,
        "passed": all(r["passed"] for r in results),
    }
    if args.json_out:
        reports.dump_json(blob, args.json_out)
    if args.fig_out:
        from . import figures

        figures.timings_figure(results, _figpath(args, "suite_timings.png"))
    return 0 if blob["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="iwahorips",
        description="Exact p-adic principal series for the pro-p Iwahori of GL(n)",
    )
    subs = ap.add_subparsers(dest="command", required=True)

    s = subs.add_parser("check-char", help="analyticity verdict and margins")
    _add_common(s)
    s.set_defaults(fn=cmd_check_char)

    s = subs.add_parser("act", help="apply a group element to a series file")
    _add_common(s)
    s.add_argument("--series", required=True, help="PSVector JSON file")
    s.add_argument("--element", required=True, help="matrix JSON file or factor list kind:i,j,param;...")
    s.add_argument("--out", default=None, help="output series file")
    s.add_argument("--grading", default=None, help="decay-report variable")
    s.set_defaults(fn=cmd_act)

    s = subs.add_parser("decompose", help="symbolic XZ factorization for (i, j)")
    _add_common(s)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.set_defaults(fn=cmd_decompose)

    s = subs.add_parser("irreducible", help="Bernstein-Gelfand criterion")
    _add_common(s)
    s.add_argument("--rank-check", action="store_true", help="run the weight-space rank oracle")
    s.set_defaults(fn=cmd_irreducible)

    s = subs.add_parser("multiplicity", help="Kostant count for a weight offset")
    _add_common(s)
    s.add_argument("--offset", required=True, help="integer offset from -mu, comma-separated")
    s.set_defaults(fn=cmd_multiplicity)

    s = subs.add_parser("weyl", help="Bruhat components / conjugation tables")
    _add_common(s)
    s.add_argument("--w", default=None, help="one-line form of w^{-1}, comma-separated")
    s.set_defaults(fn=cmd_weyl)

    s = subs.add_parser("basechange", help="base-change maps and the tensor model")
    _add_common(s)
    s.add_argument("--N", type=int, default=2, help="degree of the unramified extension")
    s.add_argument("--series", default=None, help="input TateSeries JSON file")
    s.add_argument("--map", choices=("restrict", "holomorphic", "full"), default="full")
    s.set_defaults(fn=cmd_basechange)

    s = subs.add_parser("suite", help="run the acceptance criteria")
    _add_common(s)
    s.add_argument("--criteria", default=None, help="comma-separated criterion numbers, e.g. 01,04")
    s.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (DomainError, DivergenceError, PadicError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
